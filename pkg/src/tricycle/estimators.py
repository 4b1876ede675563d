"""Estimator-style wrapper around the 2-soliton constant fit.

Follows the scikit-learn conventions (constructor stores hyper-parameters
only, ``fit`` returns ``self`` and sets trailing-underscore attributes,
``get_params``/``set_params``) without depending on scikit-learn.
"""

from __future__ import annotations

import numpy as np

from .curves import CurvatureSeries, fit_soliton_ab, soliton2_residual


def _as_series(X, dt=None) -> CurvatureSeries:
    if isinstance(X, CurvatureSeries):
        return X
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != 5:
        raise ValueError("X must be a CurvatureSeries or an (n, 5) array of k, k', ..., k''''")
    t = np.arange(len(X)) * (1.0 if dt is None else dt)
    return CurvatureSeries(t, X[:, 0], tuple(X[:, i] for i in range(1, 5)))


class SolitonFitter:
    """Least-squares ``(a, b)`` of the 2-soliton curvature equation.

    Parameters
    ----------
    trim : samples dropped at each end before fitting.
    rcond : relative singular-value floor below which the design is rejected.
    """

    def __init__(self, trim: int = 0, rcond: float = 1e-10):
        self.trim = trim
        self.rcond = rcond

    def get_params(self, deep: bool = True) -> dict:
        return {"trim": self.trim, "rcond": self.rcond}

    def set_params(self, **params):
        for k, v in params.items():
            if k not in self.get_params():
                raise ValueError(f"invalid parameter {k!r}")
            setattr(self, k, v)
        return self

    def fit(self, X, y=None):
        fit = fit_soliton_ab(_as_series(X), self.trim, self.rcond)
        self.a_, self.b_ = fit.a, fit.b
        self.residual_, self.condition_ = fit.residual, fit.condition
        return self

    def _check_fitted(self):
        if not hasattr(self, "a_"):
            raise AttributeError("SolitonFitter is not fitted yet; call fit first")

    def residual(self, X) -> np.ndarray:
        """Per-sample residual of the fitted equation."""
        self._check_fitted()
        return soliton2_residual(_as_series(X), self.a_, self.b_).values

    def score(self, X, y=None) -> float:
        """Negative sup-norm of the residual (higher is better)."""
        cs = _as_series(X)
        self._check_fitted()
        return -soliton2_residual(cs, self.a_, self.b_, self.trim).sup

    def __repr__(self):
        return f"SolitonFitter(trim={self.trim}, rcond={self.rcond})"
