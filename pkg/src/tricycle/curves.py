"""Planar curve post-processing: Frenet data, soliton residuals and fits.

Derivatives of sampled data use fourth-order finite differences; interior
points use centered stencils and the ends fall back to one-sided stencils of
the same order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linkage import PhaseState, Params, hamiltonian, curvature_jet


class CurveError(ValueError):
    pass


class NotUnitSpeedError(CurveError):
    pass


class UnfittableError(CurveError):
    pass


@dataclass(frozen=True)
class PlanarCurve:
    points: np.ndarray
    dt: float
    unit_speed: bool = True

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise CurveError("points must have shape (n, 2)")
        object.__setattr__(self, "points", pts)
        if self.dt <= 0:
            raise CurveError("dt must be positive")

    def __len__(self):
        return len(self.points)

    @property
    def t(self) -> np.ndarray:
        return self.dt * np.arange(len(self.points))

    def speed(self) -> np.ndarray:
        return np.linalg.norm(derivative(self.points, self.dt, 1), axis=1)

    def check_unit_speed(self, tol: float = 1e-6) -> float:
        dev = float(np.max(np.abs(self.speed() - 1.0)))
        if dev > tol:
            raise NotUnitSpeedError(f"speed deviates from 1 by {dev:.3g}")
        return dev


@dataclass(frozen=True)
class CurvatureSeries:
    """Curvature samples and derivatives ``derivs[i]`` = (i+1)-th derivative."""

    t: np.ndarray
    kappa: np.ndarray
    derivs: tuple = ()

    def d(self, order: int) -> np.ndarray:
        if order == 0:
            return self.kappa
        if order > len(self.derivs) or self.derivs[order - 1] is None:
            raise CurveError(f"derivative of order {order} not available")
        return self.derivs[order - 1]

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])

    @classmethod
    def from_samples(cls, t, kappa, order: int = 4, known=()) -> "CurvatureSeries":
        """Fill derivatives up to ``order``; ``known`` supplies exact leading ones.

        Missing orders are obtained by differencing the highest known column,
        which keeps the number of numerical differentiations minimal.
        """
        t = np.asarray(t, dtype=float)
        kappa = np.asarray(kappa, dtype=float)
        h = float(t[1] - t[0])
        cols = [np.asarray(c, dtype=float) for c in known]
        base = cols[-1] if cols else kappa
        for extra in range(1, order - len(cols) + 1):
            cols.append(derivative(base, h, extra))
        return cls(t, kappa, tuple(cols[:order]))


# --------------------------------------------------------------------------
# finite differences
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def fd_weights(offsets: tuple, order: int) -> np.ndarray:
    """Weights ``w`` with ``sum w_j f(x + o_j h) ~ h**order f^(order)(x)``."""
    offs = np.asarray(offsets, dtype=float)
    n = len(offs)
    V = np.vander(offs, n, increasing=True).T
    rhs = np.zeros(n)
    rhs[order] = math.factorial(order)
    return np.linalg.solve(V, rhs)


def derivative(f, h: float, order: int, accuracy: int = 4) -> np.ndarray:
    """Derivative of uniformly sampled data along axis 0."""
    f = np.asarray(f, dtype=float)
    n = len(f)
    half = (order - 1) // 2 + accuracy // 2
    width = order + accuracy
    if n < max(2 * half + 1, width):
        raise CurveError(f"need at least {max(2 * half + 1, width)} samples")
    out = np.empty_like(f)
    w = fd_weights(tuple(range(-half, half + 1)), order)
    core = sum(wj * f[j: n - 2 * half + j] for j, wj in enumerate(w))
    out[half: n - half] = core
    for i in list(range(half)) + list(range(n - half, n)):
        start = min(max(i - width // 2, 0), n - width)
        offs = tuple(range(start - i, start - i + width))
        wi = fd_weights(offs, order)
        out[i] = np.tensordot(wi, f[start:start + width], axes=(0, 0))
    return out / h**order


def frenet_fd(c: PlanarCurve, tol: float = 1e-6, accuracy: int = 4):
    """Unit tangent, normal and signed curvature along a sampled curve.

    Returns ``(T, N, kappa)``; ``N`` is ``T`` rotated by +pi/2.
    """
    if len(c) < 5:
        raise CurveError("need at least 5 samples")
    if c.unit_speed:
        c.check_unit_speed(tol)
    else:
        raise NotUnitSpeedError("curve is not flagged unit speed")
    d1 = derivative(c.points, c.dt, 1, accuracy)
    d2 = derivative(c.points, c.dt, 2, accuracy)
    speed = np.linalg.norm(d1, axis=1)
    T = d1 / speed[:, None]
    N = np.column_stack([-T[:, 1], T[:, 0]])
    kappa = (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]) / speed**3
    return T, N, kappa


def curvature_series(c: PlanarCurve, order: int = 4) -> CurvatureSeries:
    _, _, kappa = frenet_fd(c)
    return CurvatureSeries.from_samples(c.t, kappa, order)


# --------------------------------------------------------------------------
# soliton residuals
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Residual:
    values: np.ndarray
    sup: float


@dataclass(frozen=True)
class ElasticaResidual(Residual):
    B: float
    B_variation: float


def elastica_residual(cs: CurvatureSeries, A: float, trim: int = 0) -> ElasticaResidual:
    """``k'' + k^3/2 + A k`` and the best constant of ``k'^2 + k^4/4 + A k^2 + B``."""
    k, k2 = cs.kappa, cs.d(2)
    r = k2 + k**3 / 2 + A * k
    sl = slice(trim, len(k) - trim if trim else None)
    first = None
    try:
        k1 = cs.d(1)
        first = k1**2 + k**4 / 4 + A * k**2
    except CurveError:
        pass
    if first is None:
        B, var = math.nan, math.nan
    else:
        B = -float(np.mean(first[sl]))
        var = float(np.max(np.abs(first[sl] + B)))
    return ElasticaResidual(r, float(np.max(np.abs(r[sl]))), B, var)


def _soliton_terms(cs: CurvatureSeries):
    k, k1, k2, k4 = cs.kappa, cs.d(1), cs.d(2), cs.d(4)
    e2 = -k2 - k**3 / 2
    e4 = 2.5 * k**2 * k2 + 2.5 * k * k1**2 + 0.375 * k**5 + k4
    return k, e2, e4


def soliton2_residual(cs: CurvatureSeries, a: float, b: float, trim: int = 0) -> Residual:
    """``a k + b(-k'' - k^3/2) + 5/2 k^2 k'' + 5/2 k k'^2 + 3/8 k^5 + k''''``."""
    k, e2, e4 = _soliton_terms(cs)
    r = a * k + b * e2 + e4
    sl = slice(trim, len(k) - trim if trim else None)
    return Residual(r, float(np.max(np.abs(r[sl]))))


@dataclass(frozen=True)
class SolitonFit:
    a: float
    b: float
    residual: float
    condition: float


def fit_soliton_ab(cs: CurvatureSeries, trim: int = 0, rcond: float = 1e-10) -> SolitonFit:
    """Least-squares ``(a, b)`` making the 2-soliton residual vanish."""
    k, e2, e4 = _soliton_terms(cs)
    sl = slice(trim, len(k) - trim if trim else None)
    M = np.column_stack([k[sl], e2[sl]])
    if len(M) < 10:
        raise UnfittableError("need at least 10 samples")
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[0] == 0 or sv[-1] / sv[0] < rcond:
        raise UnfittableError("rank-deficient design (curvature too simple for a 2-soliton fit)")
    (a, b), *_ = np.linalg.lstsq(M, -e4[sl], rcond=None)
    r = np.max(np.abs(M @ [a, b] + e4[sl]))
    return SolitonFit(float(a), float(b), float(r), float(sv[0] / sv[-1]))


# --------------------------------------------------------------------------
# elastica families
# --------------------------------------------------------------------------

def mu_classify(A: float, B: float, tol: float = 1e-12) -> tuple[float, str]:
    """Shape parameter ``B / A**2`` and the elastica type it selects."""
    if A == 0:
        raise ValueError("A = 0: shape parameter undefined")
    mu = B / (A * A)
    if abs(mu) <= tol:
        return mu, "borderline"
    return mu, "non-inflectional" if mu > 0 else "inflectional"


class BranchSelectionError(CurveError):
    pass


def inflectional_ic(k: float, tol: float = 1e-9) -> PhaseState:
    """Unit equal-length state whose x-track has curvature ``2k cn(t, k)``."""
    if not 0.0 < k < 1.0:
        raise ValueError("modulus must lie in (0, 1)")
    if abs(5 * k - 4) < 1e-12:
        raise ValueError("k = 4/5 is a pole of the initial-data formulas")
    eta1 = 5 * (k * k - 1) / (5 * k - 4)
    eta2 = (5 * k * k - 8 * k + 5) / (5 * k - 4)
    alpha1 = math.atan2(4.0, 3.0)
    base = math.atan2(4 * k * k - 10 * k + 4, 3 * k * k - 3)
    P = Params()
    for alpha2 in (base, base + math.pi):
        s = PhaseState(0.0, 0.0, alpha1, alpha2, 1.0, 0.0, eta1, eta2)
        if abs(hamiltonian(s, P) - 0.5) > tol:
            continue
        kap, kd, _ = curvature_jet(s, P)
        if abs(kap - 2 * k) <= tol and abs(kd) <= tol:
            return s
    raise BranchSelectionError(f"no branch of alpha2 satisfies the constraints at k={k}")
