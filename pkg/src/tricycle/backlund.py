"""Bicycle (Bäcklund) transformation of sampled unit-speed planar curves.

A front track ``g(t)`` and a segment of length ``L`` define the rear track
``g(t) + L (cos b T + sin b N)``. The steering angle ``b`` solves the bicycle
ODE; only one sign of its ``2 sin b / L`` term keeps the output unit speed, and
that sign is found at runtime by checking the speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .curves import (CurvatureSeries, CurveError, NotUnitSpeedError, PlanarCurve,
                     frenet_fd, soliton2_residual)
from .ode import IntegratorSpec, integrate

UNIT_SPEED_TOL = 1e-6
# the differenced curvature of the output carries ~1e-10 position noise times 1/h^2,
# so this only guards against gross mismatch (a wrong orientation is off by 2|k|)
AGREEMENT_TOL = 1e-4
SIGNS = (1, -1)


class SignResolutionError(CurveError):
    """Neither steering sign produced a unit-speed output curve."""


def soliton_constants_from_elastica(A: float, B: float, L: float) -> tuple[float, float]:
    """2-soliton constants ``(c1, c2)`` of the transform of an ``(A, B)`` elastica."""
    if not L > 0:
        raise ValueError("L must be positive")
    return -B / 2 - 4 * A / L**2, -A + 4 / L**2


def beta_field(kappa_of_t, L: float, sign: int = 1):
    """Right-hand side ``f(t, [b]) = [-kappa(t) + sign * 2 sin(b) / L]``."""
    if not L > 0:
        raise ValueError("L must be positive")
    if sign not in SIGNS:
        raise ValueError("sign must be +1 or -1")

    def f(t, y):
        return np.array([-kappa_of_t(t) + sign * 2.0 * math.sin(y[0]) / L])
    f.__name__ = f"bicycle(L={L}, sign={sign:+d})"
    return f


@dataclass(frozen=True)
class BacklundResult:
    """Output of :func:`backlund_transform`.

    ``kappa_closed`` is ``orientation * (kappa - 4 sign sin(beta) / L)`` and
    ``kappa_fd`` the differenced curvature of ``curve_out``.
    """

    beta: np.ndarray
    curve_out: PlanarCurve
    kappa_out: CurvatureSeries
    L: float
    sign: int
    orientation: int
    kappa_closed: np.ndarray
    kappa_fd: np.ndarray
    speed_deviation: float
    attempts: dict = field(default_factory=dict)

    @property
    def kappa_agreement(self) -> float:
        return float(np.max(np.abs(self.kappa_closed - self.kappa_fd)))

    def soliton_residual(self, A: float, B: float, trim: int = 10):
        c1, c2 = soliton_constants_from_elastica(A, B, self.L)
        return soliton2_residual(self.kappa_out, c1, c2, trim)


def _inputs(c: PlanarCurve, kappa, heading):
    if kappa is None or heading is None:
        T, _, k_fd = frenet_fd(c)
        if kappa is None:
            kappa = k_fd
        if heading is None:
            heading = np.unwrap(np.arctan2(T[:, 1], T[:, 0]))
    elif c.unit_speed:
        c.check_unit_speed()
    else:
        raise NotUnitSpeedError("curve is not flagged unit speed")
    kappa = np.asarray(kappa, dtype=float)
    heading = np.asarray(heading, dtype=float)
    if kappa.shape != (len(c),) or heading.shape != (len(c),):
        raise CurveError("kappa and heading need one value per sample")
    return kappa, heading


def _solve_beta(t, kappa, L, beta0, sign, spec):
    spline = CubicSpline(t, kappa)
    tr = integrate(beta_field(spline, L, sign), [beta0], (t[0], t[-1]),
                   spec or IntegratorSpec(max_step=t[1] - t[0], land_on_samples=True), sample_dt=t[1] - t[0])
    if len(tr) != len(t):
        raise CurveError("sample grid of the curve is not uniform")
    return tr.states[:, 0]


def backlund_transform(c: PlanarCurve, L: float, beta0: float, sign: int | None = None,
                       kappa=None, heading=None, spec: IntegratorSpec | None = None,
                       tol: float = UNIT_SPEED_TOL) -> BacklundResult:
    """Transform ``c`` by a segment of length ``L`` with initial steering ``beta0``.

    ``kappa`` and ``heading`` (tangent angle) of the input may be supplied
    exactly; otherwise they are differenced from the samples. With
    ``sign=None`` both steering signs are tried, ``+1`` first, and the first
    one whose output passes the unit-speed check within ``tol`` is kept.
    """
    if not L > 0:
        raise ValueError("L must be positive")
    kappa, heading = _inputs(c, kappa, heading)
    t = c.t
    attempts = {}
    for s in ((sign,) if sign is not None else SIGNS):
        beta = _solve_beta(t, kappa, L, beta0, s, spec)
        ang = heading + beta
        pts = c.points + L * np.column_stack([np.cos(ang), np.sin(ang)])
        out = PlanarCurve(pts, c.dt, unit_speed=True)
        dev = float(np.max(np.abs(out.speed() - 1.0)))
        attempts[s] = dev
        if dev <= tol:
            break
    else:
        if sign is not None:
            raise NotUnitSpeedError(f"sign {sign:+d}: output speed deviates by {dev:.3g}")
        raise SignResolutionError(f"no steering sign gives unit speed: {attempts}")

    _, _, k_fd = frenet_fd(out, tol)
    signed_form = kappa - 4.0 * s * np.sin(beta) / L
    orientation = _orientation(signed_form, k_fd)
    k_closed = orientation * signed_form
    agreement = float(np.max(np.abs(k_closed - k_fd)))
    if agreement > AGREEMENT_TOL:
        raise CurveError(f"closed-form and differenced curvature differ by {agreement:.3g}")
    series = CurvatureSeries.from_samples(t, k_closed, 4)
    return BacklundResult(beta, out, series, float(L), s, orientation, k_closed, k_fd,
                          dev, attempts)


def _orientation(closed: np.ndarray, fd: np.ndarray) -> int:
    plus = np.max(np.abs(closed - fd))
    minus = np.max(np.abs(closed + fd))
    return 1 if plus <= minus else -1


def steering_angle(front: np.ndarray, heading: np.ndarray, rear: np.ndarray) -> np.ndarray:
    """Angle from the front tangent to ``rear - front`` (unwrapped)."""
    d = np.asarray(rear, float) - np.asarray(front, float)
    return np.unwrap(np.arctan2(d[:, 1], d[:, 0]) - np.asarray(heading, float))


def reconstruct_rear_track(run, which: int, spec: IntegratorSpec | None = None) -> np.ndarray:
    """Rebuild ``y_which`` of a geodesic run from its x-track alone.

    Only the initial steering angle is read from the linkage; the rest comes
    from the bicycle ODE with ``L = 2 l_which``.
    """
    P = run.params
    L = 2 * (P.l1 if which == 1 else P.l2)
    tr = run.tracks()
    heading = run.headings()
    rear = getattr(tr, f"y{which}")
    beta0 = float(steering_angle(tr.x[:1], heading[:1], rear[:1])[0])
    res = backlund_transform(run.curve("x"), L, beta0, kappa=run.kappa, heading=heading,
                             spec=spec)
    return res.curve_out.points


def euler_soliton_curvature(t, L: float, beta0: float) -> np.ndarray:
    """Curvature magnitude of the transform of a straight line, ``(4/L) sech(2(t - t0)/L)``."""
    t0 = -L / 2 * math.log(abs(math.tan(beta0 / 2)))
    return 4.0 / L / np.cosh(2.0 * (np.asarray(t, float) - t0) / L)


__all__ = ["BacklundResult", "SignResolutionError", "backlund_transform", "beta_field",
           "euler_soliton_curvature", "reconstruct_rear_track", "soliton_constants_from_elastica",
           "steering_angle"]
