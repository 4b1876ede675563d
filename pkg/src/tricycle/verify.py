"""Invariant suite evaluated on a sampled geodesic run."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import linkage as lk
from .curves import CurveError, derivative, fit_soliton_ab, frenet_fd, soliton2_residual
from .simulate import GeodesicRun


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        if not math.isfinite(d["value"]):
            d["value"] = str(d["value"])
        return d


def _check(name, value, tol, note="") -> Check:
    value = float(value)
    return Check(name, value, tol, bool(math.isfinite(value) and value <= tol), note)


def _rel(x, ref):
    return abs(x - ref) / max(1.0, abs(ref))


def no_slip_defect(run: GeodesicRun, which: int, trim: int = 3, accuracy: int = 6) -> float:
    """Max ``|m_i' x (x - m_i)| / l_i`` with the velocity of ``m_i`` differenced.

    The wheel tracks turn sharply, so a sixth-order stencil is the default.
    """
    tr = run.tracks()
    m = getattr(tr, f"m{which}")
    l = run.params.l1 if which == 1 else run.params.l2
    v = derivative(m, run.dt, 1, accuracy)
    d = (tr.x - m) / l
    cross = v[:, 0] * d[:, 1] - v[:, 1] * d[:, 0]
    return float(np.max(np.abs(cross[trim:len(cross) - trim])))


def closure_gap(run: GeodesicRun) -> dict:
    """Distance between the first and last sample of every track (no claim attached)."""
    return {name: float(np.linalg.norm(pts[-1] - pts[0]))
            for name, pts in run.tracks()._asdict().items()}


def invariant_report(run: GeodesicRun, trim: int = 10) -> list[Check]:
    """Every applicable invariant of the run, with its measured value."""
    P = run.params
    s0 = lk.PhaseState.from_array(run.states[0])
    H0 = lk.hamiltonian(s0, P)
    checks = [_check("unit_energy", abs(H0 - 0.5), lk.UNIT_ENERGY_TOL)]
    if not checks[0].passed:
        return checks

    drift = run.drift()
    for key, val in drift.items():
        checks.append(_check(f"drift_{key}", val, 1e-8, "relative to max(1, |Q0|)"))

    k = run.kappa
    kd, kdd = run.jet[:, 1], run.jet[:, 2]
    inv = run.invariants()
    try:
        _, _, k_fd = frenet_fd(run.curve("x"))
        checks.append(_check("frenet_fd_vs_jet", np.max(np.abs(k_fd - k)[trim:-trim]), 1e-6))
    except CurveError as exc:
        checks.append(Check("frenet_fd_vs_jet", math.nan, 1e-6, False, str(exc)))

    if P.equal and P.l1 == 1.0:
        A = -inv["G"][0]
        checks.append(_check("elastica_residual_jet", np.max(np.abs(kdd + k**3 / 2 + A * k)), 1e-8))
        Bs = -(kd**2 + k**4 / 4 + A * k**2)
        pp = inv["p1"][0] ** 2 + inv["p2"][0] ** 2
        checks.append(_check("first_integral_B_variation", np.max(np.abs(Bs - Bs[0])), 1e-8))
        checks.append(_check("A2_minus_B_equals_pp", abs(A * A - Bs[0] - pp), 1e-9))
        if A != 0:
            checks.append(Check("mu", float(Bs[0] / (A * A)), math.inf, True,
                                "shape parameter B/A^2, informational"))
    else:
        a0, b0 = inv["a"][0], inv["b"][0]
        try:
            fx = fit_soliton_ab(run.curvature_series(), trim=trim)
            checks.append(_check("soliton_fit_x_a", _rel(fx.a, a0), 1e-5))
            checks.append(_check("soliton_fit_x_b", _rel(fx.b, b0), 1e-5))
            for w in (1, 2):
                cs = run.rear_curvature_series(w)
                fy = fit_soliton_ab(cs, trim=trim)
                checks.append(_check(f"soliton_fit_y{w}_a", _rel(fy.a, a0), 1e-4))
                checks.append(_check(f"soliton_fit_y{w}_b", _rel(fy.b, b0), 1e-4))
                checks.append(_check(f"soliton_residual_y{w}",
                                     soliton2_residual(cs, a0, b0, trim).sup, 1e-4))
        except CurveError as exc:
            checks.append(Check("soliton_fit", math.nan, 1e-5, False, str(exc)))

    for w in (1, 2):
        checks.append(_check(f"no_slip_m{w}", no_slip_defect(run, w), 1e-8))
    if s0.eta2 == 0.0:
        checks.append(_check("lifting_eta2", np.max(np.abs(run.states[:, 7])), 1e-10))
    return checks


def report_dict(checks: list[Check], extra: dict | None = None) -> dict:
    out = {"passed": all(c.passed for c in checks), "checks": [c.to_dict() for c in checks]}
    if extra:
        out.update(extra)
    return out


def reflect(points: np.ndarray, origin: np.ndarray, angle: float) -> np.ndarray:
    """Mirror image of ``points`` across the line through ``origin`` at ``angle``."""
    d = np.array([math.cos(angle), math.sin(angle)])
    rel = np.asarray(points, float) - origin
    along = rel @ d
    return origin + 2 * along[:, None] * d - rel


def singular_report(run, trim: int = 5) -> list[Check]:
    """Checks for a singular-curve run: closed-form curvature and elastica, or
    the straight-line picture when the lengths agree."""
    from .curves import CurvatureSeries, elastica_residual
    P = run.params
    s = run.states
    checks = []
    if P.equal:
        theta = (s[0, 2] + s[0, 3]) / 2
        d = np.array([math.cos(theta), math.sin(theta)])
        rel = s[:, :2] - s[0, :2]
        checks.append(_check("x_collinear", np.max(np.abs(rel[:, 0] * d[1] - rel[:, 1] * d[0])), 1e-10))
        total = s[:, 2] + s[:, 3]
        checks.append(_check("alpha_sum_constant", np.max(np.abs(total - total[0])), 1e-10))
        tr = run.tracks()
        checks.append(_check("m_tracks_mirror", np.max(np.abs(reflect(tr.m1, s[0, :2], theta) - tr.m2)),
                             1e-8))
        return checks
    c = run.curve("x")
    checks.append(_check("unit_speed", np.max(np.abs(c.speed() - 1)), 1e-8))
    _, _, k_fd = frenet_fd(c)
    k_closed = run.closed_form_curvature()
    checks.append(_check("fd_vs_closed_form_curvature", np.max(np.abs(k_fd - k_closed)), 1e-8))
    A = lk.singular_elastica_constant(P)
    cs = CurvatureSeries.from_samples(run.times, k_closed, 2)
    checks.append(_check("elastica_residual", elastica_residual(cs, A, trim).sup, 1e-8,
                         f"A = {A!r}"))
    return checks
