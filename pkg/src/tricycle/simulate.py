"""Geodesic and singular-curve runs with their derived series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linkage as lk
from .curves import CurvatureSeries, PlanarCurve
from .linkage import Params, PhaseState
from .ode import IntegratorSpec, Trajectory, integrate, unit_speed_wrap

TRACK_NAMES = ("x", "m1", "m2", "y1", "y2")


def _unit_equal(P: Params) -> bool:
    return P.l1 == 1.0 and P.l2 == 1.0


@dataclass
class GeodesicRun:
    """A sampled geodesic in standard coordinates plus curvature data.

    ``jet`` holds ``(kappa, kappa', kappa'')`` of the x-track per sample,
    evaluated in whichever chart the run was integrated in.
    """

    params: Params
    trajectory: Trajectory
    jet: np.ndarray
    chart: str = "standard"
    chart_states: np.ndarray | None = None
    winding: int = 0
    invariant_cache: dict = field(default_factory=dict, repr=False)

    @property
    def times(self) -> np.ndarray:
        return self.trajectory.times

    @property
    def states(self) -> np.ndarray:
        return self.trajectory.states

    @property
    def dt(self) -> float:
        return self.trajectory.dt

    @property
    def kappa(self) -> np.ndarray:
        return self.jet[:, 0]

    def tracks(self) -> lk.Tracks:
        return lk.tracks(self.states, self.params)

    def curve(self, name: str = "x") -> PlanarCurve:
        pts = getattr(self.tracks(), name)
        return PlanarCurve(pts, self.dt, unit_speed=name in ("x", "y1", "y2"))

    def curvature_series(self, order: int = 4) -> CurvatureSeries:
        """x-track curvature with the exact jet and differenced higher orders."""
        return CurvatureSeries.from_samples(
            self.times, self.jet[:, 0], order, known=(self.jet[:, 1], self.jet[:, 2]))

    def headings(self) -> np.ndarray:
        """Tangent angle of the x-track per sample (unwrapped)."""
        if self.chart == "symmetric":
            v = np.array([lk.symmetric_rhs(z)[:2] for z in self.chart_states])
            g = np.arctan2(v[:, 1], v[:, 0])
        else:
            g = np.array([lk.tangent_angle(y, self.params) for y in self.states])
        return np.unwrap(g)

    def rear_curvature_series(self, which: int, order: int = 4) -> CurvatureSeries:
        """Curvature of the ``y_which`` track in closed form, derivatives differenced."""
        l = self.params.l1 if which == 1 else self.params.l2
        alpha = self.states[:, 1 + which]
        k = np.array([lk.rear_curvature_from(kk, g, a, l)
                      for kk, g, a in zip(self.kappa, self.headings(), alpha)])
        return CurvatureSeries.from_samples(self.times, k, order)

    def invariants(self) -> dict:
        """Per-sample ``H, p1, p2, b, a`` (and ``G`` for unit equal lengths)."""
        if self.invariant_cache:
            return self.invariant_cache
        P = self.params
        p1, p2 = self.states[:, 4], self.states[:, 5]
        if self.chart == "symmetric":
            rows = [lk.symmetric_invariants(z) for z in self.chart_states]
            H = np.array([r["H"] for r in rows])
            G = np.array([r["G"] for r in rows])
            b = G + 1.0
            pp = p1 * p1 + p2 * p2
            a = np.array([lk.a_from_b(bi, math.sqrt(q), 0.0, P) for bi, q in zip(b, pp)])
            out = {"H": H, "p1": p1, "p2": p2, "G": G, "b": b, "a": a}
        else:
            sets = [lk.conserved_set(y, P) for y in self.states]
            out = {"H": np.array([c.H for c in sets]), "p1": p1, "p2": p2,
                   "b": np.array([c.b for c in sets]), "a": np.array([c.a for c in sets])}
            if _unit_equal(P):
                out["G"] = np.array([c.G for c in sets])
        self.invariant_cache.update(out)
        return out

    def drift(self, scale_floor: float = 1.0) -> dict:
        """Max ``|Q(t) - Q(0)| / max(scale_floor, |Q(0)|)`` per invariant."""
        return {k: float(np.max(np.abs(v - v[0])) / max(scale_floor, abs(v[0])))
                for k, v in self.invariants().items()}


def simulate_geodesic(state: PhaseState, P: Params, t_max: float,
                      spec: IntegratorSpec | None = None, sample_dt: float = 0.01,
                      chart: str = "auto") -> GeodesicRun:
    """Integrate the geodesic flow from ``state`` over ``[0, t_max]``.

    ``chart="auto"`` integrates unit equal-length linkages in the symmetric
    chart (well conditioned when the rear wheels converge) and everything
    else in standard coordinates.
    """
    y0 = state.as_array() if isinstance(state, PhaseState) else np.asarray(state, float)
    spec = spec or _sampled_spec(sample_dt)
    if chart == "auto":
        chart = "symmetric" if _unit_equal(P) else "standard"
    meta = {"params": (P.l1, P.l2), "chart": chart}
    if chart == "symmetric":
        if not _unit_equal(P):
            raise ValueError("the symmetric chart needs l1 = l2 = 1")
        z0, winding = lk.to_symmetric(y0)
        tr = integrate(lk.make_symmetric_field(), z0, (0.0, t_max), spec, sample_dt, meta)
        zs = tr.states
        std = np.array([lk.from_symmetric(z, winding) for z in zs])
        jet = np.array([lk.symmetric_jet(z) for z in zs])
        return GeodesicRun(P, Trajectory(tr.times, std, tr.meta), jet, "symmetric", zs, winding)
    if chart != "standard":
        raise ValueError(f"unknown chart {chart!r}")
    tr = integrate(lk.make_geodesic_field(P), y0, (0.0, t_max), spec, sample_dt, meta)
    jet = np.array([_jet_any_energy(y, P) for y in tr.states])
    return GeodesicRun(P, tr, jet)


def _sampled_spec(sample_dt: float) -> IntegratorSpec:
    # interpolated samples carry non-smooth error that differencing amplifies,
    # so every sample is made a step endpoint
    return IntegratorSpec(max_step=sample_dt, land_on_samples=True)


def _jet_any_energy(y, P: Params):
    # curvature_jet insists on H = 1/2; runs off that level still get kappa
    try:
        return lk.curvature_jet(y, P, tol=1e-6)
    except lk.NonUnitEnergyError:
        return (lk.curvature(y, P), math.nan, math.nan)


@dataclass
class SingularRun:
    params: Params
    trajectory: Trajectory
    unit_speed: bool

    @property
    def times(self):
        return self.trajectory.times

    @property
    def states(self):
        return self.trajectory.states

    def tracks(self) -> lk.Tracks:
        return lk.tracks(self.states, self.params)

    def curve(self, name: str = "x") -> PlanarCurve:
        return PlanarCurve(getattr(self.tracks(), name), self.trajectory.dt,
                           unit_speed=self.unit_speed and name == "x")

    def closed_form_curvature(self) -> np.ndarray:
        P = self.params
        if P.equal:
            return np.zeros(len(self.times))
        return np.array([lk.singular_curvature(a1, a2, P) for a1, a2 in self.states[:, 2:4]])


def simulate_singular(q: lk.ConfigPoint, P: Params, t_max: float,
                      spec: IntegratorSpec | None = None, sample_dt: float = 0.01) -> SingularRun:
    """Integrate a singular curve, reparametrized by arc length of ``x``."""
    y0 = q.as_array() if hasattr(q, "as_array") else np.asarray(q, float)
    spec = spec or _sampled_spec(sample_dt)
    if P.equal:
        field_ = lk.make_singular_field(P)  # already unit speed
    else:
        field_ = unit_speed_wrap(lk.make_singular_field(P),
                                 lambda y: lk.singular_speed(y[2], y[3], P))
    tr = integrate(field_, y0, (0.0, t_max), spec, sample_dt,
                   {"params": (P.l1, P.l2)})
    return SingularRun(P, tr, True)
