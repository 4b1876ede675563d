"""Pointwise kinematics of the planar 2-linkage ("tricycle").

The configuration of the linkage is the front vertex ``x = (x1, x2)`` and the
directions ``alpha1, alpha2`` of the oriented segments ``m_i -> x``. Phase
space adds the conjugate momenta ``p1, p2`` (to ``x``) and ``eta1, eta2`` (to
the angles). Everything here is a pure function of its arguments; nothing
integrates or touches the filesystem.

State vectors handed to the integrator are plain arrays ordered
``(x1, x2, alpha1, alpha2, p1, p2, eta1, eta2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, astuple
from typing import Callable, NamedTuple

import numpy as np

UNIT_ENERGY_TOL = 1e-9
DEGENERACY_TOL = 1e-12


class LinkageError(ValueError):
    """Base class for invalid linkage input."""


class DegenerateConfigurationError(LinkageError):
    """Raised at points excluded from the reduced configuration space."""


class SingularConfigurationError(LinkageError):
    """Raised when a formula's denominator vanishes."""


class NonUnitEnergyError(LinkageError):
    """Raised when a state is required to lie on the level H = 1/2."""


@dataclass(frozen=True)
class Params:
    l1: float = 1.0
    l2: float = 1.0

    def __post_init__(self):
        if not (self.l1 > 0 and self.l2 > 0):
            raise ValueError(f"segment lengths must be positive, got {self.l1}, {self.l2}")

    @property
    def equal(self) -> bool:
        return self.l1 == self.l2


@dataclass(frozen=True)
class ConfigPoint:
    x1: float
    x2: float
    alpha1: float
    alpha2: float

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)


@dataclass(frozen=True)
class PhaseState:
    x1: float = 0.0
    x2: float = 0.0
    alpha1: float = 0.0
    alpha2: float = 0.0
    p1: float = 0.0
    p2: float = 0.0
    eta1: float = 0.0
    eta2: float = 0.0

    @property
    def q(self) -> ConfigPoint:
        return ConfigPoint(self.x1, self.x2, self.alpha1, self.alpha2)

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    @classmethod
    def from_array(cls, y) -> "PhaseState":
        return cls(*(float(v) for v in y))


@dataclass(frozen=True)
class ReducedState:
    alpha1: float
    alpha2: float
    gamma: float


@dataclass(frozen=True)
class ConservedSet:
    H: float
    p1: float
    p2: float
    b: float
    a: float
    G: float | None = None


class Tracks(NamedTuple):
    x: np.ndarray
    m1: np.ndarray
    m2: np.ndarray
    y1: np.ndarray
    y2: np.ndarray


def _state(s) -> PhaseState:
    return s if isinstance(s, PhaseState) else PhaseState.from_array(s)


def angle_distance(a: float, b: float) -> float:
    """Distance between two angles on the circle, in [0, pi]."""
    d = math.remainder(a - b, 2 * math.pi)
    return abs(d)


def check_configuration(alpha1: float, alpha2: float, P: Params) -> None:
    """Raise if the equal-length linkage has coincident rear points."""
    if P.equal and abs(math.sin((alpha1 - alpha2) / 2)) < DEGENERACY_TOL:
        raise DegenerateConfigurationError(
            f"m1 = m2 at alpha1={alpha1!r}, alpha2={alpha2!r} (equal lengths)"
        )


# --------------------------------------------------------------------------
# horizontal distribution
# --------------------------------------------------------------------------

def horizontal_frame(q: ConfigPoint, P: Params) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal horizontal frame ``(v1, v2)`` in coordinates (x1, x2, a1, a2)."""
    s1, c1 = math.sin(q.alpha1), math.cos(q.alpha1)
    s2, c2 = math.sin(q.alpha2), math.cos(q.alpha2)
    v1 = np.array([1.0, 0.0, -s1 / P.l1, -s2 / P.l2])
    v2 = np.array([0.0, 1.0, c1 / P.l1, c2 / P.l2])
    return v1, v2


def bracket_fields(q: ConfigPoint, P: Params) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``[v1,v2]``, ``[[v1,v2],v1]`` and ``[[v1,v2],v2]`` at ``q``."""
    l1, l2 = P.l1, P.l2
    s1, c1 = math.sin(q.alpha1), math.cos(q.alpha1)
    s2, c2 = math.sin(q.alpha2), math.cos(q.alpha2)
    w = np.array([0.0, 0.0, 1 / l1**2, 1 / l2**2])
    w1 = np.array([0.0, 0.0, -c1 / l1**3, -c2 / l2**3])
    w2 = np.array([0.0, 0.0, -s1 / l1**3, -s2 / l2**3])
    return w, w1, w2


def numerical_rank(vectors, tol: float) -> int:
    m = np.atleast_2d(np.asarray(vectors, dtype=float))
    sv = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(sv > tol))


def growth_vector(q: ConfigPoint, P: Params, tol: float = 1e-9) -> tuple[int, int, int]:
    """Ranks of the first three steps of the bracket flag at ``q``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    v1, v2 = horizontal_frame(q, P)
    w, w1, w2 = bracket_fields(q, P)
    return (
        numerical_rank([v1, v2], tol),
        numerical_rank([v1, v2, w], tol),
        numerical_rank([v1, v2, w, w1, w2], tol),
    )


# --------------------------------------------------------------------------
# Hamiltonian flow
# --------------------------------------------------------------------------

def momentum_functions(s, P: Params) -> tuple[float, float]:
    """The frame fields read as fiber-linear functions ``(L1, L2)``."""
    s = _state(s)
    sa1, ca1 = math.sin(s.alpha1), math.cos(s.alpha1)
    sa2, ca2 = math.sin(s.alpha2), math.cos(s.alpha2)
    L1 = s.p1 - s.eta1 * sa1 / P.l1 - s.eta2 * sa2 / P.l2
    L2 = s.p2 + s.eta1 * ca1 / P.l1 + s.eta2 * ca2 / P.l2
    return L1, L2


def hamiltonian(s, P: Params) -> float:
    L1, L2 = momentum_functions(s, P)
    return 0.5 * (L1 * L1 + L2 * L2)


def scale_to_unit_energy(s, P: Params) -> PhaseState:
    """Rescale the fiber coordinates so that ``H = 1/2`` (H is quadratic in them)."""
    s = _state(s)
    H = hamiltonian(s, P)
    if not H > 0:
        raise NonUnitEnergyError("zero-energy state cannot be rescaled")
    c = 1 / math.sqrt(2 * H)
    return PhaseState(s.x1, s.x2, s.alpha1, s.alpha2, c * s.p1, c * s.p2, c * s.eta1, c * s.eta2)


def tangent_angle(s, P: Params) -> float:
    """Direction of the front-vertex velocity, ``atan2(L2, L1)``."""
    L1, L2 = momentum_functions(s, P)
    return math.atan2(L2, L1)


def require_unit_energy(s, P: Params, tol: float = UNIT_ENERGY_TOL) -> None:
    H = hamiltonian(s, P)
    if abs(H - 0.5) > tol:
        raise NonUnitEnergyError(f"H = {H!r} differs from 1/2 by more than {tol}")


def geodesic_rhs(y: np.ndarray, P: Params) -> np.ndarray:
    """Right-hand side of the full geodesic system for a raw state vector."""
    _, _, a1, a2, p1, p2, e1, e2 = y
    l1, l2 = P.l1, P.l2
    s1, c1 = math.sin(a1), math.cos(a1)
    s2, c2 = math.sin(a2), math.cos(a2)
    c12 = c1 * c2 + s1 * s2
    s12 = s1 * c2 - c1 * s2
    ll = l1 * l2
    return np.array([
        p1 - s1 * e1 / l1 - s2 * e2 / l2,
        p2 + e1 * c1 / l1 + e2 * c2 / l2,
        (c1 * p2 - p1 * s1) / l1 + e2 * c12 / ll + e1 / l1**2,
        (c2 * p2 - p1 * s2) / l2 + e1 * c12 / ll + e2 / l2**2,
        0.0,
        0.0,
        e1 * (s1 * p2 + p1 * c1) / l1 + e1 * e2 * s12 / ll,
        e2 * (s2 * p2 + p1 * c2) / l2 - e1 * e2 * s12 / ll,
    ])


def geodesic_field(s, P: Params) -> PhaseState:
    """Time derivative of a phase state under the sub-Riemannian geodesic flow."""
    return PhaseState.from_array(geodesic_rhs(_state(s).as_array(), P))


def make_geodesic_field(P: Params) -> Callable[[float, np.ndarray], np.ndarray]:
    """Autonomous field ``f(t, y)`` suitable for :func:`tricycle.ode.integrate`."""
    def field(t, y):
        return geodesic_rhs(y, P)
    field.__name__ = "geodesic"
    return field


# --------------------------------------------------------------------------
# singular curves
# --------------------------------------------------------------------------

def singular_speed(alpha1: float, alpha2: float, P: Params) -> float:
    l1, l2 = P.l1, P.l2
    num = l1 * l1 + l2 * l2 - 2 * l1 * l2 * math.cos(alpha1 - alpha2)
    return math.sqrt(max(num, 0.0) / (l1 * l1 * l2 * l2))


def singular_curvature(alpha1: float, alpha2: float, P: Params) -> float:
    """Curvature of the unit-speed x-projection of a singular curve."""
    l1, l2 = P.l1, P.l2
    root = math.sqrt(l1 * l1 + l2 * l2 - 2 * l1 * l2 * math.cos(alpha1 - alpha2))
    if root == 0.0:
        raise SingularConfigurationError("singular curve stalls: m1 = m2")
    return (l1 * l1 - l2 * l2) / (l1 * l2 * root)


def singular_elastica_constant(P: Params) -> float:
    return -(P.l1**2 + P.l2**2) / (2 * P.l1**2 * P.l2**2)


def singular_rhs(y: np.ndarray, P: Params, normalized: bool | None = None) -> np.ndarray:
    """Singular-curve field on configuration vectors ``(x1, x2, alpha1, alpha2)``.

    With equal lengths the field carries the factor ``2 sin((a1 - a2)/2)``;
    ``normalized`` (default: on for equal lengths) strips it, which gives a
    unit-speed field.
    """
    _, _, a1, a2 = y[:4]
    if normalized is None:
        normalized = P.equal
    if P.equal:
        check_configuration(a1, a2, P)
    if normalized:
        if not P.equal:
            raise ValueError("the normalized singular field needs equal lengths")
        half_sum, half_diff = (a1 + a2) / 2, (a1 - a2) / 2
        sd = math.sin(half_diff) / P.l1
        return np.array([math.cos(half_sum), math.sin(half_sum), -sd, sd])
    l1, l2 = P.l1, P.l2
    c = math.cos(a1 - a2)
    return np.array([
        math.sin(a1) / l1 - math.sin(a2) / l2,
        -(math.cos(a1) / l1 - math.cos(a2) / l2),
        -(1 / l1**2 - c / (l1 * l2)),
        1 / l2**2 - c / (l1 * l2),
    ])


def singular_field(q: ConfigPoint, P: Params, normalized: bool | None = None):
    """Singular-curve velocity at ``q`` and the planar speed of ``x``.

    Returns ``(ConfigPoint derivative, speed)``.
    """
    d = singular_rhs(q.as_array(), P, normalized)
    return ConfigPoint(*d), math.hypot(d[0], d[1])


def make_singular_field(P: Params, normalized: bool | None = None):
    def field(t, y):
        return singular_rhs(y, P, normalized)
    field.__name__ = "singular"
    return field


def singular_speed_of(y: np.ndarray, P: Params) -> float:
    d = singular_rhs(y, P, normalized=False) if not P.equal else singular_rhs(y, P)
    return math.hypot(d[0], d[1])


# --------------------------------------------------------------------------
# reduced (equal-length) system
# --------------------------------------------------------------------------

def reduced_rhs(y: np.ndarray, p1: float, p2: float) -> np.ndarray:
    a1, a2, g = y[:3]
    den = math.cos((a2 - a1) / 2)
    if abs(den) < DEGENERACY_TOL:
        raise SingularConfigurationError("cos((alpha2 - alpha1)/2) vanishes")
    mean = (a1 + a2) / 2
    gdot = (math.sin(g - mean) + p1 * math.sin(mean) - p2 * math.cos(mean)) / den
    return np.array([math.sin(g - a1), math.sin(g - a2), gdot])


def reduced_field(r: ReducedState, p1: float, p2: float) -> ReducedState:
    """Equal-length (unit) system in the variables ``(alpha1, alpha2, gamma)``."""
    return ReducedState(*reduced_rhs(np.array([r.alpha1, r.alpha2, r.gamma]), p1, p2))


def eta_from_gamma(gamma, alpha1, alpha2, p1, p2) -> tuple[float, float]:
    """Invert ``L1 = cos(gamma), L2 = sin(gamma)`` for the angle momenta (unit lengths)."""
    den = math.sin(alpha2 - alpha1)
    if abs(den) < DEGENERACY_TOL:
        raise DegenerateConfigurationError("sin(alpha2 - alpha1) vanishes")
    eta1 = (math.cos(gamma - alpha2) - p1 * math.cos(alpha2) - p2 * math.sin(alpha2)) / den
    eta2 = (math.cos(gamma - alpha1) - p1 * math.cos(alpha1) - p2 * math.sin(alpha1)) / -den
    return eta1, eta2


# --------------------------------------------------------------------------
# curvature and integrals
# --------------------------------------------------------------------------

def curvature(s, P: Params) -> float:
    s = _state(s)
    return s.eta1 / P.l1**2 + s.eta2 / P.l2**2


def curvature_jet(s, P: Params, tol: float = UNIT_ENERGY_TOL) -> tuple[float, float, float]:
    """Curvature of the x-track and its first two arc-length derivatives."""
    s = _state(s)
    require_unit_energy(s, P, tol)
    l1, l2 = P.l1, P.l2
    g = tangent_angle(s, P)
    d1, d2 = g - s.alpha1, g - s.alpha2
    k = s.eta1 / l1**2 + s.eta2 / l2**2
    kd = s.eta1 * math.cos(d1) / l1**3 + s.eta2 * math.cos(d2) / l2**3
    kdd = (s.eta1 / l1**4 + s.eta2 / l2**4
           - k * (s.eta1 * math.sin(d1) / l1**3 + s.eta2 * math.sin(d2) / l2**3))
    return k, kd, kdd


def invariant_G(s, P: Params) -> float:
    """Extra integral of the equal-length problem (lengths scaled to one)."""
    s = _state(s)
    if not (P.equal and P.l1 == 1.0):
        raise ValueError("G is defined for l1 = l2 = 1; rescale first")
    L1, L2 = momentum_functions(s, P)
    return s.p1 * L1 + s.p2 * L2 + 0.5 * (s.eta1 + s.eta2) ** 2


def invariant_b(s, P: Params) -> float:
    s = _state(s)
    l1, l2 = P.l1, P.l2
    s1, c1 = math.sin(s.alpha1), math.cos(s.alpha1)
    s2, c2 = math.sin(s.alpha2), math.cos(s.alpha2)
    p1, p2, e1, e2 = s.p1, s.p2, s.eta1, s.eta2
    pp = p1 * p1 + p2 * p2
    return (e1 * (c1 * p2 - s1 * p1) / (l1 * l2**2)
            + e2 * (c2 * p2 - s2 * p1) / (l1**2 * l2)
            + pp / (2 * l2**2) + pp / (2 * l1**2)
            + (e1 + e2) ** 2 / (2 * l1**2 * l2**2)
            + 1 / (2 * l2**2) + 1 / (2 * l1**2))


def a_from_b(b: float, p1: float, p2: float, P: Params) -> float:
    """The quadratic dependence of the soliton constant ``a`` on ``b``."""
    l1, l2 = P.l1, P.l2
    return ((p1 * p1 + p2 * p2) / (2 * l1**2 * l2**2) - b * b / 2 + b / l2**2 + b / l1**2
            - 1 / (2 * l2**4) - 1 / (2 * l1**2 * l2**2) - 1 / (2 * l1**4))


def rotate_state(s, theta: float) -> PhaseState:
    """Rigid rotation of the plane by ``theta``, lifted to phase space."""
    s = _state(s)
    c, si = math.cos(theta), math.sin(theta)
    return PhaseState(
        c * s.x1 - si * s.x2, si * s.x1 + c * s.x2,
        s.alpha1 + theta, s.alpha2 + theta,
        c * s.p1 - si * s.p2, si * s.p1 + c * s.p2,
        s.eta1, s.eta2,
    )


def conserved_set(s, P: Params) -> ConservedSet:
    s = _state(s)
    G = invariant_G(s, P) if (P.equal and P.l1 == 1.0) else None
    # the closed form for a is stated with momentum along the first axis
    r = rotate_state(s, -math.atan2(s.p2, s.p1))
    b = invariant_b(r, P)
    return ConservedSet(
        H=hamiltonian(s, P), p1=s.p1, p2=s.p2,
        b=invariant_b(s, P), a=a_from_b(b, r.p1, r.p2, P), G=G,
    )


def elastica_constants(s, P: Params) -> tuple[float, float]:
    """``(A, B)`` of the x-track elastica for unit equal lengths."""
    A = -invariant_G(s, P)
    k, kd, _ = curvature_jet(s, P)
    B = -(kd * kd + k**4 / 4 + A * k * k)
    return A, B


def mu_readings(s, P: Params) -> dict:
    """Both readings of the elastica shape parameter at an equal-length state."""
    A, B = elastica_constants(s, P)
    s = _state(s)
    pp = s.p1**2 + s.p2**2
    G = -A
    return {"mu": B / A**2, "one_minus_pp_over_G2": 1 - pp / G**2,
            "one_minus_pp_over_G": 1 - pp / G}


# --------------------------------------------------------------------------
# filament field
# --------------------------------------------------------------------------

def integral_momentum_gradient(s, P: Params) -> tuple[float, float]:
    """Plane projection ``(dI/dp1, dI/dp2)`` of the extra integral's flow.

    ``I`` is ``G`` for unit equal lengths and ``b`` otherwise; the two agree up
    to an additive constant when both are defined.
    """
    s = _state(s)
    l1, l2 = P.l1, P.l2
    s1, c1 = math.sin(s.alpha1), math.cos(s.alpha1)
    s2, c2 = math.sin(s.alpha2), math.cos(s.alpha2)
    w = 1 / l1**2 + 1 / l2**2
    g1 = w * s.p1 - s.eta1 * s1 / (l1 * l2**2) - s.eta2 * s2 / (l1**2 * l2)
    g2 = w * s.p2 + s.eta1 * c1 / (l1 * l2**2) + s.eta2 * c2 / (l1**2 * l2)
    return g1, g2


def filament_projection(s, P: Params, tol: float = UNIT_ENERGY_TOL) -> tuple[float, float]:
    """Tangential and normal components ``(u, v)`` of the projected extra flow."""
    s = _state(s)
    k, kd, _ = curvature_jet(s, P, tol)
    if P.equal and P.l1 == 1.0:
        u = 1 + invariant_G(s, P) - k * k / 2
    else:
        u = invariant_b(s, P) - k * k / 2
    return u, -kd


def filament_residual(s, P: Params, tol: float = UNIT_ENERGY_TOL) -> float:
    """``|(dI/dp1, dI/dp2) - (u T + v N)|`` with the standard Frenet normal."""
    u, v = filament_projection(s, P, tol)
    g = tangent_angle(s, P)
    T = (math.cos(g), math.sin(g))
    N = (-math.sin(g), math.cos(g))
    g1, g2 = integral_momentum_gradient(s, P)
    return math.hypot(g1 - (u * T[0] + v * N[0]), g2 - (u * T[1] + v * N[1]))


# --------------------------------------------------------------------------
# Poisson bracket and tracks
# --------------------------------------------------------------------------

_CANONICAL_PAIRS = ((0, 4), (1, 5), (2, 6), (3, 7))


def _gradient(f, y: np.ndarray, h: float) -> np.ndarray:
    g = np.empty(8)
    for i in range(8):
        e = np.zeros(8)
        e[i] = h
        g[i] = (f(y + e) - f(y - e)) / (2 * h)
    return g


def poisson_bracket(f, g, s, h: float = 1e-5) -> float:
    """Canonical bracket ``{f, g}`` by central differences.

    ``f`` and ``g`` take a raw state vector ``(x1, x2, a1, a2, p1, p2, e1, e2)``.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    y = _state(s).as_array()
    df, dg = _gradient(f, y, h), _gradient(g, y, h)
    return float(sum(df[q] * dg[p] - df[p] * dg[q] for q, p in _CANONICAL_PAIRS))


def tracks(q, P: Params) -> Tracks:
    """Positions of the vertex ``x``, rear wheels ``m_i`` and extended ends ``y_i``.

    Accepts a single configuration or an ``(n, >=4)`` array of states.
    """
    arr = q.as_array() if hasattr(q, "as_array") else np.asarray(q, dtype=float)
    arr = np.atleast_2d(arr)
    x = arr[:, :2]
    u1 = np.column_stack([np.cos(arr[:, 2]), np.sin(arr[:, 2])])
    u2 = np.column_stack([np.cos(arr[:, 3]), np.sin(arr[:, 3])])
    m1 = x - P.l1 * u1
    m2 = x - P.l2 * u2
    out = Tracks(x, m1, m2, 2 * m1 - x, 2 * m2 - x)
    if np.ndim(q.as_array() if hasattr(q, "as_array") else q) == 1:
        out = Tracks(*(v[0] for v in out))
    return out


# --------------------------------------------------------------------------
# symmetric chart for unit equal lengths
# --------------------------------------------------------------------------
#
# Near the excluded locus alpha1 = alpha2 the momenta eta1, eta2 grow like
# 1/sin(alpha2 - alpha1) with opposite signs, and kappa = eta1 + eta2 loses
# every digit to cancellation. The chart
#
#     (x1, x2, abar, rho, p1, p2, kappa, zeta)
#     abar = (alpha1 + alpha2)/2,  rho = ln tan((alpha2 - alpha1)/4),
#     zeta = (eta1 - eta2) sin((alpha2 - alpha1)/2)
#
# keeps every coordinate and every right-hand side term O(1). The angle
# difference is first reduced into (0, 2*pi); the removed multiple of 2*pi is
# carried separately as ``winding``.

def to_symmetric(y) -> tuple[np.ndarray, int]:
    x1, x2, a1, a2, p1, p2, e1, e2 = np.asarray(y, dtype=float)
    d = a2 - a1
    winding = math.floor(d / (2 * math.pi))
    d -= 2 * math.pi * winding
    if d <= 0.0 or math.sin(d / 2) < DEGENERACY_TOL:
        raise DegenerateConfigurationError("alpha1 = alpha2: no symmetric chart")
    abar = a1 + d / 2
    z = np.array([x1, x2, abar, math.log(math.tan(d / 4)), p1, p2,
                  e1 + e2, (e1 - e2) * math.sin(d / 2)])
    return z, winding


def from_symmetric(z, winding: int = 0) -> np.ndarray:
    x1, x2, abar, rho, p1, p2, k, zeta = z
    half = 2 * math.atan(math.exp(rho))
    spread = zeta * math.cosh(rho)
    return np.array([x1, x2, abar - half, abar + half + 2 * math.pi * winding,
                     p1, p2, (k + spread) / 2, (k - spread) / 2])


def _symmetric_parts(z):
    _, _, abar, rho, p1, p2, k, zeta = z
    sd, cd = 1 / math.cosh(rho), -math.tanh(rho)
    sa, ca = math.sin(abar), math.cos(abar)
    pc, ps = p1 * ca + p2 * sa, p1 * sa - p2 * ca
    return sd, cd, sa, ca, pc, ps


def symmetric_rhs(z) -> np.ndarray:
    """Geodesic field (unit equal lengths) in the symmetric chart."""
    _, _, abar, rho, p1, p2, k, zeta = z
    sd, cd, sa, ca, pc, ps = _symmetric_parts(z)
    return np.array([
        p1 - k * sa * cd + zeta * ca,
        p2 + k * ca * cd + zeta * sa,
        -cd * ps + k * cd * cd,
        -pc - zeta,
        0.0,
        0.0,
        k * cd * pc + zeta * ps,
        k * sd * sd * (ps - k * cd),
    ])


def make_symmetric_field():
    def field(t, z):
        return symmetric_rhs(z)
    field.__name__ = "geodesic_symmetric"
    return field


def symmetric_jet(z) -> tuple[float, float, float]:
    """``(kappa, kappa', kappa'')`` differentiated along the flow in the chart."""
    k, zeta = z[6], z[7]
    sd, cd, sa, ca, pc, ps = _symmetric_parts(z)
    d = symmetric_rhs(z)
    abar_dot, rho_dot, zeta_dot = d[2], d[3], d[7]
    kd = d[6]
    kdd = (kd * cd * pc - k * sd * sd * rho_dot * pc - k * cd * abar_dot * ps
           + zeta_dot * ps + zeta * abar_dot * pc)
    return float(k), float(kd), float(kdd)


def symmetric_invariants(z) -> dict:
    """``H`` and ``G`` evaluated in the symmetric chart."""
    d = symmetric_rhs(z)
    L1, L2 = d[0], d[1]
    p1, p2, k = z[4], z[5], z[6]
    return {"H": 0.5 * (L1 * L1 + L2 * L2), "G": p1 * L1 + p2 * L2 + 0.5 * k * k}


def rear_curvature_from(kappa: float, gamma: float, alpha: float, l: float) -> float:
    """Curvature of ``y = x - 2 l u(alpha)`` given the front curvature and heading.

    Velocity and acceleration are exact: the angle rate follows the no-slip
    equation, so nothing is differenced.
    """
    T = np.array([math.cos(gamma), math.sin(gamma)])
    N = np.array([-T[1], T[0]])
    u = np.array([math.cos(alpha), math.sin(alpha)])
    up = np.array([-u[1], u[0]])
    ad = math.sin(gamma - alpha) / l
    add = math.cos(gamma - alpha) * (kappa - ad) / l
    v = T - 2 * l * ad * up
    acc = kappa * N - 2 * l * add * up + 2 * l * ad * ad * u
    speed = math.hypot(v[0], v[1])
    return float((v[0] * acc[1] - v[1] * acc[0]) / speed**3)


def rear_curvature(s, P: Params, which: int) -> float:
    """Curvature of the ``y_which`` track (1 or 2) at a unit-energy state."""
    s = _state(s)
    l, a = (P.l1, s.alpha1) if which == 1 else (P.l2, s.alpha2)
    return rear_curvature_from(curvature(s, P), tangent_angle(s, P), a, l)
