"""Explicit Runge-Kutta integration with dense sampling.

Two schemes are provided: the Dormand-Prince 5(4) embedded pair with step-size
control (propagating the 5th-order solution, dense output from its 4th-order
continuous extension) and the classical fixed-step RK4, kept for convergence
studies. Fields are callables ``f(t, y) -> ndarray``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .linkage import DegenerateConfigurationError

Field = Callable[[float, np.ndarray], np.ndarray]

SPEED_FLOOR = 1e-12


class IntegrationError(RuntimeError):
    pass


class MaxStepsExceeded(IntegrationError):
    pass


@dataclass(frozen=True)
class IntegratorSpec:
    """Integrator choice and its controls.

    ``method`` is ``"dopri5"`` (adaptive) or ``"rk4"`` (fixed ``step``).
    ``max_step`` caps adaptive steps. ``land_on_samples`` shortens steps so
    every sample time is a step endpoint; sampled data then carries the smooth
    global error only, with no interpolation error, which matters when the
    samples are differentiated afterwards.
    """

    method: str = "dopri5"
    rtol: float = 1e-10
    atol: float = 1e-10
    step: float | None = None
    max_step: float = math.inf
    max_steps: int = 2_000_000
    land_on_samples: bool = False

    def __post_init__(self):
        if self.method not in ("dopri5", "rk4"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "rk4" and not (self.step and self.step > 0):
            raise ValueError("rk4 needs a positive step")
        if self.rtol <= 0 or self.atol <= 0 or self.max_step <= 0:
            raise ValueError("tolerances and max_step must be positive")


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=float)
        if self.states.ndim != 2 or len(self.states) != len(self.times):
            raise ValueError("states must be (n, d) with one row per time")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")

    def __len__(self):
        return len(self.times)

    @property
    def dt(self) -> float:
        return float(self.meta.get("sample_dt", self.times[1] - self.times[0]))

    def column(self, i: int) -> np.ndarray:
        return self.states[:, i]


# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)
_D = (-12715105075 / 11282082432, 0.0, 87487479700 / 32700410799,
      -10690763975 / 1880347072, 701980252875 / 199316789632,
      -1453857185 / 822651844, 69997945 / 29380423)


def _sample_times(t0: float, t1: float, dt: float) -> np.ndarray:
    n = int(math.floor((t1 - t0) / dt + 1e-9))
    ts = t0 + dt * np.arange(n + 1)
    ts = ts[ts < t1 - 1e-12 * max(1.0, abs(t1))]
    return np.append(ts, t1)


def _dopri_step(f, t, y, k1, h):
    ks = [k1]
    for i in range(1, 7):
        yi = y + h * sum(a * k for a, k in zip(_A[i], ks) if a)
        ks.append(np.asarray(f(t + _C[i] * h, yi), dtype=float))
    y_new = y + h * sum(a * k for a, k in zip(_A[6], ks) if a)
    err = h * sum(e * k for e, k in zip(_E, ks) if e)
    return y_new, err, ks


def _dopri_dense(y0, y1, ks, h):
    dy = y1 - y0
    bspl = h * ks[0] - dy
    r4 = dy - h * ks[6] - bspl
    r5 = h * sum(d * k for d, k in zip(_D, ks) if d)

    def at(theta):
        th1 = 1.0 - theta
        return y0 + theta * (dy + th1 * (bspl + theta * (r4 + th1 * r5)))
    return at


def _hermite(y0, y1, f0, f1, h):
    def at(theta):
        t2, t3 = theta * theta, theta ** 3
        return ((2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + theta) * h * f0
                + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * f1)
    return at


def _initial_step(f, t0, y0, f0, rtol, atol):
    scale = atol + rtol * np.abs(y0)
    d0 = np.sqrt(np.mean((y0 / scale) ** 2))
    d1 = np.sqrt(np.mean((f0 / scale) ** 2))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    f1 = np.asarray(f(t0 + h0, y0 + h0 * f0), dtype=float)
    d2 = np.sqrt(np.mean(((f1 - f0) / scale) ** 2)) / h0
    h1 = max(1e-6, h0 * 1e-3) if max(d1, d2) <= 1e-15 else (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1)


def integrate(field: Field, y0, t_span, spec: IntegratorSpec | None = None,
              sample_dt: float = 0.01, meta: dict | None = None) -> Trajectory:
    """Integrate ``field`` from ``y0`` over ``t_span`` and sample every ``sample_dt``.

    Samples sit at ``t0 + k * sample_dt`` plus the final time. Errors raised by
    the field (for instance a degenerate configuration) propagate unchanged.
    """
    spec = spec or IntegratorSpec()
    t0, t1 = map(float, t_span)
    if not t1 > t0:
        raise ValueError("t_span must be increasing")
    if sample_dt <= 0:
        raise ValueError("sample_dt must be positive")
    y = np.array(y0, dtype=float)
    f0 = np.asarray(field(t0, y), dtype=float)
    if f0.shape != y.shape:
        raise ValueError(f"field returns shape {f0.shape}, state has {y.shape}")

    ts = _sample_times(t0, t1, sample_dt)
    out = np.empty((len(ts), y.size))
    out[0] = y
    j = 1
    t = t0
    k1 = f0
    steps = 0
    landing = False
    if spec.method == "rk4":
        h_nom = spec.step
    else:
        h_prop = min(_initial_step(field, t0, y, f0, spec.rtol, spec.atol), spec.max_step)

    while j < len(ts):
        if steps >= spec.max_steps:
            raise MaxStepsExceeded(f"more than {spec.max_steps} steps before t={ts[-1]}")
        steps += 1
        if spec.method == "rk4":
            h = min(h_nom, t1 - t)
            a = k1
            b = np.asarray(field(t + h / 2, y + h / 2 * a), dtype=float)
            c = np.asarray(field(t + h / 2, y + h / 2 * b), dtype=float)
            d = np.asarray(field(t + h, y + h * c), dtype=float)
            y_new = y + h / 6 * (a + 2 * b + 2 * c + d)
            k_new = np.asarray(field(t + h, y_new), dtype=float)
            dense = _hermite(y, y_new, k1, k_new, h)
        else:
            h = min(h_prop, t1 - t)
            landing = spec.land_on_samples and ts[j] - t <= h
            if landing:
                h = ts[j] - t
            with np.errstate(over="ignore", invalid="ignore"):
                # a blown-up step is caught by the finiteness check below
                y_new, err, ks = _dopri_step(field, t, y, k1, h)
            scale = spec.atol + spec.rtol * np.maximum(np.abs(y), np.abs(y_new))
            enorm = float(np.sqrt(np.mean((err / scale) ** 2)))
            if not np.isfinite(enorm):
                raise IntegrationError(f"non-finite state near t={t}")
            fac = 10.0 if enorm == 0 else min(10.0, max(0.2, 0.9 * enorm ** -0.2))
            if enorm > 1.0:
                h_prop = h * fac
                if h_prop < 1e-14 * max(1.0, abs(t)):
                    raise IntegrationError(f"step size underflow at t={t}")
                continue
            k_new = ks[6]
            dense = _dopri_dense(y, y_new, ks, h)
        t_new = ts[j] if landing else t + h
        while j < len(ts) and ts[j] <= t_new + 1e-12 * max(1.0, abs(t_new)):
            out[j] = y_new if ts[j] >= t_new else dense((ts[j] - t) / h)
            j += 1
        t, y, k1 = t_new, y_new, k_new
        if spec.method == "dopri5":
            # a step shortened to land on a sample does not shrink the next one
            h_prop = min(max(h, h_prop) * fac if landing else h * fac, spec.max_step)

    info = {"field": getattr(field, "__name__", "field"), "method": spec.method,
            "rtol": spec.rtol, "atol": spec.atol, "step": spec.step,
            "sample_dt": sample_dt, "steps": steps}
    info.update(meta or {})
    return Trajectory(ts, out, info)


def unit_speed_wrap(field: Field, speed: Callable[[np.ndarray], float]) -> Field:
    """Divide ``field`` pointwise by ``speed(y)`` (arc-length reparametrization)."""
    def wrapped(t, y):
        s = speed(y)
        if not s > SPEED_FLOOR:
            raise DegenerateConfigurationError(f"speed {s!r} below {SPEED_FLOOR}")
        return np.asarray(field(t, y), dtype=float) / s
    wrapped.__name__ = f"unit_speed({getattr(field, '__name__', 'field')})"
    return wrapped
