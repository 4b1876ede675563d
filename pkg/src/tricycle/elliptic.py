"""Jacobi elliptic ``cn`` by the descending Landen (AGM) transformation."""

from __future__ import annotations

import math

import numpy as np

AGM_ITERATIONS = 12


def _cn_scalar(t: float, k: float) -> float:
    if k == 0.0:
        return math.cos(t)
    if k == 1.0:
        return 1.0 / math.cosh(t)
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    a, b, c = [1.0], [kp], [k]
    for _ in range(AGM_ITERATIONS):
        if abs(c[-1]) < 1e-16 * a[-1]:
            break
        a.append(0.5 * (a[-1] + b[-1]))
        b.append(math.sqrt(a[-2] * b[-1]))
        c.append(0.5 * (a[-2] - b[-2]))
    n = len(a) - 1
    # cn has real period 4K with K = pi / (2 * agm(1, k')); reducing first keeps
    # the amplitude small for moduli near one
    quarter = math.pi / (2.0 * a[n])
    t = math.remainder(t, 4.0 * quarter)
    phi = (2.0 ** n) * a[n] * t
    for i in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(c[i] / a[i] * math.sin(phi)))
    return math.cos(phi)


def jacobi_cn(t, k: float):
    """Jacobi ``cn(t, k)`` with modulus ``k`` in [0, 1] (parameter ``m = k**2``).

    Accepts scalars or arrays for ``t``.
    """
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"modulus must lie in [0, 1], got {k}")
    if np.ndim(t) == 0:
        return _cn_scalar(float(t), float(k))
    arr = np.asarray(t, dtype=float)
    return np.vectorize(lambda v: _cn_scalar(v, k), otypes=[float])(arr)
