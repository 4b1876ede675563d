import math

import numpy as np
import pytest

from tricycle.ode import IntegrationError, IntegratorSpec, MaxStepsExceeded, integrate, unit_speed_wrap


def test_exponential_accuracy_with_landing():
    spec = IntegratorSpec(rtol=1e-13, atol=1e-13, land_on_samples=True, max_step=0.1)
    tr = integrate(lambda t, y: y, [1.0], (0.0, 1.0), spec, 0.1)
    assert abs(tr.states[-1, 0] - math.e) < 1e-12
    assert np.allclose(tr.times, np.linspace(0, 1, 11), atol=1e-15)


def test_harmonic_oscillator_energy():
    tr = integrate(lambda t, y: np.array([y[1], -y[0]]), [1.0, 0.0], (0.0, 50.0), None, 0.5)
    assert np.max(np.abs(tr.states[:, 0] - np.cos(tr.times))) < 1e-8


def test_rk4_fourth_order_convergence():
    errs = []
    for h in (0.1, 0.05):
        tr = integrate(lambda t, y: -y, [1.0], (0.0, 1.0), IntegratorSpec("rk4", step=h), h)
        errs.append(abs(tr.states[-1, 0] - math.exp(-1)))
    assert 14 < errs[0] / errs[1] < 18


def test_dense_output_between_steps():
    spec = IntegratorSpec(rtol=1e-12, atol=1e-12)
    tr = integrate(lambda t, y: np.array([math.cos(t)]), [0.0], (0.0, 3.0), spec, 0.01)
    assert tr.meta["steps"] < len(tr.times) - 1  # samples really come from interpolation
    assert np.max(np.abs(tr.states[:, 0] - np.sin(tr.times))) < 1e-10


def test_errors():
    with pytest.raises(ValueError):
        IntegratorSpec("rk4")
    with pytest.raises(ValueError):
        IntegratorSpec(rtol=0)
    with pytest.raises(ValueError):
        integrate(lambda t, y: y, [1.0], (1.0, 0.0))
    with pytest.raises(MaxStepsExceeded):
        integrate(lambda t, y: y, [1.0], (0.0, 10.0), IntegratorSpec(max_steps=3))
    with pytest.raises(IntegrationError):
        integrate(lambda t, y: y * y, [1.0], (0.0, 2.0))


def test_unit_speed_wrap():
    f = unit_speed_wrap(lambda t, y: np.array([3.0, 4.0]), lambda y: 5.0)
    assert np.allclose(f(0, np.zeros(2)), [0.6, 0.8])
