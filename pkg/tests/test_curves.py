import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tricycle.curves import (CurvatureSeries, CurveError, NotUnitSpeedError, PlanarCurve,
                             UnfittableError, derivative, elastica_residual, fd_weights,
                             fit_soliton_ab, frenet_fd, inflectional_ic, mu_classify,
                             soliton2_residual)
from tricycle.elliptic import jacobi_cn


def circle(r=2.0, n=800, dt=0.01):
    t = np.arange(n) * dt
    return PlanarCurve(np.column_stack([r * np.cos(t / r), r * np.sin(t / r)]), dt)


def test_fd_weights_central_second():
    assert np.allclose(fd_weights((-1, 0, 1), 2), [1, -2, 1])


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_derivative_of_sine(order):
    h = 0.01
    t = np.arange(1000) * h
    exact = [np.cos(t), -np.sin(t), -np.cos(t), np.sin(t)][order - 1]
    assert np.max(np.abs(derivative(np.sin(t), h, order) - exact)) < 10 ** (-9 + 2 * order)


def test_derivative_too_short():
    with pytest.raises(CurveError):
        derivative(np.zeros(3), 0.1, 2)


def test_frenet_circle():
    T, N, k = frenet_fd(circle(2.0))
    assert np.allclose(k, 0.5, atol=1e-9)
    assert np.allclose(np.einsum("ij,ij->i", T, N), 0, atol=1e-12)


def test_frenet_rejects_slow_curve():
    c = PlanarCurve(np.column_stack([0.5 * np.arange(50) * 0.1, np.zeros(50)]), 0.1)
    with pytest.raises(NotUnitSpeedError):
        frenet_fd(c)


def test_bad_points_shape():
    with pytest.raises(CurveError):
        PlanarCurve(np.zeros((4, 3)), 0.1)


def test_elastica_residual_of_cn():
    k = 0.707
    t = np.arange(2001) * 0.01
    kap = 2 * k * jacobi_cn(t, k)
    cs = CurvatureSeries.from_samples(t, kap, 2)
    res = elastica_residual(cs, 1 - 2 * k * k, trim=5)
    assert res.sup < 1e-8
    assert res.B == pytest.approx(-4 * k * k * (1 - k * k), abs=1e-8)


def test_fit_recovers_elastica_as_soliton():
    # an elastica with constant A solves the 2-soliton equation too (E4 is a combination of E0, E2)
    k = 0.5
    t = np.arange(3001) * 0.01
    cs = CurvatureSeries.from_samples(t, 2 * k * jacobi_cn(t, k), 4)
    fit = fit_soliton_ab(cs, trim=10)
    assert soliton2_residual(cs, fit.a, fit.b, 10).sup < 1e-5


def test_fit_rejects_constant_curvature():
    t = np.arange(100) * 0.01
    with pytest.raises(UnfittableError):
        fit_soliton_ab(CurvatureSeries.from_samples(t, np.full_like(t, 0.3), 4))


def test_mu_classify():
    assert mu_classify(1.0, -0.5)[1] == "inflectional"
    assert mu_classify(1.0, 0.5)[1] == "non-inflectional"
    with pytest.raises(ValueError):
        mu_classify(0.0, 1.0)


def test_inflectional_ic_domain():
    with pytest.raises(ValueError):
        inflectional_ic(1.2)
    with pytest.raises(ValueError):
        inflectional_ic(0.8)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.3, 5.0))
def test_circle_curvature_property(r):
    _, _, k = frenet_fd(circle(r, n=200, dt=0.01))
    # one-sided end stencils: error ~ h^4 k^5
    assert np.max(np.abs(k - 1 / r)) < 1e-7 * max(1.0, r ** -5)


def test_higher_accuracy_stencil_on_smooth_data():
    _, _, k4 = frenet_fd(circle(0.5, n=200))
    _, _, k6 = frenet_fd(circle(0.5, n=200), accuracy=6)
    assert np.max(np.abs(k6 - 2)) < np.max(np.abs(k4 - 2)) / 10
