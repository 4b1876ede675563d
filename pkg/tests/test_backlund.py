import math

import numpy as np
import pytest

from tricycle.backlund import (SignResolutionError, backlund_transform, beta_field,
                               euler_soliton_curvature, reconstruct_rear_track,
                               soliton_constants_from_elastica, steering_angle)
from tricycle.curves import NotUnitSpeedError, PlanarCurve


def line(n=2001, dt=0.01):
    t = np.arange(n) * dt
    return PlanarCurve(np.column_stack([t, np.zeros_like(t)]), dt)


def test_constants_formula():
    assert soliton_constants_from_elastica(-0.5, 0.25, 2.0) == pytest.approx((0.375, 1.5))
    with pytest.raises(ValueError):
        soliton_constants_from_elastica(0, 0, 0)


def test_beta_field_validation():
    with pytest.raises(ValueError):
        beta_field(lambda t: 0.0, 1.0, sign=2)


def test_line_gives_euler_soliton():
    c = line()
    z = np.zeros(len(c))
    res = backlund_transform(c, 2.0, 0.01, kappa=z, heading=z)
    assert res.sign == 1
    # differenced speed carries h^4 truncation at the curvature peak
    assert res.speed_deviation < 1e-7
    prof = euler_soliton_curvature(c.t, 2.0, 0.01)
    assert np.max(np.abs(np.abs(res.kappa_closed) - prof)) < 1e-7


def test_circle_maps_to_circle():
    r = 2.0
    t = np.arange(2001) * 0.01
    c = PlanarCurve(np.column_stack([r * np.sin(t / r), r * (1 - np.cos(t / r))]), 0.01)
    L = 2.0
    beta0 = math.asin(L / (2 * r))  # fixed point of the bicycle ODE
    res = backlund_transform(c, L, beta0, kappa=np.full_like(t, 1 / r), heading=t / r)
    assert np.max(np.abs(res.beta - beta0)) < 1e-12
    assert np.max(np.abs(np.abs(res.kappa_closed) - 1 / r)) < 1e-12


def test_forced_wrong_sign_raises():
    c = line(501)
    z = np.zeros(len(c))
    with pytest.raises(NotUnitSpeedError):
        backlund_transform(c, 2.0, 0.3, sign=-1, kappa=z, heading=z)


def test_non_unit_input_rejected():
    t = np.arange(200) * 0.01
    c = PlanarCurve(np.column_stack([2 * t, 0 * t]), 0.01)
    with pytest.raises(NotUnitSpeedError):
        backlund_transform(c, 1.0, 0.2, kappa=0 * t, heading=0 * t)


def test_steering_angle():
    front = np.zeros((1, 2))
    rear = np.array([[0.0, 1.0]])
    assert steering_angle(front, np.zeros(1), rear)[0] == pytest.approx(math.pi / 2)


def test_reconstructs_rear_tracks(unequal_run):
    tr = unequal_run.tracks()
    for w in (1, 2):
        pts = reconstruct_rear_track(unequal_run, w)
        assert np.max(np.linalg.norm(pts - getattr(tr, f"y{w}"), axis=1)) < 1e-8


def test_elastica_transform_is_soliton(elastica_run):
    from tricycle import linkage as lk
    A, B = lk.elastica_constants(lk.PhaseState.from_array(elastica_run.states[0]), lk.Params())
    res = backlund_transform(elastica_run.curve("x"), 2.0, 0.3, kappa=elastica_run.kappa,
                             heading=elastica_run.headings())
    assert (res.sign, res.orientation) == (1, -1)
    assert res.soliton_residual(A, B).sup < 1e-4
