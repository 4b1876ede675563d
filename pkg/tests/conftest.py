import math

import numpy as np
import pytest

from tricycle import linkage as lk
from tricycle.curves import inflectional_ic
from tricycle.simulate import simulate_geodesic

EQUAL = lk.Params(1.0, 1.0)
UNEQUAL = lk.Params(1.0, 2.0)


def random_unit_state(rng, P, min_gap=0.1):
    """Random phase-space point on H = 1/2 away from the collinear locus."""
    while True:
        y = rng.normal(size=8)
        y[2:4] = rng.uniform(-math.pi, math.pi, 2)
        if lk.angle_distance(y[2], y[3]) > min_gap:
            return lk.scale_to_unit_energy(lk.PhaseState(*y), P)


UNEQUAL_START = lk.PhaseState(0.0, 0.0, 0.3, 2.0, 0.2, -0.1, 0.4, 0.3)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20261018)


@pytest.fixture(scope="session")
def elastica_run():
    return simulate_geodesic(inflectional_ic(0.707), EQUAL, 20.0)


@pytest.fixture(scope="session")
def unequal_run():
    return simulate_geodesic(lk.scale_to_unit_energy(UNEQUAL_START, UNEQUAL), UNEQUAL, 20.0)
