import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from liehy.rootsys import enumerate_dominant_weights, load_group
from liehy.spectral import character_function
from liehy.torus import CentralFunction, make_grid

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SUPPORTED = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "T1", "T2"]
RANK2 = ["A2", "B2", "G2"]


def trig_poly(grid, cutoff, rng, terms=6):
    """Random complex combination of characters inside the cutoff ball."""
    weights = enumerate_dominant_weights(grid.group.rs, cutoff)
    pick = rng.choice(len(weights), size=min(terms, len(weights)), replace=False)
    vals = np.zeros(grid.shape, dtype=complex)
    coef = {}
    for i in sorted(pick):
        c = complex(rng.normal(), rng.normal())
        coef[tuple(weights[i])] = c
        vals += c * character_function(grid, weights[i]).values
    return CentralFunction(grid, vals), coef


@pytest.fixture(scope="session")
def a1_grid():
    return make_grid(load_group("A1"), 256)


@pytest.fixture(scope="session")
def a2_grid():
    return make_grid(load_group("A2"), 64)
