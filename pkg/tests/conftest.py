import numpy as np
import pytest

from ghzsep import states


@pytest.fixture
def rng():
    return np.random.default_rng(20240913)


def random_state(rng) -> states.GhzProbabilities:
    p = rng.exponential(1.0, 16)
    return states.GhzProbabilities(p / p.sum())


def random_symmetric_state(rng) -> states.GhzProbabilities:
    w = rng.exponential(1.0, 6)
    w = w / (w[0] + w[5] + 4.0 * (w[1] + w[4]) + 3.0 * (w[2] + w[3]))
    return states.make_symmetric(states.SymmetricParams(*w))


def random_hs_state(rng, p16=None) -> states.GhzProbabilities:
    if p16 is None:
        p16 = rng.uniform(0.0, 0.45)
    u = 1.0 - 2.0 * p16
    v = rng.uniform(0.0, 1.0)
    alpha = rng.uniform(max(6.0, 14.0 * u / (1.0 + u)), 14.0)
    return states.make_highly_symmetric(
        states.HighlySymmetricParams.from_point(p16, v, alpha))
