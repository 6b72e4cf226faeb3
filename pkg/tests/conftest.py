import numpy as np
import pytest

from lorentz_forge.stepfun import DyadicStep2D

INF = float("inf")


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)


def random_grids(count, levels=(4, 4), seed=12345):
    """Deterministic batch of random step functions for property tests."""
    r = np.random.default_rng(seed)
    n1, n2 = levels
    return [DyadicStep2D(levels, r.random((2**n2, 2**n1)))
            for _ in range(count)]
