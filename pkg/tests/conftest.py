import numpy as np
import pytest

from meandiv.densities import DensityPair, counting_density


def random_pair(rng, n=12, spread=1.0):
    """Aligned pair of positive densities with moderate dynamic range."""
    support = tuple(str(i) for i in range(n))
    p = counting_density(np.exp(rng.uniform(-spread, spread, n)), support)
    q = counting_density(np.exp(rng.uniform(-spread, spread, n)), support)
    return DensityPair(p, q)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
