import numpy as np
import pytest

from bellspin.clifford import Direction


def random_directions(rng, n):
    return [Direction.from_vector(v) for v in rng.normal(size=(n, 3))]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
