import numpy as np
import pytest

from divuq import GaussianVectorField, UniformGrid2


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_model(grid: UniformGrid2, rng, sigma_range=(0.05, 0.6)) -> GaussianVectorField:
    n = grid.n_vertices
    return GaussianVectorField(
        grid,
        rng.normal(0.0, 2.0, n),
        rng.normal(0.0, 2.0, n),
        rng.uniform(*sigma_range, n),
        rng.uniform(*sigma_range, n),
    )
