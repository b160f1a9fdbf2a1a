"""Shared fixtures: cached model densities and warm finite-difference kernels."""

import functools

import numpy as np
import pytest

import ke_lab as kl
from ke_lab.grid import gradient_values, laplacian_values

# alpha, beta in {0.5, 2}; m, p covering {-1, 0.5, 1, 2}
SCALING_SWEEP = (
    (0.5, 0.5, -1.0, 0.5),
    (0.5, 0.5, 0.5, 1.0),
    (0.5, 0.5, 2.0, -1.0),
    (0.5, 2.0, 1.0, 2.0),
    (0.5, 2.0, -1.0, -1.0),
    (0.5, 2.0, 0.5, 0.5),
    (2.0, 0.5, 2.0, 1.0),
    (2.0, 0.5, 1.0, 0.5),
    (2.0, 0.5, -1.0, 2.0),
    (2.0, 2.0, 0.5, 2.0),
    (2.0, 2.0, 2.0, 0.5),
    (2.0, 2.0, 1.0, -1.0),
)


@functools.lru_cache(maxsize=None)
def _density(family: str, electrons: float, width: float, points: int, dim: int):
    model = kl.DensityModel(family, electrons, width)
    grid = kl.default_grid(model, points, dim=dim)
    return kl.sample_density(model, grid)


@pytest.fixture(scope="session")
def density():
    """Factory for cached model densities; treat the results as read-only."""
    return _density


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger derivative-kernel compilation before any timed assertion."""
    for dim, boundary in ((1, kl.OPEN), (3, kl.OPEN), (3, kl.PERIODIC)):
        grid = kl.Grid(dim, 8, 0.5, boundary)
        values = np.ones(grid.shape)
        gradient_values(grid, values)
        laplacian_values(grid, values)
        laplacian_values(grid, values * (1.0 + 0.0j))
