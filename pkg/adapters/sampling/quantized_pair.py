"""
Joint (X, Y) draws from the grid quantizer construction.

Y takes k i.i.d. uniform grid centers ((2j1-1)/(2N), (2j2-1)/(2N)); each x is
uniform on the cell of its y. X is then k i.i.d. uniform points on [0,1)^2.
"""

from typing import Tuple

import numpy as np

from adapters.sampling.poisson_sampler import sample_poisson_count
from core.entities.patterns import PointPattern
from core.exceptions import ConfigError


def grid_centers(n_grid: int) -> np.ndarray:
    """All N^2 cell centers, row-major in (j1, j2)."""
    if n_grid < 1:
        raise ConfigError(f"grid size must be positive, got {n_grid}")
    axis = (2.0 * np.arange(n_grid) + 1.0) / (2.0 * n_grid)
    first, second = np.meshgrid(axis, axis, indexing="ij")
    return np.column_stack([first.ravel(), second.ravel()])


def sample_quantized_pair(n_grid: int, k: int, rng: np.random.Generator) -> Tuple[PointPattern, PointPattern]:
    """Draw (X, Y) with |X| = |Y| = k."""
    if n_grid < 1:
        raise ConfigError(f"grid size must be positive, got {n_grid}")
    if k < 0:
        raise ConfigError(f"cardinality must be nonnegative, got {k}")
    cells = rng.integers(0, n_grid, size=(k, 2))
    centers = (2.0 * cells + 1.0) / (2.0 * n_grid)
    points = (cells + rng.random((k, 2))) / n_grid
    return PointPattern(points=points, dim=2), PointPattern(points=centers, dim=2)


def sample_quantized_pair_poisson(
    n_grid: int, mean_cardinality: float, rng: np.random.Generator
) -> Tuple[PointPattern, PointPattern]:
    """Same construction with k ~ Poisson(lambda)."""
    k = sample_poisson_count(mean_cardinality, rng)
    return sample_quantized_pair(n_grid, k, rng)
