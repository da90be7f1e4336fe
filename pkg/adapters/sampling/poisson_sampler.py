"""
Poisson point process sampler adapter (uniform intensity on the unit square).
"""

import math
from typing import Any, Dict

import numpy as np

from core.entities.patterns import PointPattern
from core.entities.sources import PoissonUnitSquareSource
from core.exceptions import ConfigError
from core.ports.source_sampler import SourceSamplerPort

# Above this mean the CDF walk gets long; numpy's rejection sampler takes over.
INVERSION_MAX_MEAN = 30.0


def sample_poisson_count(mean: float, rng: np.random.Generator) -> int:
    """Poisson(mean) draw: CDF inversion up to 30, rejection beyond."""
    if not math.isfinite(mean) or mean < 0:
        raise ConfigError(f"Poisson mean must be finite and nonnegative, got {mean}")
    if mean == 0:
        return 0
    if mean > INVERSION_MAX_MEAN:
        return int(rng.poisson(mean))

    u = rng.random()
    k = 0
    p = math.exp(-mean)
    cdf = p
    while u > cdf:
        k += 1
        p *= mean / k
        if p == 0.0:
            # u fell in the rounding gap at the far tail
            break
        cdf += p
    return k


def sample_poisson_unit_square(source: PoissonUnitSquareSource, rng: np.random.Generator) -> PointPattern:
    """|X| ~ Poisson(lambda), then |X| i.i.d. uniform points on [0,1)^2."""
    count = sample_poisson_count(source.mean_cardinality, rng)
    return PointPattern(points=rng.random((count, 2)), dim=2)


class PoissonUnitSquareSamplerAdapter(SourceSamplerPort):
    """Sampler for the uniform Poisson process on the unit square."""

    def __init__(self, mean_cardinality: float):
        self.source = PoissonUnitSquareSource(mean_cardinality=mean_cardinality)

    def sample(self, rng: np.random.Generator) -> PointPattern:
        return sample_poisson_unit_square(self.source, rng)

    def get_sampler_type(self) -> str:
        return "poisson"

    def get_dimension(self) -> int:
        return 2

    def describe(self) -> Dict[str, Any]:
        return self.source.describe()
