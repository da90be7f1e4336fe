"""
Fixed-cardinality Gaussian sampler adapter.
"""

from typing import Any, Dict

import numpy as np

from core.entities.patterns import PointPattern, pattern_from_vector
from core.entities.sources import GaussianFixedSource
from core.ports.source_sampler import SourceSamplerPort


def sample_gaussian_fixed(source: GaussianFixedSource, rng: np.random.Generator) -> PointPattern:
    """k i.i.d. standard-normal points in R^d: a standard-normal kd-vector with its block order forgotten."""
    return pattern_from_vector(rng.standard_normal(source.k * source.d), source.k, source.d)


class GaussianFixedSamplerAdapter(SourceSamplerPort):
    """Sampler for exactly k standard-normal points."""

    def __init__(self, k: int, d: int):
        self.source = GaussianFixedSource(k=k, d=d)

    def sample(self, rng: np.random.Generator) -> PointPattern:
        return sample_gaussian_fixed(self.source, rng)

    def get_sampler_type(self) -> str:
        return "gaussian"

    def get_dimension(self) -> int:
        return self.source.d

    def describe(self) -> Dict[str, Any]:
        return self.source.describe()
