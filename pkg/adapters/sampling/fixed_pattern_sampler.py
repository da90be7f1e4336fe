"""
Degenerate sampler that always returns the same pattern.
"""

from typing import Any, Dict

import numpy as np

from core.entities.patterns import PointPattern
from core.entities.sources import FixedPatternSource
from core.ports.source_sampler import SourceSamplerPort


class FixedPatternSamplerAdapter(SourceSamplerPort):
    """Point mass at one pattern; the rng is accepted and left untouched."""

    def __init__(self, pattern: PointPattern):
        self.source = FixedPatternSource(pattern=pattern)

    def sample(self, rng: np.random.Generator) -> PointPattern:
        return self.source.pattern

    def get_sampler_type(self) -> str:
        return "fixed"

    def get_dimension(self) -> int:
        return self.source.dim

    def describe(self) -> Dict[str, Any]:
        return self.source.describe()
