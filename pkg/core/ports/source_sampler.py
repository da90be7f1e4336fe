"""
Source sampler port interface for the Point Pattern Rate-Distortion Toolkit.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List

import numpy as np

from core.entities.patterns import PointPattern


class SourceSamplerPort(ABC):
    """Port interface for drawing realizations of a point process."""

    @abstractmethod
    def sample(self, rng: np.random.Generator) -> PointPattern:
        """Draw one realization."""
        pass

    def sample_many(self, count: int, rng: np.random.Generator) -> List[PointPattern]:
        """Draw ``count`` realizations in order from the same generator."""
        return [self.sample(rng) for _ in range(count)]

    @abstractmethod
    def get_sampler_type(self) -> str:
        """Get the type of sampler."""
        pass

    @abstractmethod
    def get_dimension(self) -> int:
        """Dimension of the sampled points."""
        pass

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        """Source parameters, echoed into results."""
        pass
