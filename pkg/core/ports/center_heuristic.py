"""
Center heuristic port interface for the Point Pattern Rate-Distortion Toolkit.
"""

from abc import ABC, abstractmethod
from typing import Optional, Sequence

import numpy as np

from core.entities.assignment import CenterResult
from core.entities.patterns import DistortionSpec, PointPattern


class CenterHeuristicPort(ABC):
    """Port interface for computing the center point pattern of an LBG cell."""

    @abstractmethod
    def compute_center(
        self,
        cell: Sequence[PointPattern],
        distortion: DistortionSpec,
        rng: Optional[np.random.Generator] = None,
    ) -> CenterResult:
        """Center of a cell of equal-cardinality patterns.

        Under USOSPA the pairing costs are capped at c^2.
        """
        pass

    @abstractmethod
    def get_heuristic_type(self) -> str:
        """Get the name of the heuristic."""
        pass

    @abstractmethod
    def expected_solves(self, cell_size: int) -> int:
        """Number of assignment problems solved for a cell of the given size."""
        pass
