"""
Assignment and clique entities shared by the distortion kernels and the
center heuristics.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from core.entities.patterns import PointPattern


@dataclass(frozen=True)
class Assignment:
    """An optimal row-to-column matching of a square cost matrix."""

    permutation: Tuple[int, ...]
    total_cost: float

    @property
    def size(self) -> int:
        return len(self.permutation)

    def is_bijection(self) -> bool:
        return sorted(self.permutation) == list(range(self.size))


@dataclass(frozen=True)
class CliqueAssignment:
    """Per-pattern permutations and the cliques they induce.

    ``permutations[r][i]`` is the index of the point of pattern r that joins
    clique i. ``aligned`` stacks those points as an array of shape
    (patterns, k, d) so ``aligned[:, i, :]`` is clique i.
    """

    permutations: Tuple[Tuple[int, ...], ...]
    aligned: np.ndarray

    @classmethod
    def from_permutations(
        cls, patterns: List[PointPattern], permutations: List[Tuple[int, ...]]
    ) -> "CliqueAssignment":
        aligned = np.stack(
            [pattern.points[list(permutation)] for pattern, permutation in zip(patterns, permutations)]
        )
        aligned.setflags(write=False)
        return cls(permutations=tuple(tuple(p) for p in permutations), aligned=aligned)

    @property
    def clique_count(self) -> int:
        return int(self.aligned.shape[1])

    def clique(self, index: int) -> np.ndarray:
        return self.aligned[:, index, :]

    def means(self) -> np.ndarray:
        return self.aligned.mean(axis=0)

    def sum_cost(self) -> float:
        """Sum over cliques of all ordered pairwise squared distances.

        Uses the identity sum_{x,x'} |x-x'|^2 = 2 n sum_x |x - mean|^2.
        """
        members = self.aligned.shape[0]
        deviations = self.aligned - self.means()[None, :, :]
        return float(2.0 * members * np.sum(deviations * deviations))


@dataclass(frozen=True)
class CenterResult:
    """A (possibly approximate) center point pattern of a cell."""

    center: PointPattern
    cliques: CliqueAssignment
    assignment_solves: int
    heuristic: str
    details: Dict[str, Any] = field(default_factory=dict)
