"""
Modified single-hub center heuristic.

Patterns are visited in order; each one is optimally assigned to the running
center, which is then updated as the running mean of its cliques:
    x_i <- ((r - 1) x_i + x_tau(i)) / r
"""

from typing import Optional, Sequence

import numpy as np

from adapters.centers.alignment import align_to, check_cell, cost_cap, identity
from core.entities.assignment import CenterResult, CliqueAssignment
from core.entities.patterns import DistortionSpec, PointPattern
from core.exceptions import ConfigError
from core.ports.center_heuristic import CenterHeuristicPort


def center_modified_single_hub(
    cell: Sequence[PointPattern],
    order: Optional[Sequence[int]] = None,
    distortion: Optional[DistortionSpec] = None,
) -> CenterResult:
    """Running-mean center after visiting the cell in ``order``."""
    cell = list(cell)
    k, d = check_cell(cell)
    order = list(range(len(cell))) if order is None else [int(index) for index in order]
    if sorted(order) != list(range(len(cell))):
        raise ConfigError(f"order must be a permutation of range({len(cell)})")
    cap = cost_cap(distortion) if distortion is not None else None

    permutations = [identity(k)] * len(cell)
    center = np.array(cell[order[0]].points, dtype=np.float64)
    for r, index in enumerate(order[1:], start=2):
        pattern = cell[index]
        permutation = align_to(center, pattern, cap)
        permutations[index] = permutation
        center = ((r - 1) * center + pattern.points[list(permutation)]) / r

    cliques = CliqueAssignment.from_permutations(cell, permutations)
    return CenterResult(
        center=PointPattern(points=center, dim=d),
        cliques=cliques,
        assignment_solves=len(cell) - 1,
        heuristic="modified_single_hub",
        details={"order": order},
    )


class ModifiedSingleHubCenterAdapter(CenterHeuristicPort):
    """Modified single-hub heuristic; the visiting order is shuffled by the training rng."""

    def __init__(self, shuffle: bool = True):
        self.shuffle = shuffle

    def compute_center(
        self,
        cell: Sequence[PointPattern],
        distortion: DistortionSpec,
        rng: Optional[np.random.Generator] = None,
    ) -> CenterResult:
        order = None
        if self.shuffle and rng is not None:
            order = [int(index) for index in rng.permutation(len(cell))]
        return center_modified_single_hub(cell, order, distortion)

    def get_heuristic_type(self) -> str:
        return "modified_single_hub"

    def expected_solves(self, cell_size: int) -> int:
        return max(cell_size - 1, 0)
