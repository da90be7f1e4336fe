"""
Single-hub center heuristic.

Every pattern is optimally assigned to one hub pattern; the cliques are the
points paired with each hub point and the center is the clique means.
"""

from typing import Optional, Sequence

import numpy as np

from adapters.centers.alignment import align_to, check_cell, cost_cap, identity
from core.entities.assignment import CenterResult, CliqueAssignment
from core.entities.patterns import DistortionSpec, PointPattern
from core.exceptions import ConfigError
from core.ports.center_heuristic import CenterHeuristicPort


def center_single_hub(
    cell: Sequence[PointPattern], hub_index: int = 0, distortion: Optional[DistortionSpec] = None
) -> CenterResult:
    """Clique means after aligning every pattern to ``cell[hub_index]``."""
    cell = list(cell)
    k, d = check_cell(cell)
    if not 0 <= hub_index < len(cell):
        raise ConfigError(f"hub index {hub_index} outside a cell of {len(cell)} patterns")
    cap = cost_cap(distortion) if distortion is not None else None

    hub = cell[hub_index].points
    permutations = [
        identity(k) if index == hub_index else align_to(hub, pattern, cap)
        for index, pattern in enumerate(cell)
    ]
    cliques = CliqueAssignment.from_permutations(cell, permutations)
    return CenterResult(
        center=PointPattern(points=cliques.means(), dim=d),
        cliques=cliques,
        assignment_solves=len(cell) - 1,
        heuristic="single_hub",
        details={"hub_index": hub_index},
    )


class SingleHubCenterAdapter(CenterHeuristicPort):
    """Single-hub heuristic with a fixed hub position."""

    def __init__(self, hub_index: int = 0):
        self.hub_index = hub_index

    def compute_center(
        self,
        cell: Sequence[PointPattern],
        distortion: DistortionSpec,
        rng: Optional[np.random.Generator] = None,
    ) -> CenterResult:
        return center_single_hub(cell, self.hub_index, distortion)

    def get_heuristic_type(self) -> str:
        return "single_hub"

    def expected_solves(self, cell_size: int) -> int:
        return max(cell_size - 1, 0)
