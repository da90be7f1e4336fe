"""
Multi-hub center heuristic: the single-hub heuristic with every pattern of
the cell as hub, keeping the best resulting center.

Candidates are ranked by the cost of their own alignment, so the heuristic
solves exactly the n(n-1) assignments of its n single-hub runs.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from adapters.centers.alignment import aligned_cost, check_cell, cost_cap
from adapters.centers.single_hub import center_single_hub
from core.entities.assignment import CenterResult
from core.entities.patterns import DistortionSpec, PointPattern
from core.ports.center_heuristic import CenterHeuristicPort

logger = logging.getLogger(__name__)


def center_multi_hub(cell: Sequence[PointPattern], distortion: Optional[DistortionSpec] = None) -> CenterResult:
    """Single-hub center with the lowest aligned cost over all hubs; ties go to the lowest hub index."""
    cell = list(cell)
    check_cell(cell)
    cap = cost_cap(distortion) if distortion is not None else None

    best: Optional[CenterResult] = None
    best_value = np.inf
    solves = 0
    for hub_index in range(len(cell)):
        candidate = center_single_hub(cell, hub_index, distortion)
        solves += candidate.assignment_solves
        value = aligned_cost(candidate.cliques, candidate.center.points, cap)
        if value < best_value:
            best, best_value = candidate, value

    assert best is not None
    logger.debug("multi-hub picked hub %d of %d (aligned cost %.6g)", best.details["hub_index"], len(cell), best_value)
    return CenterResult(
        center=best.center,
        cliques=best.cliques,
        assignment_solves=solves,
        heuristic="multi_hub",
        details={"hub_index": best.details["hub_index"], "aligned_cost": float(best_value)},
    )


class MultiHubCenterAdapter(CenterHeuristicPort):
    """Multi-hub heuristic."""

    def compute_center(
        self,
        cell: Sequence[PointPattern],
        distortion: DistortionSpec,
        rng: Optional[np.random.Generator] = None,
    ) -> CenterResult:
        return center_multi_hub(cell, distortion)

    def get_heuristic_type(self) -> str:
        return "multi_hub"

    def expected_solves(self, cell_size: int) -> int:
        return cell_size * (cell_size - 1)
