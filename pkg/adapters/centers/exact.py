"""
Exact center point pattern by exhaustive MDAP enumeration.

The first pattern keeps the identity labelling (relabelling cliques does not
change their cost), so (k!)^(|cell|-1) permutation collections are scored.
The winner minimizes the summed squared deviations from the clique means,
which is the pairwise clique cost up to the factor 2|cell|.
"""

import math
from typing import Optional, Sequence

import numpy as np

from adapters.centers.alignment import check_cell, identity
from core.entities.assignment import CenterResult, CliqueAssignment
from core.entities.patterns import DistortionSpec, PointPattern
from core.exceptions import SizeError
from core.ports.center_heuristic import CenterHeuristicPort
from core.services.distortion import permutation_table

MAX_COLLECTIONS = 1_000_000
_BATCH = 20_000


def collection_count(k: int, cell_size: int) -> int:
    return math.factorial(k) ** max(cell_size - 1, 0)


def center_exact(
    cell: Sequence[PointPattern],
    distortion: Optional[DistortionSpec] = None,
    max_collections: int = MAX_COLLECTIONS,
) -> CenterResult:
    """Clique means under the cost-minimizing permutation collection.

    ``distortion`` is accepted for interface symmetry; the clique cost is
    always the uncapped squared error.
    """
    cell = list(cell)
    k, d = check_cell(cell)
    count = collection_count(k, len(cell))
    if count > max_collections:
        raise SizeError(
            f"exact center needs {count} permutation collections (limit {max_collections}); "
            "use single_hub, multi_hub or modified_single_hub instead"
        )

    if len(cell) == 1 or k <= 1:
        permutations = [identity(k)] * len(cell)
    else:
        perms = permutation_table(k)
        # candidates[r][p] is pattern r + 1 relabelled by permutation p
        candidates = np.stack([pattern.points[perms] for pattern in cell[1:]])
        base = cell[0].points
        shape = (len(perms),) * (len(cell) - 1)
        best_cost, best_flat = np.inf, 0
        for start in range(0, count, _BATCH):
            flat = np.arange(start, min(start + _BATCH, count))
            choice = np.unravel_index(flat, shape)
            aligned = np.concatenate(
                [np.broadcast_to(base, (len(flat), 1, k, d))]
                + [candidates[r][choice[r]][:, None, :, :] for r in range(len(cell) - 1)],
                axis=1,
            )
            deviations = aligned - aligned.mean(axis=1, keepdims=True)
            costs = np.einsum("nrkd,nrkd->n", deviations, deviations)
            position = int(np.argmin(costs))
            if costs[position] < best_cost:
                best_cost, best_flat = float(costs[position]), int(flat[position])
        choice = np.unravel_index(best_flat, shape)
        permutations = [identity(k)] + [tuple(int(i) for i in perms[choice[r]]) for r in range(len(cell) - 1)]

    cliques = CliqueAssignment.from_permutations(cell, permutations)
    return CenterResult(
        center=PointPattern(points=cliques.means(), dim=d),
        cliques=cliques,
        assignment_solves=0,
        heuristic="exact",
        details={"collections": count, "clique_cost": cliques.sum_cost()},
    )


class ExactCenterAdapter(CenterHeuristicPort):
    """Exhaustive center; only feasible for tiny cells."""

    def __init__(self, max_collections: int = MAX_COLLECTIONS):
        self.max_collections = max_collections

    def compute_center(
        self,
        cell: Sequence[PointPattern],
        distortion: DistortionSpec,
        rng: Optional[np.random.Generator] = None,
    ) -> CenterResult:
        return center_exact(cell, distortion, self.max_collections)

    def get_heuristic_type(self) -> str:
        return "exact"

    def expected_solves(self, cell_size: int) -> int:
        return 0
