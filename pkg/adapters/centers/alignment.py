"""
Helpers shared by the center heuristics.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from core.entities.assignment import CliqueAssignment
from core.entities.patterns import DistortionSpec, PointPattern
from core.exceptions import ApplicabilityError, InputError
from core.services.assignment import solve_assignment
from core.services.distortion import squared_distances


def check_cell(cell: Sequence[PointPattern]) -> Tuple[int, int]:
    """(k, d) of a nonempty cell of equal-cardinality patterns."""
    if len(cell) == 0:
        raise InputError("a cell needs at least one pattern")
    sizes = {pattern.cardinality for pattern in cell}
    if len(sizes) != 1:
        raise ApplicabilityError(f"center heuristics need equal cardinalities, got {sorted(sizes)}")
    dims = {pattern.dim for pattern in cell}
    if len(dims) != 1:
        raise InputError(f"cell has mixed dimensions {sorted(dims)}")
    return sizes.pop(), dims.pop()


def cost_cap(distortion: DistortionSpec) -> Optional[float]:
    return distortion.cutoff ** 2 if distortion.is_usospa else None


def align_to(reference: np.ndarray, pattern: PointPattern, cap: Optional[float]) -> Tuple[int, ...]:
    """Permutation tau with pattern.points[tau[i]] paired to reference[i]."""
    if pattern.cardinality == 0:
        return ()
    costs = squared_distances(reference, pattern.points)
    if cap is not None:
        costs = np.minimum(costs, cap)
    return solve_assignment(costs).permutation


def identity(k: int) -> Tuple[int, ...]:
    return tuple(range(k))


def aligned_cost(cliques: CliqueAssignment, center: np.ndarray, cap: Optional[float]) -> float:
    """Mean over patterns of the (capped) clique-wise squared error to ``center``.

    Upper-bounds the true average distortion to ``center`` without solving
    any further assignment.
    """
    deviations = cliques.aligned - center[None, :, :]
    costs = np.sum(deviations * deviations, axis=-1)
    if cap is not None:
        costs = np.minimum(costs, cap)
    return float(costs.sum(axis=1).mean())
