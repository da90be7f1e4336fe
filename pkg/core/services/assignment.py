"""
Minimum-cost assignment kernel.

All pattern distortions and hub alignments reduce to one square linear
assignment problem, solved with scipy's Jonker-Volgenant implementation.
"""

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, List

import numpy as np
from scipy.optimize import linear_sum_assignment

from core.entities.assignment import Assignment
from core.exceptions import InputError


@dataclass
class SolveCounter:
    """Number of assignment problems solved while the counter was active."""

    count: int = 0


_active_counters: List[SolveCounter] = []


@contextmanager
def count_solves() -> Iterator[SolveCounter]:
    """Count every solve_assignment call made inside the block (single-threaded use)."""
    counter = SolveCounter()
    _active_counters.append(counter)
    try:
        yield counter
    finally:
        _active_counters.remove(counter)


def validate_cost_matrix(cost) -> np.ndarray:
    matrix = np.asarray(cost, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InputError(f"cost matrix must be square, got shape {matrix.shape}")
    if matrix.shape[0] < 1:
        raise InputError("cost matrix must have at least one row")
    if not np.all(np.isfinite(matrix)):
        raise InputError("cost matrix contains non-finite entries")
    return matrix


def solve_assignment(cost) -> Assignment:
    """Return a permutation minimizing sum_i cost[i][perm[i]]."""
    matrix = validate_cost_matrix(cost)
    rows, cols = linear_sum_assignment(matrix)
    for counter in _active_counters:
        counter.count += 1
    total = float(matrix[rows, cols].sum())
    return Assignment(permutation=tuple(int(col) for col in cols), total_cost=total)
