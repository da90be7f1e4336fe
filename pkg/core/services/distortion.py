"""
Distortion functions between point patterns.

rho2 is the permutation-minimized squared error between equal-cardinality
patterns. usospa is the unnormalized squared OSPA distortion with cut-off c:
unmatched points cost c^2 each and matched squared distances are capped at
c^2.
"""

import itertools
import math
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from core.entities.patterns import DistortionSpec, PointPattern
from core.exceptions import ApplicabilityError, ConfigError, InputError
from core.services.assignment import solve_assignment

# Largest cardinality for which the batched kernel enumerates permutations.
FAST_PATH_MAX_CARDINALITY = 5
_FAST_PATH_BLOCK_ELEMENTS = 4_000_000


def _check_dims(X: PointPattern, Y: PointPattern) -> None:
    if X.dim != Y.dim:
        raise InputError(f"dimension mismatch: {X.dim} vs {Y.dim}")


def _check_cutoff(cutoff: float) -> float:
    if cutoff is None or not math.isfinite(cutoff) or cutoff <= 0:
        raise ConfigError(f"cut-off must be a positive finite number, got {cutoff!r}")
    return float(cutoff)


def squared_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    diff = a[:, None, :] - b[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def cost_matrix(X: PointPattern, Y: PointPattern, cutoff: Optional[float] = None) -> np.ndarray:
    """Pairwise squared distances, optionally capped at cutoff^2."""
    _check_dims(X, Y)
    costs = squared_distances(X.points, Y.points)
    if cutoff is not None:
        costs = np.minimum(costs, _check_cutoff(cutoff) ** 2)
    return costs


def rho2(X: PointPattern, Y: PointPattern) -> float:
    """Minimum over pairings of the summed squared Euclidean distances."""
    _check_dims(X, Y)
    if X.cardinality != Y.cardinality:
        raise ApplicabilityError(
            f"rho2 needs equal cardinalities, got {X.cardinality} and {Y.cardinality}"
        )
    if X.cardinality == 0:
        return 0.0
    return solve_assignment(cost_matrix(X, Y)).total_cost


def capped_rho2(X: PointPattern, Y: PointPattern, cutoff: float) -> float:
    """Equal-cardinality USOSPA: assignment over min(|x-y|^2, c^2) costs."""
    _check_dims(X, Y)
    if X.cardinality != Y.cardinality:
        raise ApplicabilityError(
            f"capped rho2 needs equal cardinalities, got {X.cardinality} and {Y.cardinality}"
        )
    if X.cardinality == 0:
        return 0.0
    return solve_assignment(cost_matrix(X, Y, cutoff)).total_cost


def usospa(X: PointPattern, Y: PointPattern, c: float) -> float:
    """Unnormalized squared OSPA distortion.

    The smaller pattern is padded with virtual points costing c^2 against
    every real point, so a single l x l assignment yields
    (l-k) c^2 + min over injections of the capped matched costs.
    """
    _check_dims(X, Y)
    c2 = _check_cutoff(c) ** 2
    small, large = (X, Y) if X.cardinality <= Y.cardinality else (Y, X)
    k, ell = small.cardinality, large.cardinality
    if ell == 0:
        return 0.0
    if k == 0:
        return ell * c2
    padded = np.full((ell, ell), c2)
    padded[:, :k] = np.minimum(squared_distances(large.points, small.points), c2)
    return solve_assignment(padded).total_cost


def usospa_lower_bounds(X: PointPattern, Y: PointPattern, c: float) -> Tuple[float, float]:
    """Nearest-neighbour lower bounds on usospa(X, Y, c).

    Returns (bound for |X| >= |Y|, bound for |X| <= |Y|). The inner minimum
    over an empty Y counts c^2 per point of X.
    """
    _check_dims(X, Y)
    c2 = _check_cutoff(c) ** 2
    if X.cardinality == 0:
        nearest_sum = 0.0
    elif Y.cardinality == 0:
        nearest_sum = X.cardinality * c2
    else:
        capped = np.minimum(squared_distances(X.points, Y.points), c2)
        nearest_sum = float(capped.min(axis=1).sum())
    penalty = max(Y.cardinality - X.cardinality, 0) * c2
    return nearest_sum, penalty + nearest_sum


def vector_squared_error(X: PointPattern, Y: PointPattern) -> float:
    """Squared error of the stored orderings, an upper bound on rho2."""
    _check_dims(X, Y)
    if X.cardinality != Y.cardinality:
        raise ApplicabilityError("vector squared error needs equal cardinalities")
    diff = X.points - Y.points
    return float(np.sum(diff * diff))


def distortion(X: PointPattern, Y: PointPattern, spec: DistortionSpec) -> float:
    """Dispatch on the DistortionSpec kind."""
    if spec.is_usospa:
        return usospa(X, Y, spec.cutoff)
    return rho2(X, Y)


@lru_cache(maxsize=None)
def permutation_table(k: int) -> np.ndarray:
    """All k! permutations of range(k), one per row, in lexicographic order."""
    table = np.array(list(itertools.permutations(range(k))), dtype=np.intp)
    table.setflags(write=False)
    return table


def _common_cardinality(patterns: Sequence[PointPattern]) -> Optional[int]:
    sizes = {pattern.cardinality for pattern in patterns}
    return sizes.pop() if len(sizes) == 1 else None


def _enumerated_matrix(
    samples: Sequence[PointPattern], codewords: Sequence[PointPattern], k: int, cap: Optional[float]
) -> np.ndarray:
    stacked_samples = np.stack([sample.points for sample in samples])
    stacked_codewords = np.stack([codeword.points for codeword in codewords])
    perms = permutation_table(k)
    rows = np.arange(k)[None, :]
    per_sample = max(len(codewords) * len(perms) * k, 1)
    block = max(1, _FAST_PATH_BLOCK_ELEMENTS // per_sample)
    result = np.empty((len(samples), len(codewords)))
    for start in range(0, len(samples), block):
        chunk = stacked_samples[start:start + block]
        diff = chunk[:, None, :, None, :] - stacked_codewords[None, :, None, :, :]
        costs = np.einsum("nmijd,nmijd->nmij", diff, diff)
        if cap is not None:
            costs = np.minimum(costs, cap)
        totals = costs[:, :, rows, perms].sum(axis=-1)
        result[start:start + block] = totals.min(axis=-1)
    return result


def distortion_matrix(
    samples: Sequence[PointPattern], codewords: Sequence[PointPattern], spec: DistortionSpec
) -> np.ndarray:
    """Distortions between every sample (rows) and every codeword (columns)."""
    samples = list(samples)
    codewords = list(codewords)
    if not samples or not codewords:
        return np.zeros((len(samples), len(codewords)))
    k = _common_cardinality(samples + codewords)
    if k is not None and 1 <= k <= FAST_PATH_MAX_CARDINALITY:
        _check_dims(samples[0], codewords[0])
        if any(pattern.dim != samples[0].dim for pattern in samples + codewords):
            raise InputError("patterns have mixed dimensions")
        cap = _check_cutoff(spec.cutoff) ** 2 if spec.is_usospa else None
        return _enumerated_matrix(samples, codewords, k, cap)
    result = np.empty((len(samples), len(codewords)))
    for row, sample in enumerate(samples):
        for col, codeword in enumerate(codewords):
            result[row, col] = distortion(sample, codeword, spec)
    return result
