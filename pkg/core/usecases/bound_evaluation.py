"""
Bound sweep use cases: tabulate the Gaussian and Poisson RD bounds over
distortion grids, in the row layout the CLI writes to CSV.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from core.entities.bound_params import EPSILON_EXPONENT, PoissonBoundParams, min_grid_size
from core.entities.patterns import BoundCurve, RdPoint
from core.exceptions import ConfigError, PreconditionError
from core.services.gaussian_bounds import (
    default_epsilon,
    gaussian_pp_lower,
    gaussian_pp_upper_terms,
    gaussian_vector_rd,
)
from core.services.poisson_bounds import poisson_lower_unit_square, poisson_upper_unit_square

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

GAUSSIAN_COLUMNS = [
    "k", "d", "D", "epsilon", "R_vec", "lower", "lower_clamped", "upper", "gap",
    "p0", "close_pairs", "large_noise", "units",
]
POISSON_COLUMNS = [
    "kind", "lambda", "cutoff", "kmax", "N", "N_max", "D", "R", "R_clamped",
    "s_opt", "nonconcave", "lower_at_D", "cross_check", "units",
]


def log_grid(d_min: float, d_max: float, points: int) -> List[float]:
    """Log-spaced grid from d_min to d_max, both included."""
    if not (d_min > 0 and d_max > 0) or d_min > d_max:
        raise ConfigError(f"invalid distortion grid [{d_min}, {d_max}]")
    if points < 1:
        raise ConfigError(f"grid needs at least one point, got {points}")
    if points == 1:
        return [float(d_min)]
    return [float(value) for value in np.geomspace(d_min, d_max, points)]


def _ordered_map(function: Callable[[T], R], items: Sequence[T], workers: int) -> List[R]:
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(function, items))
    return [function(item) for item in items]


def _rate(value: float, bits: bool) -> float:
    return value / math.log(2.0) if bits else value


def gaussian_bound_rows(
    k: int,
    d: int,
    grid: Sequence[float],
    epsilon_exponent: float = EPSILON_EXPONENT,
    epsilon: Optional[float] = None,
    bits: bool = False,
    workers: int = 1,
) -> List[Dict[str, Any]]:
    """One row per D: R_vec, lower, upper and the upper-bound correction terms."""
    n = k * d
    for D in grid:
        if not 0 < D <= n:
            raise ConfigError(f"distortion grid value {D} outside (0, kd = {n}]")

    def row(D: float) -> Dict[str, Any]:
        r_vec = gaussian_vector_rd(k, d, D)
        lower = gaussian_pp_lower(k, d, D)
        eps = epsilon if epsilon is not None else default_epsilon(k, d, D, epsilon_exponent)
        values: Dict[str, Any] = {
            "k": k, "d": d, "D": D, "epsilon": eps,
            "R_vec": _rate(r_vec, bits),
            "lower": _rate(lower, bits),
            "lower_clamped": _rate(max(lower, 0.0), bits),
            "units": "bits" if bits else "nats",
        }
        if D < n:
            terms = gaussian_pp_upper_terms(k, d, D, eps)
            values.update(
                upper=_rate(terms.total, bits),
                gap=_rate(terms.total - lower, bits),
                p0=terms.p0,
                close_pairs=terms.close_pairs_probability,
                large_noise=terms.large_noise_probability,
            )
        else:
            # sigma^2 = 1: the noisy-copy construction degenerates
            values.update(upper=math.nan, gap=math.nan, p0=math.nan, close_pairs=math.nan, large_noise=math.nan)
        logger.debug("gaussian bounds at D=%g: lower=%g upper=%g", D, lower, values["upper"])
        return values

    return _ordered_map(row, list(grid), workers)


def gaussian_bound_curves(k: int, d: int, grid: Sequence[float]) -> Tuple[BoundCurve, BoundCurve]:
    """(lower, upper) curves; D = kd is skipped for the upper bound."""
    lower = BoundCurve(bound_id="gaussian_lower", params={"k": k, "d": d})
    upper = BoundCurve(bound_id="gaussian_upper", params={"k": k, "d": d})
    for row in gaussian_bound_rows(k, d, grid):
        lower.add(RdPoint(distortion_D=row["D"], rate_R=row["lower"], bound_id="gaussian_lower"))
        if not math.isnan(row["upper"]):
            upper.add(RdPoint(distortion_D=row["D"], rate_R=row["upper"], bound_id="gaussian_upper"))
    return lower, upper


def poisson_lower_rows(
    params: PoissonBoundParams, grid: Sequence[float], bits: bool = False, workers: int = 1, tol: float = 1e-9
) -> List[Dict[str, Any]]:
    """Lower bound at every D of the grid."""

    def row(D: float) -> Dict[str, Any]:
        result = poisson_lower_unit_square(params, D, tol=tol)
        return {
            "kind": "lower", "lambda": params.mean_cardinality, "cutoff": params.cutoff,
            "kmax": params.k_max, "N": None, "N_max": None, "D": D,
            "R": _rate(result.value, bits), "R_clamped": _rate(result.clamped, bits),
            "s_opt": result.s_opt, "nonconcave": result.nonconcave,
            "lower_at_D": None, "cross_check": None,
            "units": "bits" if bits else "nats",
        }

    return _ordered_map(row, list(grid), workers)


def poisson_upper_rows(
    params: PoissonBoundParams,
    n_list: Sequence[int],
    n_max: Optional[int] = None,
    bits: bool = False,
    workers: int = 1,
) -> List[Dict[str, Any]]:
    """Upper bound per grid size N, cross-checked against the lower bound at the same D.

    ``n_max`` of None applies the min(N, 10) rule per N.
    """
    floor = min_grid_size(params.cutoff)
    too_small = [int(n_grid) for n_grid in n_list if n_grid < floor]
    if too_small:
        raise PreconditionError(f"grid sizes {too_small} violate N >= 1/(sqrt(2) c), i.e. N >= {floor}")

    def row(n_grid: int) -> Dict[str, Any]:
        per_n = PoissonBoundParams(
            mean_cardinality=params.mean_cardinality,
            cutoff=params.cutoff,
            k_max=params.k_max,
            n_grid=n_grid,
            n_max=min(n_max, n_grid) if n_max is not None else None,
            s_range=params.s_range,
            entropy=params.entropy,
        )
        point = poisson_upper_unit_square(per_n)
        lower = poisson_lower_unit_square(per_n, point.distortion_D)
        passed = point.rate_R >= lower.value
        if not passed:
            logger.warning(
                "upper bound %.6g below lower bound %.6g at N=%d (D=%.4g)",
                point.rate_R, lower.value, n_grid, point.distortion_D,
            )
        return {
            "kind": "upper", "lambda": params.mean_cardinality, "cutoff": params.cutoff,
            "kmax": params.k_max, "N": n_grid, "N_max": per_n.n_max, "D": point.distortion_D,
            "R": _rate(point.rate_R, bits), "R_clamped": _rate(max(point.rate_R, 0.0), bits),
            "s_opt": None, "nonconcave": None,
            "lower_at_D": _rate(lower.value, bits), "cross_check": passed,
            "units": "bits" if bits else "nats",
        }

    return _ordered_map(row, list(n_list), workers)


class BoundEvaluationUseCase:
    """Use case for tabulating the analytic bounds."""

    def __init__(self, workers: int = 1, bits: bool = False):
        self._workers = workers
        self._bits = bits

    def gaussian(
        self, k: int, d: int, grid: Sequence[float], epsilon_exponent: float = EPSILON_EXPONENT,
        epsilon: Optional[float] = None,
    ) -> List[Dict[str, Any]]:
        return gaussian_bound_rows(k, d, grid, epsilon_exponent, epsilon, self._bits, self._workers)

    def poisson(
        self, params: PoissonBoundParams, grid: Sequence[float], n_list: Sequence[int],
        n_max: Optional[int] = None, tol: float = 1e-9,
    ) -> List[Dict[str, Any]]:
        rows = poisson_lower_rows(params, grid, self._bits, self._workers, tol=tol)
        rows.extend(poisson_upper_rows(params, n_list, n_max, self._bits, self._workers))
        return rows
