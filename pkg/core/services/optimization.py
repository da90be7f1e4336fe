"""
One-dimensional maximization for the slope parameter of the lower bounds.
"""

import logging
import math
from typing import Callable, List, Tuple

import numpy as np

from core.exceptions import ConfigError, NumericDomainError

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1 / phi
INV_PHI_SQUARE = (3.0 - math.sqrt(5.0)) / 2.0  # 1 / phi^2


def _evaluate(objective: Callable[[float], float], s: float) -> float:
    value = float(objective(s))
    if not math.isfinite(value):
        raise NumericDomainError("objective is not finite", {"s": s, "value": value})
    return value


def maximize_concave_1d(
    objective: Callable[[float], float], s_lo: float, s_hi: float, tol: float = 1e-9
) -> Tuple[float, float]:
    """Golden-section search for the maximum of a concave function.

    Returns (s*, objective(s*)). The bracket shrinks until it is narrower than
    ``tol`` or stops moving in floating point; both end points are compared
    against the interior so boundary maxima are returned exactly.
    """
    if not (math.isfinite(s_lo) and math.isfinite(s_hi)) or not s_lo < s_hi:
        raise ConfigError(f"invalid search interval [{s_lo}, {s_hi}]")
    if not tol > 0:
        raise ConfigError(f"tolerance must be positive, got {tol}")

    a, b = float(s_lo), float(s_hi)
    h = b - a
    steps = max(1, int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))) if h > tol else 0

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = _evaluate(objective, c)
    yd = _evaluate(objective, d)

    for _ in range(steps):
        if yc > yd:
            b, d, yd = d, c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = _evaluate(objective, c)
        else:
            a, c, yc = c, d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = _evaluate(objective, d)
        if b - a <= tol or not a < c < d < b:
            break

    candidates = [(c, yc), (d, yd), (s_lo, _evaluate(objective, s_lo)), (s_hi, _evaluate(objective, s_hi))]
    best_s, best_value = max(candidates, key=lambda item: item[1])
    return float(best_s), float(best_value)


def maximize_multistart_1d(
    objective: Callable[[float], float],
    s_lo: float,
    s_hi: float,
    tol: float = 1e-9,
    starts: int = 32,
) -> Tuple[float, float]:
    """Best local maximum over ``starts`` log-spaced sub-brackets.

    Used where concavity is not guaranteed.
    """
    if s_lo <= 0:
        raise ConfigError("multi-start search needs a positive lower end")
    edges = np.geomspace(s_lo, s_hi, starts + 1)
    best: Tuple[float, float] = (float("nan"), -math.inf)
    for left, right in zip(edges[:-1], edges[1:]):
        local = maximize_concave_1d(objective, float(left), float(right), tol)
        if local[1] > best[1]:
            best = local
    logger.debug("multi-start search over %d brackets: s*=%g value=%g", starts, best[0], best[1])
    return best


def dense_grid_maximum(
    objective: Callable[[float], float],
    s_lo: float,
    s_hi: float,
    points: int = 100_000,
    log_spaced: bool = True,
) -> Tuple[float, float]:
    """Maximum of ``objective`` over a dense grid, the reference for the searches above."""
    grid: List[float] = list(np.geomspace(s_lo, s_hi, points) if log_spaced else np.linspace(s_lo, s_hi, points))
    values = np.array([objective(s) for s in grid])
    best = int(np.argmax(values))
    return float(grid[best]), float(values[best])
