"""
RD bounds for a Poisson point process under the USOSPA distortion.

The lower bound maximizes a Shannon-type objective over the slope s; the
upper bound comes from the grid quantizer construction with N^2 cells.
Factorials and binomials are handled in log-space throughout.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammainc, gammaln
from scipy.stats import poisson

from core.entities.bound_params import PoissonBoundParams
from core.entities.patterns import RdPoint
from core.exceptions import ConfigError, DomainError, NumericDomainError
from core.services.optimization import maximize_concave_1d, maximize_multistart_1d
from core.services.special_functions import log_factorials

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9
MULTISTART_SEEDS = 32


def _check_slope(s: float, cutoff: float) -> None:
    if not cutoff > 0:
        raise ConfigError(f"cut-off must be positive, got {cutoff}")
    if not s >= 1.0 / (cutoff * cutoff) * (1.0 - 1e-12):
        raise DomainError(f"slope s={s} is below 1/c^2 = {1.0 / (cutoff * cutoff)}")


def poisson_log_gamma_tilde_unit_square(k: int, s: float, c: float) -> float:
    """k log(e^{-s c^2}(1 - pi c^2 k - pi k/s) + pi k/s)."""
    if k < 1:
        raise DomainError(f"cardinality must be positive, got {k}")
    _check_slope(s, c)
    base = math.exp(-s * c * c) * (1.0 - math.pi * c * c * k - math.pi * k / s) + math.pi * k / s
    if not base > 0:
        raise NumericDomainError("non-positive argument of log gamma-tilde", {"k": k, "s": s, "c": c})
    return k * math.log(base)


def ball_volume(dim: int, radius: float) -> float:
    """Lebesgue measure of the d-dimensional ball of the given radius."""
    return math.exp(0.5 * dim * math.log(math.pi) + dim * math.log(radius) - gammaln(0.5 * dim + 1.0))


def gaussian_ball_integral(dim: int, radius: float, s: float) -> float:
    """Integral of exp(-s |x|^2) over the ball of the given radius."""
    return (math.pi / s) ** (0.5 * dim) * float(gammainc(0.5 * dim, s * radius * radius))


def poisson_gamma_tilde_general(k: int, s: float, c: float, dim: int, area: float) -> float:
    """log gamma-tilde_k(s) for observation window measure ``area`` in R^dim."""
    if k < 1:
        raise DomainError(f"cardinality must be positive, got {k}")
    if not area > 0:
        raise ConfigError(f"window measure must be positive, got {area}")
    _check_slope(s, c)
    decay = math.exp(-s * c * c)
    base = decay * area + k * (gaussian_ball_integral(dim, c, s) - decay * ball_volume(dim, c))
    if not base > 0:
        raise NumericDomainError(
            "non-positive argument of log gamma-tilde", {"k": k, "s": s, "c": c, "dim": dim, "area": area}
        )
    return k * math.log(base)


def _poisson_weights(mean_cardinality: float, k_max: int) -> np.ndarray:
    """e^{-lambda} lambda^k / (k-1)! for k = 1..k_max."""
    ks = np.arange(1, k_max + 1, dtype=np.float64)
    return np.exp(-mean_cardinality + ks * math.log(mean_cardinality) - gammaln(ks))


def unit_square_objective(params: PoissonBoundParams, D: float) -> Callable[[float], float]:
    """s -> lambda h - sum_k weight_k log base_k(s) - s D for the unit square."""
    c2 = params.cutoff * params.cutoff
    ks = np.arange(1, params.k_max + 1, dtype=np.float64)
    weights = _poisson_weights(params.mean_cardinality, params.k_max)
    offset = params.mean_cardinality * params.entropy

    def objective(s: float) -> float:
        base = np.exp(-s * c2) * (1.0 - math.pi * c2 * ks - math.pi * ks / s) + math.pi * ks / s
        if np.any(base <= 0):
            bad = int(ks[np.argmax(base <= 0)])
            raise NumericDomainError(
                "non-positive argument of log gamma-tilde", {"k": bad, "s": s, "c": params.cutoff}
            )
        return float(offset - np.dot(weights, np.log(base)) - s * D)

    return objective


@dataclass(frozen=True)
class PoissonLowerBound:
    """Result of the slope maximization."""

    value: float
    s_opt: float
    nonconcave: bool

    @property
    def clamped(self) -> float:
        return max(self.value, 0.0)


def poisson_lower_unit_square(
    params: PoissonBoundParams, D: float, tol: float = DEFAULT_TOLERANCE
) -> PoissonLowerBound:
    """Shannon-type lower bound for the uniform Poisson process on [0,1)^2.

    In the concave regime (k_max <= 1/(2 pi c^2), s >= 3/c^2) a single
    golden-section search is exact; otherwise the best of a multi-start
    search is reported and flagged.
    """
    if not D > 0:
        raise ConfigError(f"distortion must be positive, got {D}")
    s_lo, s_hi = params.validated_s_range()
    objective = unit_square_objective(params, D)
    if params.concave:
        s_opt, value = maximize_concave_1d(objective, s_lo, s_hi, tol)
    else:
        s_opt, value = maximize_multistart_1d(objective, s_lo, s_hi, tol, MULTISTART_SEEDS)
    logger.debug("lower bound D=%g: s*=%g R=%g nonconcave=%s", D, s_opt, value, not params.concave)
    return PoissonLowerBound(value=value, s_opt=s_opt, nonconcave=not params.concave)


def poisson_lower_bound_general(
    D: float,
    mean_cardinality: float,
    cutoff: float,
    k_max: int,
    dim: int = 2,
    area: float = 1.0,
    entropy: float = 0.0,
    s_range=None,
    tol: float = DEFAULT_TOLERANCE,
) -> PoissonLowerBound:
    """Lower bound for a Poisson process with intensity density supported on a window.

    Each retained summand uses min(k log area, log gamma-tilde_k); summands
    above k_max fall back to k log area. The search is multi-start because
    concavity is only known for the unit square.
    """
    if not D > 0:
        raise ConfigError(f"distortion must be positive, got {D}")
    c2 = cutoff * cutoff
    s_lo, s_hi = s_range if s_range is not None else (1.0 / c2, 1e6 / c2)
    _check_slope(s_lo, cutoff)
    weights = _poisson_weights(mean_cardinality, k_max)
    log_area = math.log(area)
    retained_mean = float(np.sum(weights))
    tail = log_area * (mean_cardinality - retained_mean)

    def objective(s: float) -> float:
        total = 0.0
        for index, weight in enumerate(weights):
            k = index + 1
            per_point = min(log_area, poisson_gamma_tilde_general(k, s, cutoff, dim, area) / k)
            total += weight * per_point
        return mean_cardinality * entropy - total - tail - s * D

    s_opt, value = maximize_multistart_1d(objective, s_lo, s_hi, tol, MULTISTART_SEEDS)
    return PoissonLowerBound(value=value, s_opt=s_opt, nonconcave=True)


def quantizer_distortion(mean_cardinality: float, n_grid: int) -> float:
    """Expected USOSPA of the grid quantizer, lambda / (6 N^2)."""
    return mean_cardinality / (6.0 * n_grid * n_grid)


def quantizer_distortion_fixed(k: int, n_grid: int) -> float:
    """Per-cardinality expected USOSPA of the grid quantizer, k / (6 N^2)."""
    return k / (6.0 * n_grid * n_grid)


def _upper_rate(mean_cardinality: float, n_grid: int, n_max: int) -> float:
    lam = float(mean_cardinality)
    cells = n_grid * n_grid
    kept = n_max * n_max
    ks = np.arange(1, kept + 1, dtype=np.float64)
    log_fact = log_factorials(kept)[1:]
    log_pk = -lam + ks * math.log(lam) - log_fact
    # log(C(N^2, k) k! / N^{2k}) = sum_{i<k} log(1 - i/N^2)
    log_falling = np.cumsum(np.log1p(-np.arange(kept, dtype=np.float64) / cells))
    series = float(np.sum(np.exp(log_pk) * log_fact * -np.expm1(log_falling)))
    tail = float(poisson.sf(kept - 2, lam)) if kept >= 2 else 1.0
    rate = lam + lam * math.log(cells / lam) + series + tail * lam * lam
    if not math.isfinite(rate):
        raise NumericDomainError("upper bound is not finite", {"N": n_grid, "N_max": n_max, "lambda": lam})
    return rate


def poisson_upper_unit_square(params: PoissonBoundParams) -> RdPoint:
    """Upper bound at D = lambda/(6N^2), terms above N_max^2 folded into the tail."""
    n_grid, n_max = params.require_grid()
    rate = _upper_rate(params.mean_cardinality, n_grid, n_max)
    return RdPoint(
        distortion_D=quantizer_distortion(params.mean_cardinality, n_grid),
        rate_R=rate,
        bound_id="poisson_upper",
        params={
            "lambda": params.mean_cardinality,
            "cutoff": params.cutoff,
            "N": n_grid,
            "N_max": n_max,
        },
    )


def poisson_upper_unit_square_full(params: PoissonBoundParams) -> RdPoint:
    """Same bound without truncation (N_max = N)."""
    full = PoissonBoundParams(
        mean_cardinality=params.mean_cardinality,
        cutoff=params.cutoff,
        k_max=params.k_max,
        n_grid=params.n_grid,
        n_max=params.n_grid,
        entropy=params.entropy,
    )
    return poisson_upper_unit_square(full)
