"""
RD bounds for a fixed-cardinality point process of i.i.d. standard Gaussian
points under the rho2 distortion.
"""

import math
from dataclasses import dataclass
from typing import Optional

from scipy.special import expit

from core.entities.bound_params import EPSILON_EXPONENT
from core.exceptions import ConfigError, DomainError
from core.services.special_functions import (
    binary_entropy,
    chi2_cdf,
    log_factorial,
    log_factorial_minus_one,
)


def _check_kd(k: int, d: int) -> None:
    if k < 1 or d < 1:
        raise ConfigError(f"need k >= 1 and d >= 1, got k={k}, d={d}")


def default_epsilon(k: int, d: int, D: float, exponent: float = EPSILON_EXPONENT) -> float:
    """epsilon = sigma^(3/4) = (D/(kd))^(3/8) unless another exponent is given."""
    _check_kd(k, d)
    return (D / (k * d)) ** exponent


def gaussian_vector_rd(k: int, d: int, D: float) -> float:
    """RD function of a standard Gaussian vector in (R^d)^k: (kd/2) log(kd/D)."""
    _check_kd(k, d)
    n = k * d
    if not 0 < D <= n:
        raise DomainError(f"vector RD formula needs 0 < D <= kd = {n}, got D={D}")
    return 0.5 * n * math.log(n / D)


def gaussian_pp_lower(k: int, d: int, D: float) -> float:
    """Lower bound: vector RD minus log k!. May be negative."""
    return gaussian_vector_rd(k, d, D) - log_factorial(k)


@dataclass(frozen=True)
class GaussianUpperTerms:
    """The pieces of the upper bound, all in nats."""

    sigma2: float
    epsilon: float
    mutual_information: float
    log_k_factorial: float
    close_pairs_probability: float
    large_noise_probability: float
    p0: float
    binary_entropy_term: float
    residual_term: float

    @property
    def correction(self) -> float:
        """Everything added on top of the lower bound."""
        return (
            (self.close_pairs_probability + self.large_noise_probability) * self.log_k_factorial
            + self.binary_entropy_term
            + self.residual_term
        )

    @property
    def total(self) -> float:
        return self.mutual_information - self.log_k_factorial + self.correction


def gaussian_pp_upper_terms(k: int, d: int, D: float, epsilon: Optional[float] = None) -> GaussianUpperTerms:
    """Evaluate every term of the upper bound at sigma^2 = D/(kd)."""
    _check_kd(k, d)
    n = k * d
    if not 0 < D < n:
        raise DomainError(f"upper bound needs 0 < D < kd = {n} (sigma^2 < 1), got D={D}")
    sigma2 = D / n
    if epsilon is None:
        epsilon = default_epsilon(k, d, D)
    if not epsilon > 0:
        raise ConfigError(f"epsilon must be positive, got {epsilon}")
    eps2 = epsilon * epsilon

    log_kf = log_factorial(k)
    close_pairs = 0.5 * k * (k - 1) * chi2_cdf(9.0 * eps2 / (2.0 * (1.0 - sigma2)), d)
    large_noise = 1.0 - chi2_cdf(eps2 / sigma2, n)

    if k == 1:
        # k! - 1 = 0 forces p0 = 1 and removes the residual term.
        p0, residual = 1.0, 0.0
    else:
        log_rest = log_factorial_minus_one(k)
        p0 = float(expit(3.0 * eps2 / (2.0 * sigma2) - log_rest))
        residual = (1.0 - p0) * log_rest

    return GaussianUpperTerms(
        sigma2=sigma2,
        epsilon=epsilon,
        mutual_information=0.5 * n * math.log(1.0 / sigma2),
        log_k_factorial=log_kf,
        close_pairs_probability=close_pairs,
        large_noise_probability=large_noise,
        p0=p0,
        binary_entropy_term=binary_entropy(p0),
        residual_term=residual,
    )


def gaussian_pp_upper(k: int, d: int, D: float, epsilon: Optional[float] = None) -> float:
    """Upper bound on R(D) from the noisy-copy construction."""
    return gaussian_pp_upper_terms(k, d, D, epsilon).total
