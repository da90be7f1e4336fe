"""
Special functions used by the RD bounds.
"""

import math

import numpy as np
from scipy.special import entr, gammainc, gammaln

from core.exceptions import DomainError

_EXACT_FACTORIAL_LIMIT = 20


def log_factorial(k: int) -> float:
    """log(k!) exactly for k <= 20, through log-gamma beyond."""
    k = int(k)
    if k < 0:
        raise DomainError(f"factorial of negative integer {k}")
    if k <= _EXACT_FACTORIAL_LIMIT:
        return math.log(math.factorial(k))
    return float(gammaln(k + 1.0))


def log_factorial_minus_one(k: int) -> float:
    """log(k! - 1) for k >= 2.

    Exact integer arithmetic up to k = 20; above that k! - 1 and k! agree to
    far better than double precision.
    """
    k = int(k)
    if k < 2:
        raise DomainError(f"log(k! - 1) is undefined for k={k}")
    if k <= _EXACT_FACTORIAL_LIMIT:
        return math.log(math.factorial(k) - 1)
    log_fact = log_factorial(k)
    return log_fact + math.log1p(-math.exp(-log_fact))


def log_factorials(upto: int) -> np.ndarray:
    """Vector of log(j!) for j = 0..upto."""
    values = gammaln(np.arange(upto + 1, dtype=np.float64) + 1.0)
    exact = min(upto, _EXACT_FACTORIAL_LIMIT)
    values[: exact + 1] = [math.log(math.factorial(j)) for j in range(exact + 1)]
    return values


def regularized_lower_gamma(a: float, x: float) -> float:
    """P(a, x), the regularized lower incomplete gamma function."""
    if x < 0:
        raise DomainError(f"incomplete gamma needs x >= 0, got {x}")
    return float(gammainc(a, x))


def chi2_cdf(x: float, dof: int) -> float:
    """CDF of the chi-square distribution with ``dof`` degrees of freedom."""
    if dof < 1:
        raise DomainError(f"chi-square needs at least one degree of freedom, got {dof}")
    if x < 0:
        raise DomainError(f"chi-square CDF needs x >= 0, got {x}")
    if x == 0:
        return 0.0
    return min(1.0, max(0.0, regularized_lower_gamma(dof / 2.0, x / 2.0)))


def binary_entropy(p: float) -> float:
    """Binary entropy in nats with 0 log 0 = 0."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"binary entropy needs p in [0, 1], got {p}")
    return float(entr(p) + entr(1.0 - p))
