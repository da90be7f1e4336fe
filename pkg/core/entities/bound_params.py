"""
Parameter records for the closed-form and optimized RD bounds.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from core.exceptions import ConfigError, PreconditionError

EPSILON_EXPONENT = 3.0 / 8.0


def max_concave_kmax(cutoff: float) -> int:
    """Largest truncation for which the lower-bound objective stays concave."""
    return int(math.floor(1.0 / (2.0 * math.pi * cutoff * cutoff)))


def min_grid_size(cutoff: float) -> int:
    """Smallest grid N allowed by the quantizer construction, N >= 1/(sqrt(2) c)."""
    return int(math.ceil(1.0 / (math.sqrt(2.0) * cutoff) - 1e-12))


@dataclass(frozen=True)
class GaussianBoundParams:
    """Fixed-cardinality Gaussian source bound parameters."""

    k: int
    d: int
    D: float
    epsilon: Optional[float] = None

    def __post_init__(self):
        if self.k < 1 or self.d < 1:
            raise ConfigError(f"need k >= 1 and d >= 1, got k={self.k}, d={self.d}")
        if not self.D > 0:
            raise ConfigError(f"target distortion must be positive, got {self.D}")
        if self.epsilon is not None and not self.epsilon > 0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")

    @property
    def sigma2(self) -> float:
        return self.D / (self.k * self.d)

    @property
    def resolved_epsilon(self) -> float:
        if self.epsilon is not None:
            return self.epsilon
        return self.sigma2 ** EPSILON_EXPONENT


@dataclass(frozen=True)
class PoissonBoundParams:
    """Poisson unit-square bound parameters.

    ``k_max`` truncates the lower bound, ``n_grid``/``n_max`` drive the
    quantizer upper bound, ``s_range`` bounds the slope search.
    """

    mean_cardinality: float
    cutoff: float
    k_max: Optional[int] = None
    n_grid: Optional[int] = None
    n_max: Optional[int] = None
    s_range: Optional[Tuple[float, float]] = None
    entropy: float = 0.0

    def __post_init__(self):
        if not self.mean_cardinality > 0:
            raise ConfigError(f"mean cardinality must be positive, got {self.mean_cardinality}")
        if not self.cutoff > 0:
            raise ConfigError(f"cut-off must be positive, got {self.cutoff}")
        if self.k_max is None:
            object.__setattr__(self, "k_max", max(1, max_concave_kmax(self.cutoff)))
        if self.k_max < 1:
            raise ConfigError(f"k_max must be positive, got {self.k_max}")
        if self.n_grid is not None and self.n_max is None:
            object.__setattr__(self, "n_max", min(self.n_grid, 10))
        if self.s_range is None:
            c2 = self.cutoff * self.cutoff
            s_lo = (3.0 if self.concave else 1.0) / c2
            object.__setattr__(self, "s_range", (s_lo, 1e6 / c2))

    @property
    def concave(self) -> bool:
        """True when every retained summand is concave on s >= 3/c^2."""
        return self.k_max <= 1.0 / (2.0 * math.pi * self.cutoff * self.cutoff)

    def validated_s_range(self) -> Tuple[float, float]:
        s_lo, s_hi = self.s_range
        c2 = self.cutoff * self.cutoff
        if not (math.isfinite(s_lo) and math.isfinite(s_hi)) or s_lo >= s_hi:
            raise ConfigError(f"invalid slope range {self.s_range}")
        floor = (3.0 if self.concave else 1.0) / c2
        if s_lo < floor * (1.0 - 1e-12):
            raise ConfigError(f"slope range must start at or above {floor:g}, got {s_lo:g}")
        return float(s_lo), float(s_hi)

    def require_grid(self) -> Tuple[int, int]:
        """Validated (N, N_max) for the quantizer upper bound."""
        if self.n_grid is None:
            raise ConfigError("the upper bound needs a grid size N")
        if self.n_grid < min_grid_size(self.cutoff):
            raise PreconditionError(
                f"grid size N={self.n_grid} violates N >= 1/(sqrt(2) c) = {1.0 / (math.sqrt(2.0) * self.cutoff):.4f}"
            )
        if not 1 <= self.n_max <= self.n_grid:
            raise PreconditionError(f"N_max={self.n_max} must lie in [1, N={self.n_grid}]")
        return int(self.n_grid), int(self.n_max)
