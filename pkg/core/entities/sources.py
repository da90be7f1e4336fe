"""
Source model descriptions for the point processes the toolkit samples.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict

from core.entities.patterns import PointPattern
from core.exceptions import ConfigError


@dataclass(frozen=True)
class GaussianFixedSource:
    """Exactly k i.i.d. standard-normal points in R^d."""

    k: int
    d: int

    def __post_init__(self):
        if self.k < 1 or self.d < 1:
            raise ConfigError(f"Gaussian source needs k >= 1 and d >= 1, got k={self.k}, d={self.d}")

    @property
    def dim(self) -> int:
        return self.d

    def describe(self) -> Dict[str, Any]:
        return {"source": "gaussian", "k": self.k, "d": self.d}


@dataclass(frozen=True)
class PoissonUnitSquareSource:
    """Poisson point process with uniform intensity on [0,1)^2."""

    mean_cardinality: float

    def __post_init__(self):
        if not math.isfinite(self.mean_cardinality) or self.mean_cardinality <= 0:
            raise ConfigError(f"mean cardinality must be positive, got {self.mean_cardinality}")

    @property
    def dim(self) -> int:
        return 2

    def describe(self) -> Dict[str, Any]:
        return {"source": "poisson", "lambda": self.mean_cardinality, "d": 2}


@dataclass(frozen=True)
class FixedPatternSource:
    """Degenerate source whose only realization is ``pattern``."""

    pattern: PointPattern

    @property
    def dim(self) -> int:
        return self.pattern.dim

    def describe(self) -> Dict[str, Any]:
        return {"source": "fixed", "k": self.pattern.cardinality, "d": self.pattern.dim}
