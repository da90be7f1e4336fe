"""
Point pattern domain entities for the Point Pattern Rate-Distortion Toolkit.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import ConfigError, DimensionError, EmptyCodebookError


@dataclass(frozen=True, eq=False)
class PointPattern:
    """A finite multiset of d-dimensional points.

    Points are stored row-wise in a read-only float64 array. Stored order is
    arbitrary; equality compares the multisets.
    """

    points: np.ndarray
    dim: int

    def __post_init__(self):
        if int(self.dim) < 1:
            raise DimensionError(f"pattern dimension must be positive, got {self.dim}")
        array = np.array(self.points, dtype=np.float64)
        if array.size == 0:
            array = array.reshape(0, int(self.dim))
        if array.ndim != 2 or array.shape[1] != int(self.dim):
            raise DimensionError(
                f"points of shape {array.shape} do not have {self.dim} coordinates each"
            )
        array = np.ascontiguousarray(array)
        array.setflags(write=False)
        object.__setattr__(self, "points", array)
        object.__setattr__(self, "dim", int(self.dim))

    @classmethod
    def create(cls, points: Iterable[Sequence[float]], dim: Optional[int] = None) -> "PointPattern":
        """Factory method accepting any nested sequence of coordinates."""
        array = np.array(list(points), dtype=np.float64)
        if dim is None:
            if array.ndim != 2:
                raise DimensionError("cannot infer dimension from an empty or ragged point list")
            dim = array.shape[1]
        return cls(points=array, dim=dim)

    @classmethod
    def empty(cls, dim: int) -> "PointPattern":
        return cls(points=np.zeros((0, dim)), dim=dim)

    @classmethod
    def from_vector(cls, coords: Sequence[float], k: int, d: int) -> "PointPattern":
        """Forget the order of k stacked d-dimensional blocks."""
        flat = np.asarray(coords, dtype=np.float64).ravel()
        if k < 0 or d < 1:
            raise DimensionError(f"invalid block layout k={k}, d={d}")
        if flat.size != k * d:
            raise DimensionError(f"expected {k * d} coordinates for k={k}, d={d}, got {flat.size}")
        return cls(points=flat.reshape(k, d), dim=d)

    @property
    def cardinality(self) -> int:
        return int(self.points.shape[0])

    def __len__(self) -> int:
        return self.cardinality

    def canonical(self) -> np.ndarray:
        """Points sorted lexicographically (first coordinate most significant)."""
        if self.cardinality == 0:
            return self.points
        order = np.lexsort(self.points.T[::-1])
        return self.points[order]

    def to_vector(self) -> np.ndarray:
        """Flattened canonical ordering, an inverse of from_vector."""
        return self.canonical().ravel().copy()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointPattern):
            return NotImplemented
        if self.dim != other.dim or self.cardinality != other.cardinality:
            return False
        return bool(np.array_equal(self.canonical(), other.canonical()))

    def __hash__(self) -> int:
        return hash((self.dim, self.cardinality, self.canonical().tobytes()))

    def __repr__(self) -> str:
        return f"PointPattern(k={self.cardinality}, d={self.dim})"


def pattern_from_vector(coords: Sequence[float], k: int, d: int) -> PointPattern:
    """Build a pattern from a flat vector of k*d coordinates."""
    return PointPattern.from_vector(coords, k, d)


class DistortionKind(str, Enum):
    """Supported distortion functions."""

    FIXED_CARDINALITY_SQUARED = "rho2"
    USOSPA = "usospa"


@dataclass(frozen=True)
class DistortionSpec:
    """Which distortion to use and its cut-off (USOSPA only)."""

    kind: DistortionKind
    cutoff: Optional[float] = None

    def __post_init__(self):
        kind = DistortionKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is DistortionKind.USOSPA:
            if self.cutoff is None or not math.isfinite(self.cutoff) or self.cutoff <= 0:
                raise ConfigError(f"USOSPA needs a positive finite cut-off, got {self.cutoff!r}")
            object.__setattr__(self, "cutoff", float(self.cutoff))
        elif self.cutoff is not None:
            raise ConfigError("the fixed-cardinality squared distortion takes no cut-off")

    @classmethod
    def rho2(cls) -> "DistortionSpec":
        return cls(kind=DistortionKind.FIXED_CARDINALITY_SQUARED)

    @classmethod
    def usospa(cls, cutoff: float) -> "DistortionSpec":
        return cls(kind=DistortionKind.USOSPA, cutoff=cutoff)

    @property
    def is_usospa(self) -> bool:
        return self.kind is DistortionKind.USOSPA

    @property
    def label(self) -> str:
        return self.kind.value


@dataclass(frozen=True)
class Codebook:
    """Indexed codewords plus the distortion they were trained under."""

    codewords: Tuple[PointPattern, ...]
    distortion: DistortionSpec
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        codewords = tuple(self.codewords)
        if not codewords:
            raise EmptyCodebookError("a codebook needs at least one codeword")
        dims = {codeword.dim for codeword in codewords}
        if len(dims) != 1:
            raise DimensionError(f"codewords have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "codewords", codewords)

    @property
    def size(self) -> int:
        return len(self.codewords)

    @property
    def dim(self) -> int:
        return self.codewords[0].dim

    @property
    def rate(self) -> float:
        """Operational rate log M in nats."""
        return math.log(self.size)

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, index: int) -> PointPattern:
        return self.codewords[index]


@dataclass(frozen=True)
class CodebookFamily:
    """One codebook per cardinality, used for variable-cardinality sources."""

    codebooks: Dict[int, Codebook]
    distortion: DistortionSpec
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.codebooks:
            raise EmptyCodebookError("a codebook family needs at least one codebook")
        object.__setattr__(self, "codebooks", dict(sorted(self.codebooks.items())))

    @property
    def cardinalities(self) -> List[int]:
        return list(self.codebooks.keys())

    @property
    def total_size(self) -> int:
        return sum(codebook.size for codebook in self.codebooks.values())

    @property
    def rate(self) -> float:
        """log of the total number of codewords across cardinalities."""
        return math.log(self.total_size)

    @property
    def dim(self) -> int:
        return next(iter(self.codebooks.values())).dim

    def codebook_for(self, cardinality: int) -> Codebook:
        """Codebook of the given cardinality, else the nearest trained one (ties to the smaller)."""
        if cardinality in self.codebooks:
            return self.codebooks[cardinality]
        nearest = min(self.codebooks, key=lambda trained: (abs(trained - cardinality), trained))
        return self.codebooks[nearest]


@dataclass(frozen=True)
class RdPoint:
    """A single (D, R) pair in nats, tagged with where it came from."""

    distortion_D: float
    rate_R: float
    bound_id: str
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.distortion_D < 0:
            raise ConfigError(f"distortion must be nonnegative, got {self.distortion_D}")

    def in_bits(self) -> "RdPoint":
        return RdPoint(
            distortion_D=self.distortion_D,
            rate_R=self.rate_R / math.log(2.0),
            bound_id=self.bound_id,
            params={**self.params, "units": "bits"},
        )


@dataclass
class BoundCurve:
    """Ordered RD points sharing a bound identity."""

    bound_id: str
    points: List[RdPoint] = field(default_factory=list)
    params: Dict[str, Any] = field(default_factory=dict)

    def add(self, point: RdPoint) -> None:
        self.points.append(point)

    def distortions(self) -> np.ndarray:
        return np.array([point.distortion_D for point in self.points])

    def rates(self) -> np.ndarray:
        return np.array([point.rate_R for point in self.points])

    def as_bits(self) -> "BoundCurve":
        return BoundCurve(
            bound_id=self.bound_id,
            points=[point.in_bits() for point in self.points],
            params={**self.params, "units": "bits"},
        )


@dataclass(frozen=True)
class TrainingSet:
    """Source realizations used as LBG input."""

    samples: Tuple[PointPattern, ...]
    sampler: str = "unknown"
    seed: Optional[int] = None

    def __post_init__(self):
        samples = tuple(self.samples)
        dims = {sample.dim for sample in samples}
        if len(dims) > 1:
            raise DimensionError(f"training samples have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "samples", samples)

    @property
    def count(self) -> int:
        return len(self.samples)

    def __len__(self) -> int:
        return self.count

    def cardinalities(self) -> List[int]:
        return sorted({sample.cardinality for sample in self.samples})

    def by_cardinality(self) -> Dict[int, "TrainingSet"]:
        """Split into one training set per cardinality, preserving sample order."""
        groups: Dict[int, List[PointPattern]] = {}
        for sample in self.samples:
            groups.setdefault(sample.cardinality, []).append(sample)
        return {
            cardinality: TrainingSet(samples=tuple(group), sampler=self.sampler, seed=self.seed)
            for cardinality, group in sorted(groups.items())
        }
