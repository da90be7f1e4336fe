"""
Per-command run configuration schemas.

Values are merged from settings defaults, the ``--config`` file and CLI
flags (in increasing precedence) and validated here against the
preconditions of the operation they feed.
"""

from typing import Any, Dict, List, Literal, Optional, Type, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from core.entities.bound_params import EPSILON_EXPONENT, PoissonBoundParams, min_grid_size
from core.exceptions import ConfigError

ModelT = TypeVar("ModelT", bound=BaseModel)

UPPER_SWEEP_END = 207
SAMPLES_PER_CODEWORD = 100


def parse_int_list(value: Any) -> Any:
    """Accept ``8,16,32``, ``8..207`` (inclusive) or a mix of both."""
    if not isinstance(value, str):
        return value
    items: List[int] = []
    for part in value.replace(" ", "").split(","):
        if not part:
            continue
        if ".." in part:
            start, stop = part.split("..", 1)
            items.extend(range(int(start), int(stop) + 1))
        else:
            items.append(int(part))
    return items


class RunConfig(BaseModel):
    """Fields shared by every command."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    seed: Optional[int] = Field(0, description="Master seed; None draws fresh entropy")
    workers: int = Field(1, ge=1, description="Worker threads for parallel sections")
    out: Optional[str] = Field(None, description="Output path (stdout when omitted)")
    bits: bool = Field(False, description="Report rates in bits instead of nats")

    def as_run_info(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


class GaussianBoundsRunConfig(RunConfig):
    """bounds-gaussian parameters."""

    k: int = Field(4, ge=1, description="Points per pattern")
    d: int = Field(2, ge=1, description="Dimension")
    d_min: float = Field(1e-6, gt=0, description="Smallest distortion in the grid")
    d_max: Optional[float] = Field(None, gt=0, description="Largest distortion (defaults to kd)")
    d_points: int = Field(50, ge=1, description="Grid size")
    epsilon_exponent: float = Field(EPSILON_EXPONENT, gt=0, lt=0.5, description="Exponent of the default epsilon rule")
    epsilon: Optional[float] = Field(None, gt=0, description="Fixed epsilon overriding the default rule")

    @model_validator(mode="after")
    def check_grid(self) -> "GaussianBoundsRunConfig":
        n = self.k * self.d
        if self.d_max is None:
            self.d_max = float(n)
        if self.d_max > n:
            raise ValueError(f"d_max={self.d_max} exceeds kd={n}")
        if self.d_min > self.d_max:
            raise ValueError(f"d_min={self.d_min} exceeds d_max={self.d_max}")
        return self


class PoissonBoundsRunConfig(RunConfig):
    """bounds-poisson parameters."""

    mean_cardinality: float = Field(10.0, gt=0, alias="lambda", description="Mean cardinality")
    cutoff: float = Field(0.1, gt=0, description="USOSPA cut-off c")
    kmax: Optional[int] = Field(None, ge=1, description="Lower-bound truncation (defaults to the concave maximum)")
    tol: float = Field(1e-9, gt=0, description="Slope search tolerance")
    d_min: float = Field(1e-5, gt=0, description="Smallest distortion in the lower-bound grid")
    d_max: float = Field(1e-1, gt=0, description="Largest distortion in the lower-bound grid")
    d_points: int = Field(50, ge=1, description="Lower-bound grid size")
    n_grid: Optional[int] = Field(None, ge=1, description="Single quantizer grid size N")
    n_list: Optional[List[int]] = Field(None, description="Quantizer grid sizes for the upper bound")
    nmax: Optional[int] = Field(None, ge=1, description="Cardinality truncation N_max (defaults to min(N, 10))")
    s_lo: Optional[float] = Field(None, gt=0, description="Lower end of the slope search")
    s_hi: Optional[float] = Field(None, gt=0, description="Upper end of the slope search")

    @field_validator("n_list", mode="before")
    @classmethod
    def split_n_list(cls, value: Any) -> Any:
        return parse_int_list(value)

    @model_validator(mode="after")
    def check_preconditions(self) -> "PoissonBoundsRunConfig":
        if self.d_min > self.d_max:
            raise ValueError(f"d_min={self.d_min} exceeds d_max={self.d_max}")
        floor = min_grid_size(self.cutoff)
        if self.n_list is None:
            self.n_list = [self.n_grid] if self.n_grid is not None else list(range(floor, UPPER_SWEEP_END + 1))
        if not self.n_list:
            raise ValueError("n_list is empty")
        too_small = [n for n in self.n_list if n < floor]
        if too_small:
            raise ValueError(f"grid sizes {too_small} violate N >= {floor} for cutoff {self.cutoff}")
        if self.nmax is not None and self.nmax > min(self.n_list):
            raise ValueError(f"nmax={self.nmax} exceeds the smallest grid size {min(self.n_list)}")
        self.bound_params().validated_s_range()
        return self

    def bound_params(self) -> PoissonBoundParams:
        params = PoissonBoundParams(mean_cardinality=self.mean_cardinality, cutoff=self.cutoff, k_max=self.kmax)
        if self.s_lo is None and self.s_hi is None:
            return params
        s_lo, s_hi = params.s_range
        return PoissonBoundParams(
            mean_cardinality=self.mean_cardinality,
            cutoff=self.cutoff,
            k_max=self.kmax,
            s_range=(self.s_lo if self.s_lo is not None else s_lo, self.s_hi if self.s_hi is not None else s_hi),
        )


class TrainRunConfig(RunConfig):
    """train parameters."""

    source: Literal["gaussian", "poisson"] = Field("gaussian", description="Source model")
    k: int = Field(4, ge=1, description="Points per pattern (gaussian)")
    d: int = Field(2, ge=1, description="Dimension (gaussian)")
    mean_cardinality: float = Field(10.0, gt=0, alias="lambda", description="Mean cardinality (poisson)")
    cutoff: float = Field(0.1, gt=0, description="USOSPA cut-off (poisson)")
    M: List[int] = Field(default_factory=lambda: [64], description="Codebook sizes (per cardinality for poisson)")
    samples: Optional[int] = Field(None, ge=1, description="Training set size (defaults to 100 per codeword)")
    heuristic: Literal["single_hub", "multi_hub", "modified_single_hub", "exact"] = Field(
        "modified_single_hub", description="Center heuristic"
    )
    max_iters: int = Field(50, ge=0, description="LBG iteration cap")
    rel_tol: float = Field(1e-4, ge=0, description="Relative-decrease stopping tolerance")
    convergence_window: int = Field(3, ge=1, description="Iterations the relative decrease is measured over")
    eval_samples: int = Field(100_000, ge=100, description="Fresh samples for evaluation")
    max_cardinality: int = Field(25, ge=1, description="Largest cardinality trained (poisson)")
    csv: Optional[str] = Field(None, description="CSV path for the RD rows (stdout when omitted)")
    dump_samples: Optional[str] = Field(None, description="File receiving the training patterns, one per line")

    @field_validator("M", mode="before")
    @classmethod
    def split_sizes(cls, value: Any) -> Any:
        if isinstance(value, int):
            return [value]
        return parse_int_list(value)

    @model_validator(mode="after")
    def check_sizes(self) -> "TrainRunConfig":
        if not self.M:
            raise ValueError("at least one codebook size M is required")
        if any(size < 1 for size in self.M):
            raise ValueError(f"codebook sizes must be at least 1, got {self.M}")
        if self.source == "gaussian" and self.samples is not None and max(self.M) > self.samples:
            raise ValueError(f"M={max(self.M)} exceeds the {self.samples} training samples")
        return self

    def training_samples(self, size: int) -> int:
        """Training set size for codebook size M: the explicit budget or 100 M."""
        return self.samples if self.samples is not None else SAMPLES_PER_CODEWORD * size


class EvalRunConfig(RunConfig):
    """eval parameters."""

    codebook: str = Field(..., description="Codebook file to evaluate")
    source: Literal["gaussian", "poisson"] = Field("gaussian", description="Source model")
    k: Optional[int] = Field(None, ge=1, description="Points per pattern (defaults to the codebook's)")
    d: Optional[int] = Field(None, ge=1, description="Dimension (defaults to the codebook's)")
    mean_cardinality: float = Field(10.0, gt=0, alias="lambda", description="Mean cardinality (poisson)")
    eval_samples: int = Field(100_000, ge=100, description="Fresh samples for evaluation")
    csv: Optional[str] = Field(None, description="CSV path for the RD row (stdout when omitted)")


class VerifyRunConfig(RunConfig):
    """verify parameters."""

    suite: Literal["distortion", "bounds", "codebook", "sampling", "all"] = Field("all", description="Suite to run")
    quick: bool = Field(False, description="Reduced sample counts")


def validate_run_config(model: Type[ModelT], values: Dict[str, Any]) -> ModelT:
    """Build ``model`` from merged values, reporting failures as ConfigError."""
    try:
        return model.model_validate({key: value for key, value in values.items() if value is not None})
    except ValidationError as error:
        first = error.errors()[0]
        location = ".".join(str(part) for part in first.get("loc", ())) or "config"
        raise ConfigError(f"invalid {location}: {first['msg']} (got {first.get('input')!r})") from error
