"""
LBG codebook training use cases for the Point Pattern Rate-Distortion Toolkit.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np

from core.entities.patterns import Codebook, CodebookFamily, DistortionSpec, PointPattern, TrainingSet
from core.exceptions import ApplicabilityError, ConfigError, InputError
from core.ports.center_heuristic import CenterHeuristicPort
from core.ports.source_sampler import SourceSamplerPort
from core.services.encoding import partition

logger = logging.getLogger(__name__)

MAX_INIT_ATTEMPTS = 100
DEFAULT_MAX_ITERS = 50
DEFAULT_REL_TOL = 1e-4
DEFAULT_WINDOW = 3


@dataclass
class TrainingHistory:
    """Per-iteration record of an LBG run."""

    averages: List[float] = field(default_factory=list)
    best: List[float] = field(default_factory=list)
    reseeds: List[int] = field(default_factory=list)
    assignment_solves: int = 0

    def as_metadata(self) -> Dict[str, Any]:
        return {
            "history": list(self.averages),
            "best_history": list(self.best),
            "reseeds": list(self.reseeds),
            "assignment_solves": self.assignment_solves,
        }


def _distinct_initial(samples: Sequence[PointPattern], M: int, rng: np.random.Generator) -> List[PointPattern]:
    for _ in range(MAX_INIT_ATTEMPTS):
        picks = rng.choice(len(samples), size=M, replace=False)
        codewords = [samples[int(index)] for index in picks]
        if len(set(codewords)) == M:
            return codewords
    raise InputError(f"could not draw {M} distinct initial codewords in {MAX_INIT_ATTEMPTS} attempts")


def _converged(best: List[float], rel_tol: float, window: int) -> bool:
    if best and best[-1] == 0.0:
        return True
    if len(best) <= window:
        return False
    previous = best[-1 - window]
    return (previous - best[-1]) / previous < rel_tol


def lbg_train(
    samples: TrainingSet,
    M: int,
    distortion: DistortionSpec,
    heuristic: CenterHeuristicPort,
    max_iters: int = DEFAULT_MAX_ITERS,
    rel_tol: float = DEFAULT_REL_TOL,
    rng: Optional[np.random.Generator] = None,
    window: int = DEFAULT_WINDOW,
    workers: int = 1,
) -> Codebook:
    """Train an M-codeword codebook with the LBG algorithm.

    Each iteration scores the current codebook, keeps it if it is the
    best so far, then replaces every codeword by the center of its cell.
    Empty cells are reseeded from a random training sample. The
    returned codebook is the best one scored.
    """
    rng = rng if rng is not None else np.random.default_rng()
    pool = list(samples.samples)
    if M < 1:
        raise ConfigError(f"M must be at least 1, got {M}")
    if M > len(pool):
        raise ConfigError(f"M={M} exceeds the {len(pool)} training samples")
    if max_iters < 0 or not rel_tol >= 0:
        raise ConfigError("max_iters and rel_tol must be nonnegative")
    if len({sample.cardinality for sample in pool}) > 1:
        raise ApplicabilityError(
            "centers are only defined for a single cardinality; use per-cardinality training"
        )

    codewords = _distinct_initial(pool, M, rng)
    # Sample indices in the visiting order that built each codeword, when the heuristic reports one.
    orders: List[Optional[List[int]]] = [None] * M
    history = TrainingHistory()
    best_value = np.inf
    best_codewords = list(codewords)
    best_orders = list(orders)
    best_iteration = 0

    for iteration in range(max_iters + 1):
        labels, values = partition(pool, codewords, distortion, workers=workers)
        average = float(np.mean(values))
        if average < best_value:
            best_value, best_codewords, best_iteration = average, list(codewords), iteration
            best_orders = list(orders)
        history.averages.append(average)
        history.best.append(best_value)
        if iteration == max_iters or _converged(history.best, rel_tol, window):
            break

        reseeds = 0
        for j in range(M):
            members = np.flatnonzero(labels == j)
            if members.size == 0:
                codewords[j] = pool[int(rng.integers(len(pool)))]
                orders[j] = None
                reseeds += 1
                continue
            result = heuristic.compute_center([pool[int(i)] for i in members], distortion, rng)
            history.assignment_solves += result.assignment_solves
            codewords[j] = result.center
            order = result.details.get("order")
            orders[j] = [int(members[i]) for i in order] if order is not None else None
        history.reseeds.append(reseeds)
        logger.info(
            "LBG iteration %d: average=%.6g best=%.6g reseeds=%d", iteration + 1, average, best_value, reseeds
        )

    metadata = {
        "M": M,
        "heuristic": heuristic.get_heuristic_type(),
        "sample_count": len(pool),
        "seed": samples.seed,
        "iterations": len(history.averages) - 1,
        "best_iteration": best_iteration,
        "training_distortion": best_value,
        "center_orders": best_orders,
        **history.as_metadata(),
    }
    return Codebook(codewords=tuple(best_codewords), distortion=distortion, metadata=metadata)


def empty_codebook(dim: int, distortion: DistortionSpec) -> Codebook:
    """The single-codeword codebook holding the empty pattern."""
    return Codebook(codewords=(PointPattern.empty(dim),), distortion=distortion, metadata={"M": 1})


def _clamped_budget(cardinality: int, requested: int, group: TrainingSet) -> int:
    distinct = len(set(group.samples))
    if requested < 1:
        raise ConfigError(f"budget for cardinality {cardinality} must be at least 1, got {requested}")
    if requested > distinct:
        logger.warning(
            "cardinality %d: budget %d clamped to %d distinct training samples", cardinality, requested, distinct
        )
        return distinct
    return requested


def lbg_train_per_cardinality(
    samples: TrainingSet,
    budget: Mapping[int, int],
    cutoff: float,
    heuristic: CenterHeuristicPort,
    max_iters: int = DEFAULT_MAX_ITERS,
    rel_tol: float = DEFAULT_REL_TOL,
    rng: Optional[np.random.Generator] = None,
    window: int = DEFAULT_WINDOW,
    workers: int = 1,
) -> CodebookFamily:
    """One USOSPA codebook per cardinality present in ``samples``.

    Within a group USOSPA reduces to rho2 with costs capped at c^2. The empty
    pattern gets the one-codeword empty codebook whenever 0 appears in the
    samples or the budget.
    """
    rng = rng if rng is not None else np.random.default_rng()
    spec = DistortionSpec.usospa(cutoff)
    groups = samples.by_cardinality()
    if not groups:
        raise ConfigError("no training samples")
    dim = samples.samples[0].dim
    missing = sorted(k for k in groups if k > 0 and k not in budget)
    if missing:
        raise ConfigError(f"budget has no entry for cardinalities {missing}")

    codebooks: Dict[int, Codebook] = {}
    if 0 in groups or 0 in budget:
        codebooks[0] = empty_codebook(dim, spec)
    for cardinality, group in groups.items():
        if cardinality == 0:
            continue
        size = _clamped_budget(cardinality, int(budget[cardinality]), group)
        logger.info("training cardinality %d: %d samples, M=%d", cardinality, group.count, size)
        codebooks[cardinality] = lbg_train(
            group, size, spec, heuristic, max_iters=max_iters, rel_tol=rel_tol, rng=rng, window=window,
            workers=workers,
        )

    return CodebookFamily(
        codebooks=codebooks,
        distortion=spec,
        metadata={
            "heuristic": heuristic.get_heuristic_type(),
            "seed": samples.seed,
            "sample_count": samples.count,
            "budget": {k: codebooks[k].size for k in codebooks},
        },
    )


def random_codebook(
    sampler: SourceSamplerPort, M: int, distortion: DistortionSpec, rng: np.random.Generator
) -> Codebook:
    """Baseline codebook of M raw source realizations."""
    if M < 1:
        raise ConfigError(f"M must be at least 1, got {M}")
    codewords = tuple(sampler.sample_many(M, rng))
    return Codebook(codewords=codewords, distortion=distortion, metadata={"M": M, "heuristic": "random"})


def random_family(
    samples: TrainingSet, budget: Mapping[int, int], cutoff: float, rng: np.random.Generator
) -> CodebookFamily:
    """Baseline family: M_k raw training samples of each cardinality."""
    spec = DistortionSpec.usospa(cutoff)
    groups = samples.by_cardinality()
    dim = samples.samples[0].dim
    codebooks: Dict[int, Codebook] = {}
    if 0 in groups or 0 in budget:
        codebooks[0] = empty_codebook(dim, spec)
    for cardinality, group in groups.items():
        if cardinality == 0:
            continue
        if cardinality not in budget:
            raise ConfigError(f"budget has no entry for cardinality {cardinality}")
        size = min(int(budget[cardinality]), group.count)
        picks = rng.choice(group.count, size=size, replace=False)
        codebooks[cardinality] = Codebook(
            codewords=tuple(group.samples[int(i)] for i in picks), distortion=spec, metadata={"M": size}
        )
    return CodebookFamily(codebooks=codebooks, distortion=spec, metadata={"heuristic": "random"})


class CodebookTrainingUseCase:
    """Use case for training codebooks from a source sampler."""

    def __init__(
        self,
        sampler: SourceSamplerPort,
        heuristic: CenterHeuristicPort,
        max_iters: int = DEFAULT_MAX_ITERS,
        rel_tol: float = DEFAULT_REL_TOL,
        window: int = DEFAULT_WINDOW,
        workers: int = 1,
    ):
        self._sampler = sampler
        self._heuristic = heuristic
        self._max_iters = max_iters
        self._rel_tol = rel_tol
        self._window = window
        self._workers = workers

    def draw_training_set(self, count: int, rng: np.random.Generator, seed: Optional[int] = None) -> TrainingSet:
        if count < 1:
            raise ConfigError(f"training set size must be positive, got {count}")
        return TrainingSet(
            samples=tuple(self._sampler.sample_many(count, rng)),
            sampler=self._sampler.get_sampler_type(),
            seed=seed,
        )

    def train(
        self, training: TrainingSet, M: int, distortion: DistortionSpec, rng: np.random.Generator
    ) -> Codebook:
        codebook = lbg_train(
            training, M, distortion, self._heuristic, max_iters=self._max_iters, rel_tol=self._rel_tol,
            rng=rng, window=self._window, workers=self._workers,
        )
        codebook.metadata.update(self._sampler.describe())
        return codebook

    def train_per_cardinality(
        self, training: TrainingSet, budget: Mapping[int, int], cutoff: float, rng: np.random.Generator
    ) -> CodebookFamily:
        family = lbg_train_per_cardinality(
            training, budget, cutoff, self._heuristic, max_iters=self._max_iters, rel_tol=self._rel_tol,
            rng=rng, window=self._window, workers=self._workers,
        )
        family.metadata.update(self._sampler.describe())
        return family
