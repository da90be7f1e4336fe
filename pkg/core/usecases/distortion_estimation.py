"""
Monte Carlo distortion estimation use cases.

Samples are drawn in fixed-size chunks; chunk i always uses sub-stream
(seed, stream, i), so the estimate is identical for any worker count.
Chunk results are concatenated in chunk order before averaging.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple, Union

import numpy as np

from core.entities.patterns import Codebook, CodebookFamily, DistortionSpec, PointPattern, RdPoint
from core.exceptions import ConfigError
from core.ports.source_sampler import SourceSamplerPort
from core.services.distortion import usospa
from core.services.encoding import encoding_distortions
from core.services.random_streams import EVALUATION_STREAM, QUANTIZED_PAIR_STREAM, make_rng

logger = logging.getLogger(__name__)

MIN_SAMPLES = 100
DEFAULT_CHUNK_SIZE = 10_000

PairDraw = Callable[[np.random.Generator], Tuple[PointPattern, PointPattern]]


def _chunk_sizes(n_samples: int, chunk_size: int) -> List[int]:
    if chunk_size < 1:
        raise ConfigError(f"chunk size must be positive, got {chunk_size}")
    full, rest = divmod(n_samples, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def _run_chunks(
    work: Callable[[int, int], np.ndarray], n_samples: int, chunk_size: int, workers: int
) -> np.ndarray:
    sizes = _chunk_sizes(n_samples, chunk_size)
    jobs = list(enumerate(sizes))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: work(*job), jobs))
    else:
        parts = [work(index, size) for index, size in jobs]
    return np.concatenate(parts)


def _summarize(values: np.ndarray) -> Tuple[float, float]:
    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0
    return mean, stderr


def estimate_distortion(
    target: Union[Codebook, CodebookFamily],
    sampler: SourceSamplerPort,
    n_samples: int,
    seed: Optional[int],
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> Tuple[float, float]:
    """Mean distortion of fresh samples to their encodings, and its standard error."""
    if n_samples < MIN_SAMPLES:
        raise ConfigError(f"need at least {MIN_SAMPLES} evaluation samples, got {n_samples}")

    def work(index: int, size: int) -> np.ndarray:
        rng = make_rng(seed, EVALUATION_STREAM, index)
        return encoding_distortions(sampler.sample_many(size, rng), target)

    mean, stderr = _summarize(_run_chunks(work, n_samples, chunk_size, workers))
    logger.info("estimated distortion %.6g +/- %.2g over %d samples", mean, stderr, n_samples)
    return mean, stderr


def estimate_quantized_pair_distortion(
    draw_pair: PairDraw,
    cutoff: float,
    n_samples: int,
    seed: Optional[int],
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> Tuple[float, float]:
    """Mean USOSPA between the two patterns of a joint draw, and its standard error."""
    if n_samples < MIN_SAMPLES:
        raise ConfigError(f"need at least {MIN_SAMPLES} samples, got {n_samples}")
    spec = DistortionSpec.usospa(cutoff)

    def work(index: int, size: int) -> np.ndarray:
        rng = make_rng(seed, QUANTIZED_PAIR_STREAM, index)
        values = np.empty(size)
        for position in range(size):
            X, Y = draw_pair(rng)
            values[position] = usospa(X, Y, spec.cutoff)
        return values

    return _summarize(_run_chunks(work, n_samples, chunk_size, workers))


def operational_point(
    codebook: Union[Codebook, CodebookFamily], distortion_estimate: float, stderr: Optional[float] = None
) -> RdPoint:
    """(D~, log M): any M-codeword code upper-bounds R at its own distortion."""
    if isinstance(codebook, CodebookFamily):
        size, rate = codebook.total_size, codebook.rate
    else:
        size, rate = codebook.size, codebook.rate
    params = {
        "M": size,
        "heuristic": codebook.metadata.get("heuristic"),
        "seed": codebook.metadata.get("seed"),
        "distortion": codebook.distortion.label,
    }
    if codebook.distortion.is_usospa:
        params["cutoff"] = codebook.distortion.cutoff
    if stderr is not None:
        params["stderr"] = stderr
    return RdPoint(distortion_D=max(distortion_estimate, 0.0), rate_R=rate, bound_id="codebook", params=params)


class DistortionEstimationUseCase:
    """Use case for evaluating codebooks on fresh source samples."""

    def __init__(self, sampler: SourceSamplerPort, workers: int = 1, chunk_size: int = DEFAULT_CHUNK_SIZE):
        self._sampler = sampler
        self._workers = workers
        self._chunk_size = chunk_size

    def evaluate(
        self, codebook: Union[Codebook, CodebookFamily], n_samples: int, seed: Optional[int]
    ) -> RdPoint:
        mean, stderr = estimate_distortion(
            codebook, self._sampler, n_samples, seed, workers=self._workers, chunk_size=self._chunk_size
        )
        point = operational_point(codebook, mean, stderr)
        point.params.update(self._sampler.describe())
        point.params["samples"] = n_samples
        return point
