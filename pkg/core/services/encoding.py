"""
Nearest-codeword encoding and the LBG partition step.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from core.entities.patterns import Codebook, CodebookFamily, DistortionSpec, PointPattern
from core.exceptions import ApplicabilityError, EmptyCodebookError
from core.services.distortion import distortion, distortion_matrix


@dataclass(frozen=True)
class EncodedPattern:
    """Where a pattern was encoded and at what cost."""

    cardinality: int
    index: int
    distortion: float
    fallback: bool = False


def nearest_index(X: PointPattern, codewords: Sequence[PointPattern], spec: DistortionSpec) -> Tuple[int, float]:
    """argmin_j rho(X, codewords[j]); ties go to the smallest index."""
    if len(codewords) == 0:
        raise EmptyCodebookError("cannot encode against an empty codebook")
    values = distortion_matrix([X], codewords, spec)[0]
    index = int(np.argmin(values))
    return index, float(values[index])


def nearest_codeword(X: PointPattern, codebook: Codebook) -> int:
    """Index of the nearest codeword under the codebook's distortion."""
    return nearest_index(X, codebook.codewords, codebook.distortion)[0]


def encode(X: PointPattern, target: Union[Codebook, CodebookFamily]) -> EncodedPattern:
    """Encode against a codebook or, for a family, the codebook of |X|.

    Untrained cardinalities use the nearest trained one (ties toward the
    smaller) and pay the full USOSPA including the cardinality penalty.
    """
    if isinstance(target, Codebook):
        index, value = nearest_index(X, target.codewords, target.distortion)
        return EncodedPattern(cardinality=X.cardinality, index=index, distortion=value)

    codebook = target.codebook_for(X.cardinality)
    trained = codebook.codewords[0].cardinality
    fallback = trained != X.cardinality
    if fallback and not target.distortion.is_usospa:
        raise ApplicabilityError(
            f"no codebook for cardinality {X.cardinality} and rho2 cannot compare across cardinalities"
        )
    index, value = nearest_index(X, codebook.codewords, target.distortion)
    return EncodedPattern(cardinality=trained, index=index, distortion=value, fallback=fallback)


def _partition_chunk(
    samples: Sequence[PointPattern], codewords: Sequence[PointPattern], spec: DistortionSpec
) -> Tuple[np.ndarray, np.ndarray]:
    matrix = distortion_matrix(samples, codewords, spec)
    labels = np.argmin(matrix, axis=1)
    return labels, matrix[np.arange(len(samples)), labels]


def partition(
    samples: Sequence[PointPattern],
    codewords: Sequence[PointPattern],
    spec: DistortionSpec,
    workers: int = 1,
    chunk_size: int = 2048,
) -> Tuple[np.ndarray, np.ndarray]:
    """Label every sample with its nearest codeword.

    Returns (labels, distortions). Chunks are evaluated independently and
    concatenated in order, so the result does not depend on ``workers``.
    """
    samples = list(samples)
    if not codewords:
        raise EmptyCodebookError("cannot partition against an empty codebook")
    if not samples:
        return np.zeros(0, dtype=np.intp), np.zeros(0)
    chunks: List[Sequence[PointPattern]] = [
        samples[start:start + chunk_size] for start in range(0, len(samples), chunk_size)
    ]
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda chunk: _partition_chunk(chunk, codewords, spec), chunks))
    else:
        results = [_partition_chunk(chunk, codewords, spec) for chunk in chunks]
    labels = np.concatenate([result[0] for result in results])
    values = np.concatenate([result[1] for result in results])
    return labels, values


def encoding_distortions(
    samples: Sequence[PointPattern], target: Union[Codebook, CodebookFamily]
) -> np.ndarray:
    """Distortion of every sample to its encoding, in sample order."""
    samples = list(samples)
    if isinstance(target, Codebook):
        if not samples:
            return np.zeros(0)
        return _partition_chunk(samples, target.codewords, target.distortion)[1]

    values = np.empty(len(samples))
    groups: Dict[int, List[int]] = {}
    for position, sample in enumerate(samples):
        groups.setdefault(sample.cardinality, []).append(position)
    for cardinality, positions in groups.items():
        codebook = target.codebook_for(cardinality)
        if codebook.codewords[0].cardinality != cardinality and not target.distortion.is_usospa:
            raise ApplicabilityError(f"no codebook for cardinality {cardinality} under rho2")
        group = [samples[position] for position in positions]
        values[positions] = _partition_chunk(group, codebook.codewords, target.distortion)[1]
    return values


def average_distortion(samples: Sequence[PointPattern], center: PointPattern, spec: DistortionSpec) -> float:
    """Mean distortion of a cell to a candidate center."""
    return float(np.mean([distortion(sample, center, spec) for sample in samples]))
