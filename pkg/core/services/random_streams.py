"""
Seeded, splittable random streams.

Every generator is a PCG64 built from ``SeedSequence(seed, spawn_key=stream)``
so sub-stream (seed, i) is fixed no matter how many workers consume it.
"""

from typing import List, Optional

import numpy as np

# Stream tags keep training, evaluation and verification draws apart.
TRAINING_STREAM = 1
EVALUATION_STREAM = 2
QUANTIZED_PAIR_STREAM = 3
VERIFICATION_STREAM = 4


def make_rng(seed: Optional[int], *stream: int) -> np.random.Generator:
    """Generator for the sub-stream ``stream`` of ``seed``."""
    if seed is None:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(spawn_key=tuple(stream))))
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(part) for part in stream))
    return np.random.Generator(np.random.PCG64(sequence))


def spawn_streams(seed: Optional[int], n: int, *prefix: int) -> List[np.random.Generator]:
    """n independent generators; generator i depends only on (seed, prefix, i)."""
    return [make_rng(seed, *prefix, index) for index in range(n)]
