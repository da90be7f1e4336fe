"""
Plain-text point pattern codec: one pattern per line, ``k;d;x1,y1;x2,y2;...``.
Floats are written with repr so a parse gives back the same doubles.
"""

import logging
from pathlib import Path
from typing import Iterable, List

import numpy as np

from core.entities.patterns import PointPattern
from core.exceptions import DimensionError, InputError

logger = logging.getLogger(__name__)


def format_pattern(pattern: PointPattern) -> str:
    fields = [str(pattern.cardinality), str(pattern.dim)]
    fields.extend(",".join(repr(float(value)) for value in point) for point in pattern.points)
    return ";".join(fields)


def parse_pattern(line: str) -> PointPattern:
    fields = line.strip().split(";")
    if len(fields) < 2:
        raise InputError(f"pattern line needs at least 'k;d', got {line!r}")
    try:
        k, d = int(fields[0]), int(fields[1])
    except ValueError as e:
        raise InputError(f"bad pattern header in {line!r}") from e
    if len(fields) - 2 != k:
        raise DimensionError(f"pattern line declares {k} points but has {len(fields) - 2}")
    try:
        rows = [[float(value) for value in field.split(",")] for field in fields[2:]]
    except ValueError as e:
        raise InputError(f"bad coordinate in {line!r}") from e
    if any(len(row) != d for row in rows):
        raise DimensionError(f"pattern line {line!r} has points without {d} coordinates")
    return PointPattern(points=np.array(rows, dtype=np.float64).reshape(k, d), dim=d)


def dump_patterns(patterns: Iterable[PointPattern]) -> str:
    return "".join(format_pattern(pattern) + "\n" for pattern in patterns)


def load_patterns(text: str) -> List[PointPattern]:
    return [parse_pattern(line) for line in text.splitlines() if line.strip()]


def save_patterns(patterns: Iterable[PointPattern], path: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(dump_patterns(patterns), encoding="utf-8")
    logger.info("patterns written to %s", target)
