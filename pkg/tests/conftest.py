"""
Shared fixtures. The test settings profile is selected before any project
module reads the environment.
"""

import os

os.environ["ENVIRONMENT"] = "test"

import numpy as np
import pytest

from adapters.centers.exact import ExactCenterAdapter
from adapters.centers.modified_single_hub import ModifiedSingleHubCenterAdapter
from adapters.centers.multi_hub import MultiHubCenterAdapter
from adapters.centers.single_hub import SingleHubCenterAdapter
from core.entities.patterns import PointPattern


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def square_pattern():
    """Corners of the unit square."""
    return PointPattern.create([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])


@pytest.fixture
def heuristics():
    return {
        "single_hub": SingleHubCenterAdapter(),
        "multi_hub": MultiHubCenterAdapter(),
        "modified_single_hub": ModifiedSingleHubCenterAdapter(),
        "exact": ExactCenterAdapter(),
    }


def random_pattern(rng: np.random.Generator, k: int, d: int = 2) -> PointPattern:
    return PointPattern(points=rng.random((k, d)), dim=d)


def shuffled(pattern: PointPattern, rng: np.random.Generator) -> PointPattern:
    return PointPattern(points=pattern.points[rng.permutation(pattern.cardinality)], dim=pattern.dim)
