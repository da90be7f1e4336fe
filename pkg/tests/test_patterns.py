"""
Point pattern, codebook and RD point entities.
"""

import math

import numpy as np
import pytest

from core.entities.bound_params import PoissonBoundParams, max_concave_kmax, min_grid_size
from core.entities.patterns import (
    Codebook,
    CodebookFamily,
    DistortionSpec,
    PointPattern,
    RdPoint,
    TrainingSet,
    pattern_from_vector,
)
from core.exceptions import ConfigError, DimensionError, EmptyCodebookError, PreconditionError


def test_pattern_equality_ignores_order(square_pattern):
    reordered = PointPattern.create([[1.0, 1.0], [0.0, 1.0], [1.0, 0.0], [0.0, 0.0]])
    assert reordered == square_pattern
    assert hash(reordered) == hash(square_pattern)


def test_pattern_is_multiset():
    twice = PointPattern.create([[0.5, 0.5], [0.5, 0.5]])
    once = PointPattern.create([[0.5, 0.5], [0.25, 0.5]])
    assert twice.cardinality == 2
    assert twice != once


def test_points_are_read_only(square_pattern):
    with pytest.raises(ValueError):
        square_pattern.points[0, 0] = 3.0


def test_from_vector_and_back():
    pattern = PointPattern.from_vector([3.0, 4.0, 1.0, 2.0], k=2, d=2)
    assert pattern.cardinality == 2
    assert pattern.to_vector().tolist() == [1.0, 2.0, 3.0, 4.0]


def test_pattern_from_vector_forgets_block_order():
    vector = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6]
    swapped = [0.5, 0.6, 0.1, 0.2, 0.3, 0.4]
    pattern = pattern_from_vector(vector, 3, 2)
    assert pattern == pattern_from_vector(swapped, 3, 2)
    assert pattern == PointPattern.from_vector(vector, k=3, d=2)
    assert pattern != pattern_from_vector([0.1, 0.2, 0.3, 0.4, 0.6, 0.5], 3, 2)


def test_from_vector_rejects_wrong_length():
    with pytest.raises(DimensionError):
        PointPattern.from_vector([1.0, 2.0, 3.0], k=2, d=2)


def test_empty_pattern():
    empty = PointPattern.empty(2)
    assert empty.cardinality == 0
    assert empty.points.shape == (0, 2)
    assert empty == PointPattern(points=np.zeros((0, 2)), dim=2)


def test_bad_shape_raises_dimension_error():
    with pytest.raises(DimensionError):
        PointPattern(points=np.zeros((3, 3)), dim=2)


def test_distortion_spec_validation():
    assert DistortionSpec.rho2().label == "rho2"
    assert DistortionSpec.usospa(0.1).cutoff == 0.1
    with pytest.raises(ConfigError):
        DistortionSpec.usospa(0.0)
    with pytest.raises(ConfigError):
        DistortionSpec.usospa(math.inf)


def test_codebook_rate_is_log_size(square_pattern):
    codebook = Codebook(codewords=(square_pattern,) * 8, distortion=DistortionSpec.rho2())
    assert codebook.size == 8
    assert codebook.rate == pytest.approx(math.log(8))


def test_empty_codebook_rejected():
    with pytest.raises(EmptyCodebookError):
        Codebook(codewords=(), distortion=DistortionSpec.rho2())


def test_family_falls_back_to_nearest_smaller_cardinality():
    spec = DistortionSpec.usospa(0.1)
    one = Codebook(codewords=(PointPattern.create([[0.5, 0.5]]),), distortion=spec)
    three = Codebook(codewords=(PointPattern.create([[0.1, 0.1], [0.5, 0.5], [0.9, 0.9]]),), distortion=spec)
    family = CodebookFamily(codebooks={3: three, 1: one}, distortion=spec)
    assert family.cardinalities == [1, 3]
    assert family.total_size == 2
    assert family.codebook_for(2) is one
    assert family.codebook_for(7) is three


def test_rd_point_in_bits():
    point = RdPoint(distortion_D=0.5, rate_R=math.log(2.0) * 3, bound_id="x")
    assert point.in_bits().rate_R == pytest.approx(3.0)
    assert point.in_bits().params["units"] == "bits"


def test_rd_point_rejects_negative_distortion():
    with pytest.raises(ConfigError):
        RdPoint(distortion_D=-1.0, rate_R=0.0, bound_id="x")


def test_training_set_groups_by_cardinality(rng):
    samples = [PointPattern(points=rng.random((k, 2)), dim=2) for k in (2, 1, 2, 0)]
    groups = TrainingSet(samples=tuple(samples)).by_cardinality()
    assert list(groups) == [0, 1, 2]
    assert groups[2].count == 2
    assert groups[2].samples[0] is samples[0]


def test_concave_kmax_and_grid_floor_for_default_cutoff():
    assert max_concave_kmax(0.1) == 15
    assert min_grid_size(0.1) == 8


def test_poisson_params_defaults():
    params = PoissonBoundParams(mean_cardinality=10.0, cutoff=0.1, n_grid=64)
    assert params.k_max == 15
    assert params.concave
    assert params.n_max == 10
    assert params.s_range == pytest.approx((300.0, 1e8))


def test_poisson_params_nonconcave_slope_floor():
    params = PoissonBoundParams(mean_cardinality=10.0, cutoff=0.1, k_max=20)
    assert not params.concave
    assert params.s_range[0] == pytest.approx(100.0)


def test_poisson_params_grid_precondition():
    with pytest.raises(PreconditionError):
        PoissonBoundParams(mean_cardinality=10.0, cutoff=0.1, n_grid=7).require_grid()


def test_poisson_params_reject_inverted_slope_range():
    params = PoissonBoundParams(mean_cardinality=10.0, cutoff=0.1, s_range=(1e5, 1e3))
    with pytest.raises(ConfigError):
        params.validated_s_range()
