"""
Monte Carlo distortion estimates and operational RD points.
"""

import math

import pytest

from adapters.sampling.fixed_pattern_sampler import FixedPatternSamplerAdapter
from adapters.sampling.gaussian_sampler import GaussianFixedSamplerAdapter
from config.adapter_factory import AdapterFactory
from core.entities.patterns import Codebook, CodebookFamily, DistortionSpec, PointPattern
from core.exceptions import ConfigError
from core.services.poisson_bounds import quantizer_distortion_fixed
from core.usecases.distortion_estimation import (
    DistortionEstimationUseCase,
    estimate_distortion,
    estimate_quantized_pair_distortion,
    operational_point,
)

RHO2 = DistortionSpec.rho2()


@pytest.fixture
def gaussian_codebook():
    codewords = tuple(PointPattern.create([[x, 0.0], [-x, 0.0]]) for x in (0.5, 1.0, 1.5, 2.0))
    return Codebook(codewords=codewords, distortion=RHO2, metadata={"heuristic": "manual", "seed": 0})


def test_estimate_does_not_depend_on_workers(gaussian_codebook):
    sampler = GaussianFixedSamplerAdapter(k=2, d=2)
    serial = estimate_distortion(gaussian_codebook, sampler, 2500, seed=11, chunk_size=300)
    threaded = estimate_distortion(gaussian_codebook, sampler, 2500, seed=11, workers=4, chunk_size=300)
    assert serial == threaded


def test_estimate_changes_with_seed(gaussian_codebook):
    sampler = GaussianFixedSamplerAdapter(k=2, d=2)
    first, _ = estimate_distortion(gaussian_codebook, sampler, 500, seed=1)
    second, _ = estimate_distortion(gaussian_codebook, sampler, 500, seed=2)
    assert first != second


def test_estimate_of_a_point_mass_is_exact(square_pattern):
    codebook = Codebook(codewords=(square_pattern,), distortion=RHO2)
    mean, stderr = estimate_distortion(codebook, FixedPatternSamplerAdapter(square_pattern), 200, seed=0)
    assert mean == 0.0
    assert stderr == 0.0


def test_estimate_needs_enough_samples(gaussian_codebook):
    with pytest.raises(ConfigError):
        estimate_distortion(gaussian_codebook, GaussianFixedSamplerAdapter(2, 2), 99, seed=0)


def test_operational_point_for_family():
    spec = DistortionSpec.usospa(0.1)
    family = CodebookFamily(
        codebooks={
            1: Codebook(codewords=(PointPattern.create([[0.5, 0.5]]),) * 3, distortion=spec),
            2: Codebook(codewords=(PointPattern.create([[0.2, 0.2], [0.8, 0.8]]),) * 5, distortion=spec),
        },
        distortion=spec,
    )
    point = operational_point(family, 0.02, 0.001)
    assert point.rate_R == pytest.approx(math.log(8))
    assert point.params["M"] == 8
    assert point.params["cutoff"] == 0.1
    assert point.params["stderr"] == 0.001


def test_use_case_reports_rate_and_samples(gaussian_codebook):
    point = DistortionEstimationUseCase(GaussianFixedSamplerAdapter(2, 2)).evaluate(gaussian_codebook, 300, seed=5)
    assert point.rate_R == pytest.approx(math.log(4))
    assert point.params["samples"] == 300
    assert point.params["source"] == "gaussian"
    assert point.distortion_D > 0


def test_quantized_pair_fixed_cardinality_mean():
    draw = AdapterFactory.create_pair_draw(10, k=4)
    mean, stderr = estimate_quantized_pair_distortion(draw, 0.1, 4000, seed=3)
    assert abs(mean - quantizer_distortion_fixed(4, 10)) < 4 * stderr


@pytest.mark.slow
def test_quantized_pair_poisson_mean():
    draw = AdapterFactory.create_pair_draw(10, mean_cardinality=10.0)
    mean, stderr = estimate_quantized_pair_distortion(draw, 0.1, 100_000, seed=0, workers=4)
    assert abs(mean - 1.0 / 60.0) < 3 * stderr
