"""
Source samplers, quantized pair draws and seeded streams.
"""

import numpy as np
import pytest
from scipy import stats

from adapters.sampling.fixed_pattern_sampler import FixedPatternSamplerAdapter
from adapters.sampling.gaussian_sampler import GaussianFixedSamplerAdapter
from adapters.sampling.poisson_sampler import PoissonUnitSquareSamplerAdapter, sample_poisson_count
from adapters.sampling.quantized_pair import grid_centers, sample_quantized_pair, sample_quantized_pair_poisson
from core.exceptions import ConfigError
from core.services.random_streams import make_rng, spawn_streams


def test_gaussian_sampler_shape(rng):
    sampler = GaussianFixedSamplerAdapter(k=4, d=3)
    pattern = sampler.sample(rng)
    assert pattern.cardinality == 4
    assert pattern.dim == 3
    assert sampler.get_sampler_type() == "gaussian"
    assert sampler.describe()["k"] == 4


def test_gaussian_sampler_moments():
    rng = make_rng(0, 1)
    values = np.concatenate([pattern.points.ravel() for pattern in GaussianFixedSamplerAdapter(2, 2).sample_many(25_000, rng)])
    assert abs(values.mean()) < 4 / np.sqrt(values.size)
    assert abs(values.var() - 1.0) < 5 * np.sqrt(2.0 / values.size)


def test_poisson_sampler_points_in_unit_square(rng):
    sampler = PoissonUnitSquareSamplerAdapter(mean_cardinality=10.0)
    for pattern in sampler.sample_many(200, rng):
        assert pattern.dim == 2
        if pattern.cardinality:
            assert pattern.points.min() >= 0.0
            assert pattern.points.max() < 1.0


def test_poisson_counts_fit_the_pmf():
    rng = make_rng(3, 9)
    count = 20_000
    sizes = np.array([sample_poisson_count(10.0, rng) for _ in range(count)])
    assert abs(sizes.mean() - 10.0) < 4 * np.sqrt(10.0 / count)
    # tails pooled into the end bins 2 and 22
    observed = np.bincount(np.clip(sizes, 2, 22) - 2, minlength=21).astype(float)
    probabilities = stats.poisson.pmf(np.arange(2, 23), 10.0)
    probabilities[0] = stats.poisson.cdf(2, 10.0)
    probabilities[-1] = stats.poisson.sf(21, 10.0)
    assert stats.chisquare(observed, probabilities * count).pvalue > 1e-4


def test_poisson_count_edge_cases(rng):
    assert sample_poisson_count(0.0, rng) == 0
    assert sample_poisson_count(200.0, rng) > 100
    with pytest.raises(ConfigError):
        sample_poisson_count(-1.0, rng)


def test_fixed_sampler_ignores_rng(square_pattern, rng):
    sampler = FixedPatternSamplerAdapter(square_pattern)
    assert sampler.sample(rng) is square_pattern
    assert sampler.get_dimension() == 2


def test_seeded_streams_are_reproducible():
    sampler = PoissonUnitSquareSamplerAdapter(mean_cardinality=5.0)
    first = sampler.sample_many(30, make_rng(7, 2, 0))
    second = sampler.sample_many(30, make_rng(7, 2, 0))
    assert all(np.array_equal(a.points, b.points) for a, b in zip(first, second))


def test_sub_streams_differ():
    a, b = spawn_streams(7, 2, 5)
    assert a.random() != b.random()
    assert make_rng(7, 5, 1).random() == spawn_streams(7, 2, 5)[1].random()


def test_grid_centers():
    centers = grid_centers(2)
    assert centers.tolist() == [[0.25, 0.25], [0.25, 0.75], [0.75, 0.25], [0.75, 0.75]]
    with pytest.raises(ConfigError):
        grid_centers(0)


def test_quantized_pair_points_share_cells(rng):
    for _ in range(100):
        X, Y = sample_quantized_pair(10, 4, rng)
        assert X.cardinality == Y.cardinality == 4
        assert np.all(np.abs(X.points - Y.points) <= 0.05 + 1e-12)
        assert np.allclose((Y.points * 20 - 1) / 2, np.round((Y.points * 20 - 1) / 2))


def test_quantized_pair_marginal_is_uniform():
    rng = make_rng(1, 3)
    xs = np.concatenate([sample_quantized_pair(10, 4, rng)[0].points for _ in range(5000)])
    for axis in range(2):
        assert stats.kstest(xs[:, axis], "uniform").statistic < 0.03


def test_quantized_pair_poisson_cardinality(rng):
    sizes = [sample_quantized_pair_poisson(10, 3.0, rng)[0].cardinality for _ in range(2000)]
    assert abs(np.mean(sizes) - 3.0) < 0.2


def test_quantized_pair_rejects_negative_cardinality(rng):
    with pytest.raises(ConfigError):
        sample_quantized_pair(10, -1, rng)
