"""
LBG training, per-cardinality families and encoding.
"""

import math

import numpy as np
import pytest

from adapters.centers.exact import ExactCenterAdapter, center_exact
from adapters.centers.modified_single_hub import ModifiedSingleHubCenterAdapter, center_modified_single_hub
from adapters.centers.single_hub import SingleHubCenterAdapter, center_single_hub
from adapters.sampling.gaussian_sampler import GaussianFixedSamplerAdapter
from adapters.sampling.poisson_sampler import PoissonUnitSquareSamplerAdapter
from core.entities.patterns import Codebook, CodebookFamily, DistortionSpec, PointPattern, TrainingSet
from core.exceptions import ApplicabilityError, ConfigError, EmptyCodebookError
from core.services.encoding import encode, encoding_distortions, nearest_codeword, partition
from core.usecases.codebook_training import (
    CodebookTrainingUseCase,
    lbg_train,
    lbg_train_per_cardinality,
    random_codebook,
    random_family,
)
from tests.conftest import random_pattern

RHO2 = DistortionSpec.rho2()


@pytest.fixture
def gaussian_training():
    rng = np.random.default_rng(21)
    sampler = GaussianFixedSamplerAdapter(k=3, d=2)
    return TrainingSet(samples=tuple(sampler.sample_many(300, rng)), sampler="gaussian", seed=21)


def test_full_budget_reaches_zero_distortion(rng):
    training = TrainingSet(samples=tuple(random_pattern(rng, 3) for _ in range(20)))
    codebook = lbg_train(training, 20, RHO2, ModifiedSingleHubCenterAdapter(), rng=rng)
    assert codebook.size == 20
    assert codebook.metadata["training_distortion"] == 0.0


def test_best_distortion_never_increases(gaussian_training, rng):
    codebook = lbg_train(gaussian_training, 8, RHO2, SingleHubCenterAdapter(), max_iters=8, rel_tol=0.0, rng=rng)
    best = codebook.metadata["best_history"]
    assert all(b <= a for a, b in zip(best, best[1:]))
    assert codebook.metadata["training_distortion"] == best[-1]
    assert codebook.metadata["training_distortion"] < codebook.metadata["history"][0]


def test_exact_centers_never_raise_the_scored_distortion(rng):
    training = TrainingSet(samples=tuple(random_pattern(rng, 1) for _ in range(120)))
    codebook = lbg_train(training, 6, RHO2, ExactCenterAdapter(), max_iters=10, rel_tol=0.0, rng=rng)
    history = codebook.metadata["history"]
    assert len(history) > 1
    assert all(b <= a + 1e-12 for a, b in zip(history, history[1:]))


def test_single_hub_is_exact_for_two_pattern_cells(rng):
    for _ in range(10):
        cell = [random_pattern(rng, 4) for _ in range(2)]
        single = center_single_hub(cell, 0, RHO2).center
        exact = center_exact(cell).center
        assert np.allclose(single.canonical(), exact.canonical())


def test_modified_single_hub_orders_reach_metadata(gaussian_training):
    codebook = lbg_train(gaussian_training, 4, RHO2, ModifiedSingleHubCenterAdapter(), max_iters=5, rel_tol=0.0,
                         rng=np.random.default_rng(2))
    orders = codebook.metadata["center_orders"]
    assert len(orders) == codebook.size
    assert codebook.metadata["best_iteration"] >= 1
    pool = gaussian_training.samples
    for codeword, order in zip(codebook.codewords, orders):
        if order is None:
            continue
        visited = [pool[index] for index in order]
        rebuilt = center_modified_single_hub(visited, list(range(len(visited))), RHO2).center
        assert np.allclose(rebuilt.canonical(), codeword.canonical())
    assert any(order is not None for order in orders)


def test_fixed_hub_heuristics_record_no_order(gaussian_training, rng):
    codebook = lbg_train(gaussian_training, 4, RHO2, SingleHubCenterAdapter(), max_iters=2, rng=rng)
    assert codebook.metadata["center_orders"] == [None] * 4


def test_training_is_reproducible(gaussian_training):
    first = lbg_train(gaussian_training, 6, RHO2, ModifiedSingleHubCenterAdapter(), max_iters=5,
                      rng=np.random.default_rng(4))
    second = lbg_train(gaussian_training, 6, RHO2, ModifiedSingleHubCenterAdapter(), max_iters=5,
                       rng=np.random.default_rng(4))
    assert first.codewords == second.codewords


def test_training_does_not_depend_on_workers(gaussian_training):
    serial = lbg_train(gaussian_training, 6, RHO2, SingleHubCenterAdapter(), max_iters=4,
                       rng=np.random.default_rng(9))
    threaded = lbg_train(gaussian_training, 6, RHO2, SingleHubCenterAdapter(), max_iters=4,
                         rng=np.random.default_rng(9), workers=4)
    assert serial.codewords == threaded.codewords


def test_zero_iterations_returns_initial_codebook(gaussian_training, rng):
    codebook = lbg_train(gaussian_training, 5, RHO2, SingleHubCenterAdapter(), max_iters=0, rng=rng)
    assert codebook.metadata["iterations"] == 0
    assert all(codeword in gaussian_training.samples for codeword in codebook.codewords)


def test_training_rejects_bad_sizes(gaussian_training, rng):
    with pytest.raises(ConfigError):
        lbg_train(gaussian_training, 0, RHO2, SingleHubCenterAdapter(), rng=rng)
    with pytest.raises(ConfigError):
        lbg_train(gaussian_training, 301, RHO2, SingleHubCenterAdapter(), rng=rng)


def test_mixed_cardinality_needs_per_cardinality_training(rng):
    training = TrainingSet(samples=(random_pattern(rng, 2), random_pattern(rng, 3), random_pattern(rng, 3)))
    with pytest.raises(ApplicabilityError):
        lbg_train(training, 2, RHO2, SingleHubCenterAdapter(), rng=rng)


def test_trained_codebook_beats_random(gaussian_training):
    rng = np.random.default_rng(2)
    sampler = GaussianFixedSamplerAdapter(k=3, d=2)
    trained = lbg_train(gaussian_training, 16, RHO2, ModifiedSingleHubCenterAdapter(), rng=rng)
    baseline = random_codebook(sampler, 16, RHO2, rng)
    fresh = sampler.sample_many(2000, np.random.default_rng(77))
    assert encoding_distortions(fresh, trained).mean() < encoding_distortions(fresh, baseline).mean()


def test_per_cardinality_family():
    rng = np.random.default_rng(8)
    sampler = PoissonUnitSquareSamplerAdapter(mean_cardinality=3.0)
    training = TrainingSet(samples=tuple(sampler.sample_many(400, rng)), sampler="poisson", seed=8)
    budget = {k: 4 for k in range(1, 15)}
    family = lbg_train_per_cardinality(training, budget, 0.1, SingleHubCenterAdapter(), max_iters=5, rng=rng)
    assert family.distortion == DistortionSpec.usospa(0.1)
    assert set(family.cardinalities) == set(training.cardinalities()) | {0}
    assert family.codebooks[0].codewords == (PointPattern.empty(2),)
    for cardinality, codebook in family.codebooks.items():
        assert all(codeword.cardinality == cardinality for codeword in codebook.codewords)
        assert codebook.size <= 4
    assert family.rate == pytest.approx(math.log(family.total_size))


def test_budget_is_clamped_to_distinct_samples(rng):
    single = PointPattern.create([[0.2, 0.2]])
    pair = [random_pattern(rng, 2) for _ in range(3)]
    training = TrainingSet(samples=(single, single) + tuple(pair))
    family = lbg_train_per_cardinality(training, {1: 5, 2: 2}, 0.1, SingleHubCenterAdapter(), rng=rng)
    assert family.codebooks[1].size == 1
    assert family.codebooks[2].size == 2


def test_missing_budget_entry_rejected(rng):
    training = TrainingSet(samples=(random_pattern(rng, 1), random_pattern(rng, 2)))
    with pytest.raises(ConfigError):
        lbg_train_per_cardinality(training, {1: 1}, 0.1, SingleHubCenterAdapter(), rng=rng)


def test_random_family_sizes(rng):
    training = TrainingSet(samples=tuple(random_pattern(rng, k) for k in (0, 1, 1, 2, 2, 2)))
    family = random_family(training, {1: 1, 2: 5}, 0.1, rng)
    assert family.codebooks[1].size == 1
    assert family.codebooks[2].size == 3
    assert family.codebooks[0].size == 1


def test_encode_prefers_nearest_and_lowest_index():
    a = PointPattern.create([[0.0, 0.0]])
    b = PointPattern.create([[1.0, 0.0]])
    codebook = Codebook(codewords=(a, b, a), distortion=RHO2)
    assert nearest_codeword(PointPattern.create([[0.1, 0.0]]), codebook) == 0
    assert nearest_codeword(PointPattern.create([[0.9, 0.0]]), codebook) == 1


def test_encode_family_fallback_pays_cardinality_penalty():
    spec = DistortionSpec.usospa(0.1)
    one = Codebook(codewords=(PointPattern.create([[0.5, 0.5]]),), distortion=spec)
    family = CodebookFamily(codebooks={1: one}, distortion=spec)
    encoded = encode(PointPattern.create([[0.5, 0.5], [0.1, 0.1]]), family)
    assert encoded.fallback
    assert encoded.cardinality == 1
    assert encoded.distortion == pytest.approx(0.01)


def test_encode_family_without_fallback_under_rho2():
    family = CodebookFamily(
        codebooks={1: Codebook(codewords=(PointPattern.create([[0.5, 0.5]]),), distortion=RHO2)}, distortion=RHO2
    )
    with pytest.raises(ApplicabilityError):
        encode(PointPattern.create([[0.5, 0.5], [0.1, 0.1]]), family)


def test_partition_is_worker_independent(rng):
    samples = [random_pattern(rng, 2) for _ in range(500)]
    codewords = [random_pattern(rng, 2) for _ in range(5)]
    serial = partition(samples, codewords, RHO2, chunk_size=64)
    threaded = partition(samples, codewords, RHO2, workers=3, chunk_size=64)
    assert np.array_equal(serial[0], threaded[0])
    assert np.array_equal(serial[1], threaded[1])


def test_partition_needs_codewords(rng):
    with pytest.raises(EmptyCodebookError):
        partition([random_pattern(rng, 2)], [], RHO2)


def test_use_case_records_source(rng):
    sampler = GaussianFixedSamplerAdapter(k=2, d=2)
    trainer = CodebookTrainingUseCase(sampler, SingleHubCenterAdapter(), max_iters=3)
    training = trainer.draw_training_set(50, rng, seed=3)
    assert training.count == 50
    assert training.seed == 3
    codebook = trainer.train(training, 4, RHO2, rng)
    assert codebook.metadata["source"] == "gaussian"
    assert codebook.metadata["heuristic"] == "single_hub"
    with pytest.raises(ConfigError):
        trainer.draw_training_set(0, rng)
