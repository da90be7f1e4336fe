"""
Center heuristics for a cell of equal-cardinality patterns.
"""

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from adapters.centers.alignment import aligned_cost
from adapters.centers.exact import ExactCenterAdapter, center_exact, collection_count
from adapters.centers.modified_single_hub import center_modified_single_hub
from adapters.centers.multi_hub import center_multi_hub
from adapters.centers.single_hub import center_single_hub
from core.entities.patterns import DistortionSpec, PointPattern
from core.exceptions import ApplicabilityError, ConfigError, InputError, SizeError
from core.services import assignment as assignment_service
from core.services.assignment import count_solves
from core.services.encoding import average_distortion
from tests.conftest import random_pattern, shuffled

RHO2 = DistortionSpec.rho2()


def test_identical_patterns_are_their_own_center(square_pattern, rng, heuristics):
    cell = [shuffled(square_pattern, rng) for _ in range(4)]
    for heuristic in heuristics.values():
        result = heuristic.compute_center(cell, RHO2, rng)
        assert np.allclose(result.center.canonical(), square_pattern.canonical())


def test_single_pattern_cell(square_pattern, heuristics):
    for heuristic in heuristics.values():
        assert heuristic.compute_center([square_pattern], RHO2).center == square_pattern


def test_exact_center_beats_heuristics_and_random_candidates(heuristics):
    rng = np.random.default_rng(5)
    for _ in range(20):
        cell = [random_pattern(rng, 3) for _ in range(3)]
        best = average_distortion(cell, heuristics["exact"].compute_center(cell, RHO2).center, RHO2)
        for name, heuristic in heuristics.items():
            rival = average_distortion(cell, heuristic.compute_center(cell, RHO2, rng).center, RHO2)
            assert best <= rival + 1e-12, name
        for _ in range(100):
            assert best <= average_distortion(cell, random_pattern(rng, 3), RHO2) + 1e-12


def test_multi_hub_picks_lowest_aligned_cost(rng):
    cell = [random_pattern(rng, 4) for _ in range(6)]
    multi = center_multi_hub(cell, RHO2)
    for hub in range(len(cell)):
        single = center_single_hub(cell, hub, RHO2)
        assert multi.details["aligned_cost"] <= aligned_cost(single.cliques, single.center.points, None) + 1e-12
    assert average_distortion(cell, multi.center, RHO2) <= multi.details["aligned_cost"] + 1e-12


def test_aligned_cost_respects_cut_off():
    cell = [PointPattern.create([[0.0, 0.0]]), PointPattern.create([[1.0, 0.0]])]
    result = center_single_hub(cell, 0)
    assert aligned_cost(result.cliques, result.center.points, None) == pytest.approx(0.25)
    assert aligned_cost(result.cliques, result.center.points, 0.01) == pytest.approx(0.01)


def test_solve_counts_match_real_solver_calls(rng, heuristics, monkeypatch):
    calls = []

    def counting_solver(matrix):
        calls.append(matrix.shape)
        return linear_sum_assignment(matrix)

    monkeypatch.setattr(assignment_service, "linear_sum_assignment", counting_solver)
    cell = [random_pattern(rng, 3) for _ in range(5)]
    for name, heuristic in heuristics.items():
        calls.clear()
        with count_solves() as counter:
            result = heuristic.compute_center(cell, RHO2, rng)
        assert len(calls) == counter.count == result.assignment_solves, name
        assert result.assignment_solves == heuristic.expected_solves(len(cell)), name
        assert result.heuristic == name
    assert heuristics["single_hub"].expected_solves(5) == 4
    assert heuristics["multi_hub"].expected_solves(5) == 20
    assert heuristics["exact"].expected_solves(5) == 0


def test_cliques_partition_every_pattern(rng):
    cell = [random_pattern(rng, 4) for _ in range(5)]
    result = center_single_hub(cell, 2, RHO2)
    for permutation in result.cliques.permutations:
        assert sorted(permutation) == [0, 1, 2, 3]
    assert result.cliques.clique_count == 4
    assert np.allclose(result.center.points, result.cliques.means())


def test_clique_cost_identity(rng):
    cell = [random_pattern(rng, 3) for _ in range(4)]
    cliques = center_single_hub(cell, 0, RHO2).cliques
    direct = sum(
        float(np.sum((cliques.clique(i)[:, None, :] - cliques.clique(i)[None, :, :]) ** 2))
        for i in range(cliques.clique_count)
    )
    assert cliques.sum_cost() == pytest.approx(direct)


def test_modified_single_hub_order(rng):
    cell = [random_pattern(rng, 3) for _ in range(4)]
    result = center_modified_single_hub(cell, [3, 1, 0, 2], RHO2)
    assert result.details["order"] == [3, 1, 0, 2]
    with pytest.raises(ConfigError):
        center_modified_single_hub(cell, [0, 0, 1, 2], RHO2)


def test_modified_single_hub_center_is_clique_mean(rng):
    cell = [random_pattern(rng, 3) for _ in range(6)]
    result = center_modified_single_hub(cell, None, RHO2)
    assert np.allclose(result.center.points, result.cliques.means())


def test_capped_alignment_under_usospa(rng):
    cell = [random_pattern(rng, 3) for _ in range(4)]
    spec = DistortionSpec.usospa(0.1)
    result = center_single_hub(cell, 0, spec)
    assert result.center.cardinality == 3


def test_mixed_cardinalities_rejected(rng):
    cell = [random_pattern(rng, 2), random_pattern(rng, 3)]
    with pytest.raises(ApplicabilityError):
        center_single_hub(cell)


def test_empty_cell_rejected():
    with pytest.raises(InputError):
        center_multi_hub([])


def test_bad_hub_index(rng):
    with pytest.raises(ConfigError):
        center_single_hub([random_pattern(rng, 2)], hub_index=3)


def test_exact_center_size_limit(rng):
    cell = [random_pattern(rng, 4) for _ in range(7)]
    assert collection_count(4, 7) == 24 ** 6
    with pytest.raises(SizeError):
        ExactCenterAdapter().compute_center(cell, RHO2)


def test_exact_center_of_two_points_per_pattern():
    cell = [
        PointPattern.create([[0.0, 0.0], [1.0, 0.0]]),
        PointPattern.create([[1.0, 0.2], [0.0, 0.2]]),
    ]
    center = center_exact(cell).center
    assert center == PointPattern.create([[0.0, 0.1], [1.0, 0.1]])
