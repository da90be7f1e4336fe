"""
Verification suites: oracle and property checks over every module, each
reported with observed and expected values.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

import numpy as np
from scipy import stats

from core.entities.bound_params import PoissonBoundParams
from core.entities.patterns import DistortionSpec, PointPattern, TrainingSet
from core.exceptions import ConfigError
from core.ports.center_heuristic import CenterHeuristicPort
from core.ports.source_sampler import SourceSamplerPort
from core.services.assignment import count_solves, solve_assignment
from core.services.distortion import (
    cost_matrix,
    permutation_table,
    rho2,
    usospa,
    usospa_lower_bounds,
    vector_squared_error,
)
from core.services.encoding import average_distortion
from core.services.gaussian_bounds import gaussian_pp_lower, gaussian_pp_upper, gaussian_vector_rd
from core.services.optimization import dense_grid_maximum
from core.services.poisson_bounds import (
    poisson_lower_unit_square,
    poisson_upper_unit_square,
    poisson_upper_unit_square_full,
    quantizer_distortion_fixed,
    unit_square_objective,
)
from core.services.random_streams import VERIFICATION_STREAM, make_rng
from core.services.special_functions import chi2_cdf, log_factorial
from core.usecases.codebook_training import lbg_train, random_codebook
from core.usecases.distortion_estimation import estimate_distortion, estimate_quantized_pair_distortion

logger = logging.getLogger(__name__)

SUITES = ("distortion", "bounds", "codebook", "sampling")

PairDrawFactory = Callable[[int, Optional[int], Optional[float]], Callable]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one invariant check."""

    suite: str
    name: str
    passed: bool
    observed: Any
    expected: Any

    def describe(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.suite}/{self.name}: observed={self.observed} expected={self.expected}"


def _random_pattern(rng: np.random.Generator, k: int, d: int = 2) -> PointPattern:
    return PointPattern(points=rng.random((k, d)), dim=d)


def _shuffled(pattern: PointPattern, rng: np.random.Generator) -> PointPattern:
    return PointPattern(points=pattern.points[rng.permutation(pattern.cardinality)], dim=pattern.dim)


class VerificationUseCase:
    """Runs the named verification suites.

    Samplers, heuristics and the quantized-pair draw are injected so the
    suites exercise the same adapters the CLI uses.
    """

    def __init__(
        self,
        heuristics: Mapping[str, CenterHeuristicPort],
        gaussian_sampler: Callable[[int, int], SourceSamplerPort],
        poisson_sampler: Callable[[float], SourceSamplerPort],
        pair_draw: PairDrawFactory,
        seed: int = 0,
        quick: bool = False,
        workers: int = 1,
    ):
        self._heuristics = dict(heuristics)
        self._gaussian_sampler = gaussian_sampler
        self._poisson_sampler = poisson_sampler
        self._pair_draw = pair_draw
        self._seed = seed
        self._quick = quick
        self._workers = workers

    def _count(self, full: int, quick: int) -> int:
        return quick if self._quick else full

    def _rng(self, *stream: int) -> np.random.Generator:
        return make_rng(self._seed, VERIFICATION_STREAM, *stream)

    def run(self, suite: str = "all") -> List[CheckResult]:
        if suite == "all":
            names = list(SUITES)
        elif suite in SUITES:
            names = [suite]
        else:
            raise ConfigError(f"unknown verification suite {suite!r}; choose from {SUITES + ('all',)}")
        results: List[CheckResult] = []
        for name in names:
            logger.info("running verification suite %s", name)
            results.extend(getattr(self, f"_suite_{name}")())
        return results

    # distortion

    def _suite_distortion(self) -> List[CheckResult]:
        results = [self._check_assignment_oracle()]
        results.extend(self._check_rho2_properties())
        results.append(self._check_usospa_oracle())
        results.extend(self._check_lemma_bounds())
        return results

    def _check_assignment_oracle(self) -> CheckResult:
        rng = self._rng(1)
        count = self._count(1000, 50)
        worst = 0.0
        for n in range(2, 8):
            matrices = rng.random((count, n, n))
            perms = permutation_table(n)
            brute = matrices[:, np.arange(n), perms].sum(axis=-1).min(axis=-1)
            solved = np.array([solve_assignment(matrix).total_cost for matrix in matrices])
            worst = max(worst, float(np.max(np.abs(solved - brute))))
        return CheckResult("distortion", "assignment_vs_brute_force", worst < 1e-9, worst, "< 1e-9")

    def _check_rho2_properties(self) -> List[CheckResult]:
        rng = self._rng(2)
        count = self._count(10_000, 500)
        worst_invariance = worst_symmetry = worst_vector = 0.0
        for _ in range(count):
            k = int(rng.integers(1, 9))
            X, Y = _random_pattern(rng, k), _random_pattern(rng, k)
            value = rho2(X, Y)
            worst_invariance = max(worst_invariance, abs(rho2(_shuffled(X, rng), _shuffled(Y, rng)) - value))
            worst_symmetry = max(worst_symmetry, abs(rho2(Y, X) - value))
            worst_vector = max(worst_vector, value - vector_squared_error(X, Y))
        return [
            CheckResult("distortion", "rho2_permutation_invariance", worst_invariance < 1e-9, worst_invariance, "< 1e-9"),
            CheckResult("distortion", "rho2_symmetry", worst_symmetry < 1e-9, worst_symmetry, "< 1e-9"),
            CheckResult("distortion", "rho2_vector_bound", worst_vector <= 1e-12, worst_vector, "<= 0"),
        ]

    def _check_usospa_oracle(self) -> CheckResult:
        rng = self._rng(3)
        c = 0.3
        worst = 0.0
        for _ in range(self._count(200, 20)):
            X, Y = _random_pattern(rng, 3), _random_pattern(rng, 5)
            capped = cost_matrix(X, Y, c)
            brute = min(
                sum(capped[i, j] for i, j in enumerate(selection))
                for selection in itertools.permutations(range(5), 3)
            ) + 2 * c * c
            worst = max(worst, abs(usospa(X, Y, c) - brute), abs(usospa(Y, X, c) - brute))
        return CheckResult("distortion", "usospa_vs_injection_oracle", worst < 1e-9, worst, "< 1e-9")

    def _check_lemma_bounds(self) -> List[CheckResult]:
        rng = self._rng(4)
        c = 0.3
        violations = 0
        worst_cap = 0.0
        for _ in range(self._count(10_000, 500)):
            X = _random_pattern(rng, int(rng.integers(0, 9)))
            Y = _random_pattern(rng, int(rng.integers(0, 9)))
            value = usospa(X, Y, c)
            more, fewer = usospa_lower_bounds(X, Y, c)
            if X.cardinality >= Y.cardinality and value < more - 1e-12:
                violations += 1
            if X.cardinality <= Y.cardinality and value < fewer - 1e-12:
                violations += 1
            worst_cap = max(worst_cap, value - max(X.cardinality, Y.cardinality) * c * c)
        empty = usospa(_random_pattern(rng, 4), PointPattern.empty(2), c)
        return [
            CheckResult("distortion", "usospa_nearest_neighbour_bounds", violations == 0, violations, 0),
            CheckResult("distortion", "usospa_cap", worst_cap <= 1e-12, worst_cap, "<= 0"),
            CheckResult("distortion", "usospa_empty", abs(empty - 4 * c * c) < 1e-15, empty, 4 * c * c),
        ]

    # bounds

    def _suite_bounds(self) -> List[CheckResult]:
        results = self._check_gaussian_bounds()
        results.extend(self._check_special_functions())
        results.append(self._check_poisson_optimizer())
        results.extend(self._check_poisson_upper())
        return results

    def _check_gaussian_bounds(self) -> List[CheckResult]:
        r_vec = gaussian_vector_rd(4, 2, 0.8)
        lower = gaussian_pp_lower(4, 2, 0.8)
        grid = np.geomspace(1e-6, 1.9, 20)
        k1 = max(
            max(abs(gaussian_pp_upper(1, 2, D) - gaussian_vector_rd(1, 2, D)),
                abs(gaussian_pp_lower(1, 2, D) - gaussian_vector_rd(1, 2, D)))
            for D in grid
        )
        gaps = [gaussian_pp_upper(4, 2, D) - gaussian_pp_lower(4, 2, D) for D in (1e-2, 1e-4, 1e-6)]
        decreasing = gaps[0] > gaps[1] > gaps[2]
        return [
            CheckResult("bounds", "gaussian_vector_rd", abs(r_vec - 4 * math.log(10)) < 1e-12, r_vec, 9.2103),
            CheckResult(
                "bounds", "gaussian_lower", abs(lower - (4 * math.log(10) - math.log(24))) < 1e-12, lower, 6.0323
            ),
            CheckResult("bounds", "gaussian_k1_equality", k1 < 1e-9, k1, "< 1e-9"),
            CheckResult(
                "bounds", "gaussian_gap_tightening", decreasing and gaps[2] < 0.05,
                [round(gap, 6) for gap in gaps], "strictly decreasing, last < 0.05",
            ),
        ]

    def _check_special_functions(self) -> List[CheckResult]:
        chi = chi2_cdf(2.0, 2)
        grid = np.linspace(0.0, 40.0, 1000)
        values = np.array([chi2_cdf(x, 5) for x in grid])
        monotone = bool(np.all(np.diff(values) >= 0) and values.min() >= 0 and values.max() <= 1)
        worst = max(
            abs(log_factorial(k) - math.fsum(math.log(i) for i in range(1, k + 1))) / max(1.0, log_factorial(k))
            for k in range(0, 501)
        )
        return [
            CheckResult("bounds", "chi2_cdf_2_2", abs(chi - (1 - math.exp(-1))) < 1e-10, chi, 1 - math.exp(-1)),
            CheckResult("bounds", "chi2_cdf_monotone", monotone, monotone, True),
            CheckResult("bounds", "log_factorial_vs_sum", worst < 1e-12, worst, "< 1e-12"),
        ]

    def _check_poisson_optimizer(self) -> CheckResult:
        params = PoissonBoundParams(mean_cardinality=10.0, cutoff=0.1)
        worst = 0.0
        for D in (1e-4, 1e-3, 1e-2):
            found = poisson_lower_unit_square(params, D).value
            _, reference = dense_grid_maximum(unit_square_objective(params, D), 300.0, 1e6, 100_000)
            worst = max(worst, abs(found - reference))
        return CheckResult("bounds", "poisson_lower_vs_dense_grid", worst < 1e-6, worst, "< 1e-6")

    def _check_poisson_upper(self) -> List[CheckResult]:
        first = poisson_upper_unit_square(PoissonBoundParams(10.0, 0.1, n_grid=8)).distortion_D
        last = poisson_upper_unit_square(PoissonBoundParams(10.0, 0.1, n_grid=207)).distortion_D
        sizes = list(range(8, 208, 1 if not self._quick else 11)) + [207]
        bad: List[int] = []
        for n_grid in sizes:
            params = PoissonBoundParams(10.0, 0.1, n_grid=n_grid)
            point = poisson_upper_unit_square(params)
            lower = poisson_lower_unit_square(params, point.distortion_D).value
            if not math.isfinite(point.rate_R) or point.rate_R < lower:
                bad.append(n_grid)
        truncation = []
        for n_grid in range(8, 13):
            full = poisson_upper_unit_square_full(PoissonBoundParams(10.0, 0.1, n_grid=n_grid)).rate_R
            for n_max in range(1, n_grid):
                truncated = poisson_upper_unit_square(
                    PoissonBoundParams(10.0, 0.1, n_grid=n_grid, n_max=n_max)
                ).rate_R
                if truncated < full - 1e-9:
                    truncation.append((n_grid, n_max))
        return [
            CheckResult("bounds", "poisson_upper_D_at_N8", abs(first - 2.604e-2) < 1e-5, first, 2.604e-2),
            CheckResult("bounds", "poisson_upper_D_at_N207", abs(last - 3.890e-5) < 1e-8, last, 3.890e-5),
            CheckResult("bounds", "poisson_upper_above_lower", not bad, bad, []),
            CheckResult("bounds", "poisson_upper_truncation_direction", not truncation, truncation, []),
        ]

    # codebook

    def _suite_codebook(self) -> List[CheckResult]:
        results = [self._check_center_optimality(), self._check_solve_counts(), self._check_lbg_full_budget()]
        if not self._quick:
            results.append(self._check_lbg_effectiveness())
        return results

    def _check_center_optimality(self) -> CheckResult:
        rng = self._rng(5)
        spec = DistortionSpec.rho2()
        exact = self._heuristics["exact"]
        others = [heuristic for name, heuristic in self._heuristics.items() if name != "exact"]
        failures = 0
        candidates_per_cell = self._count(1000, 100)
        for _ in range(self._count(100, 10)):
            cell = [_random_pattern(rng, 3) for _ in range(3)]
            best = average_distortion(cell, exact.compute_center(cell, spec, rng).center, spec)
            rivals = [average_distortion(cell, h.compute_center(cell, spec, rng).center, spec) for h in others]
            rivals.extend(
                average_distortion(cell, _random_pattern(rng, 3), spec) for _ in range(candidates_per_cell)
            )
            if best > min(rivals) + 1e-12:
                failures += 1
        return CheckResult("codebook", "exact_center_optimality", failures == 0, failures, 0)

    def _check_solve_counts(self) -> CheckResult:
        rng = self._rng(6)
        spec = DistortionSpec.rho2()
        cell = [_random_pattern(rng, 3) for _ in range(5)]
        observed: Dict[str, Tuple[int, int]] = {}
        for name, heuristic in self._heuristics.items():
            with count_solves() as counter:
                declared = heuristic.compute_center(cell, spec, rng).assignment_solves
            observed[name] = (counter.count, declared)
        expected = {name: (heuristic.expected_solves(len(cell)),) * 2 for name, heuristic in self._heuristics.items()}
        return CheckResult("codebook", "assignment_solve_counts", observed == expected, observed, expected)

    def _check_lbg_full_budget(self) -> CheckResult:
        rng = self._rng(7)
        training = TrainingSet(samples=tuple(_random_pattern(rng, 3) for _ in range(20)))
        heuristic = self._heuristics.get("modified_single_hub", next(iter(self._heuristics.values())))
        codebook = lbg_train(training, 20, DistortionSpec.rho2(), heuristic, rng=rng)
        value = codebook.metadata["training_distortion"]
        return CheckResult("codebook", "lbg_full_budget_zero_distortion", value == 0.0, value, 0.0)

    def _check_lbg_effectiveness(self) -> CheckResult:
        rng = self._rng(8)
        sampler = self._gaussian_sampler(4, 2)
        spec = DistortionSpec.rho2()
        training = TrainingSet(samples=tuple(sampler.sample_many(6400, rng)), sampler="gaussian", seed=self._seed)
        trained = lbg_train(training, 64, spec, self._heuristics["modified_single_hub"], rng=rng, workers=self._workers)
        baseline = random_codebook(sampler, 64, spec, rng)
        trained_d, _ = estimate_distortion(trained, sampler, 100_000, self._seed, workers=self._workers)
        baseline_d, _ = estimate_distortion(baseline, sampler, 100_000, self._seed, workers=self._workers)
        ratio = trained_d / baseline_d
        return CheckResult("codebook", "lbg_beats_random_by_10_percent", ratio <= 0.9, round(ratio, 4), "<= 0.9")

    # sampling

    def _suite_sampling(self) -> List[CheckResult]:
        results = self._check_poisson_counts()
        results.append(self._check_gaussian_moments())
        results.append(self._check_determinism())
        results.extend(self._check_quantized_pairs())
        return results

    def _check_poisson_counts(self) -> List[CheckResult]:
        rng = self._rng(9)
        count = 100_000
        sampler = self._poisson_sampler(10.0)
        sizes = np.array([sampler.sample(rng).cardinality for _ in range(count)])
        mean = float(sizes.mean())
        sigma = math.sqrt(10.0 / count)
        observed = np.bincount(np.minimum(sizes, 25), minlength=26).astype(float)
        probabilities = stats.poisson.pmf(np.arange(26), 10.0)
        probabilities[25] = stats.poisson.sf(24, 10.0)
        p_value = float(stats.chisquare(observed, probabilities * count).pvalue)
        return [
            CheckResult("sampling", "poisson_mean", abs(mean - 10.0) < 3 * sigma, mean, f"10 +/- {3 * sigma:.4f}"),
            CheckResult("sampling", "poisson_chi_square", p_value > 0.001, round(p_value, 6), "> 0.001"),
        ]

    def _check_gaussian_moments(self) -> CheckResult:
        rng = self._rng(10)
        count = self._count(400_000, 100_000)
        sampler = self._gaussian_sampler(1, 1)
        values = np.array([sampler.sample(rng).points[0, 0] for _ in range(count)])
        mean, variance = float(values.mean()), float(values.var())
        passed = abs(mean) < 4 / math.sqrt(count) and abs(variance - 1) < 5 * math.sqrt(2.0 / count)
        return CheckResult("sampling", "gaussian_moments", passed, (round(mean, 5), round(variance, 5)), (0, 1))

    def _check_determinism(self) -> CheckResult:
        sampler = self._poisson_sampler(10.0)
        first = sampler.sample_many(50, make_rng(self._seed, 99))
        second = sampler.sample_many(50, make_rng(self._seed, 99))
        same = all(np.array_equal(a.points, b.points) for a, b in zip(first, second))
        return CheckResult("sampling", "seeded_determinism", same, same, True)

    def _check_quantized_pairs(self) -> List[CheckResult]:
        results = []
        n_samples = self._count(100_000, 10_000)
        mean, stderr = estimate_quantized_pair_distortion(
            self._pair_draw(10, None, 10.0), 0.1, n_samples, self._seed, workers=self._workers
        )
        results.append(
            CheckResult(
                "sampling", "quantized_pair_poisson_distortion", abs(mean - 1 / 60) < 3 * stderr,
                (round(mean, 6), round(stderr, 6)), round(1 / 60, 6),
            )
        )
        expected = quantizer_distortion_fixed(4, 10)
        mean, stderr = estimate_quantized_pair_distortion(
            self._pair_draw(10, 4, None), 0.1, self._count(20_000, 2_000), self._seed, workers=self._workers
        )
        results.append(
            CheckResult(
                "sampling", "quantized_pair_fixed_k_distortion", abs(mean - expected) < 3 * stderr,
                (round(mean, 6), round(stderr, 6)), round(expected, 6),
            )
        )
        rng = self._rng(11)
        draw = self._pair_draw(10, 4, None)
        xs = np.concatenate([draw(rng)[0].points for _ in range(25_000)])
        ks = max(float(stats.kstest(xs[:, axis], "uniform").statistic) for axis in range(2))
        results.append(CheckResult("sampling", "quantized_pair_uniform_marginal", ks < 0.01, round(ks, 5), "< 0.01"))
        return results


def summarize(results: List[CheckResult]) -> Dict[str, int]:
    passed = sum(result.passed for result in results)
    return {"passed": passed, "failed": len(results) - passed, "total": len(results)}


def failed_checks(results: List[CheckResult]) -> List[Tuple[str, str]]:
    return [(result.suite, result.name) for result in results if not result.passed]
