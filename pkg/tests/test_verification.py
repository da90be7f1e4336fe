"""
Verification suites run through the use case the CLI builds.
"""

import pytest

from config.adapter_factory import get_verification_use_case
from config.settings import config
from core.exceptions import ConfigError
from core.usecases.verification import SUITES, CheckResult, failed_checks, summarize


@pytest.fixture
def quick_verifier():
    return get_verification_use_case(config, seed=0, quick=True)


def test_quick_distortion_suite_passes(quick_verifier):
    results = quick_verifier.run("distortion")
    assert {result.suite for result in results} == {"distortion"}
    assert failed_checks(results) == []
    names = [result.name for result in results]
    assert "assignment_vs_brute_force" in names
    assert "usospa_vs_injection_oracle" in names


def test_quick_bounds_suite_passes(quick_verifier):
    results = quick_verifier.run("bounds")
    assert failed_checks(results) == []
    assert "poisson_upper_above_lower" in [result.name for result in results]


def test_quick_codebook_suite_skips_effectiveness(quick_verifier):
    results = quick_verifier.run("codebook")
    names = [result.name for result in results]
    assert "lbg_beats_random_by_10_percent" not in names
    assert failed_checks(results) == []
    solve_check = next(result for result in results if result.name == "assignment_solve_counts")
    assert solve_check.observed["multi_hub"] == (20, 20)
    assert solve_check.observed["exact"] == (0, 0)


def test_unknown_suite_rejected(quick_verifier):
    with pytest.raises(ConfigError, match="unknown verification suite"):
        quick_verifier.run("everything")


def test_summary_and_failures():
    results = [
        CheckResult("bounds", "a", True, 1.0, 1.0),
        CheckResult("bounds", "b", False, 2.0, 1.0),
        CheckResult("sampling", "c", True, 0, 0),
    ]
    assert summarize(results) == {"passed": 2, "failed": 1, "total": 3}
    assert failed_checks(results) == [("bounds", "b")]


def test_check_description():
    result = CheckResult("distortion", "rho2_symmetry", False, 0.5, "< 1e-9")
    assert result.describe() == "[FAIL] distortion/rho2_symmetry: observed=0.5 expected=< 1e-9"


def test_suite_names():
    assert SUITES == ("distortion", "bounds", "codebook", "sampling")


@pytest.mark.slow
def test_quick_sampling_suite_passes(quick_verifier):
    assert failed_checks(quick_verifier.run("sampling")) == []


@pytest.mark.slow
def test_full_codebook_suite_passes():
    verifier = get_verification_use_case(config, seed=0, quick=False, workers=4)
    assert failed_checks(verifier.run("codebook")) == []
