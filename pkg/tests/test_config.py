"""
설정 테스트 - settings profiles, config files, run schemas and the adapter factory
"""

import io
import json
import logging

import pytest

from adapters.centers.exact import ExactCenterAdapter
from adapters.sampling.poisson_sampler import PoissonUnitSquareSamplerAdapter
from config.adapter_factory import (
    AdapterFactory,
    get_codebook_training_use_case,
    get_verification_use_case,
)
from config.config_file import load_config_file, parse_config_text
from config.logging_config import HANDLER_NAME, setup_logging
from config.settings import ConfigAdapter, DevelopmentConfig, ProductionConfig, TestConfig, config, create_config
from core.entities.patterns import DistortionSpec
from core.exceptions import ConfigError
from schemas.run_config import (
    EvalRunConfig,
    GaussianBoundsRunConfig,
    PoissonBoundsRunConfig,
    TrainRunConfig,
    parse_int_list,
    validate_run_config,
)


def test_global_config_uses_test_profile():
    assert config.get_environment() == "test"
    assert config.get_log_level() == "WARNING"
    assert config.get_app_name() == "pprd"


def test_create_config_follows_environment(monkeypatch):
    monkeypatch.setenv("ENVIRONMENT", "production")
    assert create_config().get_log_format() == "json"
    monkeypatch.setenv("ENVIRONMENT", "development")
    assert create_config().get_log_level() == "DEBUG"


def test_settings_read_environment_variables(monkeypatch):
    monkeypatch.setenv("CUTOFF", "0.2")
    monkeypatch.setenv("WORKERS", "3")
    adapter = ConfigAdapter(TestConfig())
    assert adapter.get_cutoff() == 0.2
    assert adapter.get_workers() == 3


def test_settings_defaults():
    settings = ConfigAdapter(TestConfig())
    assert settings.get_kmax() is None
    assert settings.get_n_grid() is None
    assert settings.get_codebook_size() == 64
    assert settings.get_eval_samples() == 1000
    assert settings.get_samples() is None
    assert ProductionConfig().log_format == "json"
    assert DevelopmentConfig().log_level == "DEBUG"


def test_parse_config_text():
    values = parse_config_text("# bounds\nk = 4\nd-max = 8  # inline\n\nk=5\n", allowed_keys={"k", "d_max"})
    assert values == {"k": "5", "d_max": "8"}


def test_config_text_errors():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config_text("k 4")
    with pytest.raises(ConfigError, match="line 2"):
        parse_config_text("k = 4\nbogus = 1", allowed_keys={"k"})
    with pytest.raises(ConfigError):
        parse_config_text("k =")


def test_load_config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("lambda = 5\ncutoff = 0.2\n")
    assert load_config_file(path) == {"lambda": "5", "cutoff": "0.2"}
    with pytest.raises(ConfigError):
        load_config_file(tmp_path / "missing.cfg")


def test_parse_int_list():
    assert parse_int_list("8,16,32") == [8, 16, 32]
    assert parse_int_list("8..11") == [8, 9, 10, 11]
    assert parse_int_list("8..9, 20") == [8, 9, 20]
    assert parse_int_list([1, 2]) == [1, 2]


def test_gaussian_run_config_defaults_to_full_range():
    run = validate_run_config(GaussianBoundsRunConfig, {"k": 3, "d": 2})
    assert run.d_max == 6.0
    with pytest.raises(ConfigError, match="d_max"):
        validate_run_config(GaussianBoundsRunConfig, {"k": 3, "d": 2, "d_max": 7.0})


def test_poisson_run_config_sweep_and_preconditions():
    run = validate_run_config(PoissonBoundsRunConfig, {"lambda": "10", "cutoff": "0.1"})
    assert run.n_list[0] == 8
    assert run.n_list[-1] == 207
    assert validate_run_config(PoissonBoundsRunConfig, {"n_grid": 12}).n_list == [12]
    with pytest.raises(ConfigError):
        validate_run_config(PoissonBoundsRunConfig, {"n_list": "5,8"})
    with pytest.raises(ConfigError):
        validate_run_config(PoissonBoundsRunConfig, {"n_list": "8,16", "nmax": 9})
    with pytest.raises(ConfigError):
        validate_run_config(PoissonBoundsRunConfig, {"s_lo": 10.0})


def test_poisson_run_config_bound_params():
    run = validate_run_config(PoissonBoundsRunConfig, {"kmax": 10, "s_hi": 1e7})
    params = run.bound_params()
    assert params.k_max == 10
    assert params.s_range == pytest.approx((300.0, 1e7))


def test_train_run_config_sizes():
    run = validate_run_config(TrainRunConfig, {"M": "4,8", "samples": 100})
    assert run.M == [4, 8]
    assert validate_run_config(TrainRunConfig, {"M": 16}).M == [16]
    with pytest.raises(ConfigError):
        validate_run_config(TrainRunConfig, {"M": [200], "samples": 100})
    with pytest.raises(ConfigError):
        validate_run_config(TrainRunConfig, {"heuristic": "centroid"})
    with pytest.raises(ConfigError, match="colour"):
        validate_run_config(TrainRunConfig, {"colour": "red"})


def test_training_set_defaults_to_100_per_codeword():
    run = validate_run_config(TrainRunConfig, {"M": "16,64,256"})
    assert run.samples is None
    assert [run.training_samples(size) for size in run.M] == [1600, 6400, 25600]
    fixed = validate_run_config(TrainRunConfig, {"M": "16,64", "samples": 500})
    assert [fixed.training_samples(size) for size in fixed.M] == [500, 500]


def test_eval_run_config_needs_codebook():
    with pytest.raises(ConfigError, match="codebook"):
        validate_run_config(EvalRunConfig, {})


def test_run_info_is_json_ready():
    run = validate_run_config(TrainRunConfig, {"M": [4]})
    assert json.loads(json.dumps(run.as_run_info()))["M"] == [4]


def test_factory_creates_adapters():
    assert isinstance(AdapterFactory.create_center_heuristic_adapter("exact"), ExactCenterAdapter)
    sampler = AdapterFactory.create_sampler_adapter("poisson", mean_cardinality=4.0)
    assert isinstance(sampler, PoissonUnitSquareSamplerAdapter)
    assert AdapterFactory.create_codebook_store_adapter().get_store_type() == "text"
    writer = AdapterFactory.create_result_writer_adapter(io.StringIO(), config)
    assert writer.get_writer_type() == "csv"
    with pytest.raises(ConfigError):
        AdapterFactory.create_sampler_adapter("binomial")
    with pytest.raises(ConfigError):
        AdapterFactory.create_center_heuristic_adapter("centroid")


def test_pair_draw_needs_exactly_one_source():
    with pytest.raises(ConfigError):
        AdapterFactory.create_pair_draw(10)
    with pytest.raises(ConfigError):
        AdapterFactory.create_pair_draw(10, k=2, mean_cardinality=3.0)


def test_use_case_builders_prefer_explicit_values(rng):
    sampler = AdapterFactory.create_sampler_adapter("gaussian", k=2, d=1)
    heuristic = AdapterFactory.create_center_heuristic_adapter("single_hub")
    trainer = get_codebook_training_use_case(config, sampler, heuristic, max_iters=0)
    training = trainer.draw_training_set(10, rng)
    codebook = trainer.train(training, 2, DistortionSpec.rho2(), rng)
    assert codebook.metadata["iterations"] == 0
    verifier = get_verification_use_case(config, seed=3, quick=True, workers=2)
    with pytest.raises(ConfigError):
        verifier.run("everything")


def test_setup_logging_replaces_its_handler():
    stream = io.StringIO()
    setup_logging(config, stream=stream, level="INFO")
    setup_logging(config, stream=stream, level="INFO")
    root = logging.getLogger()
    assert sum(handler.get_name() == HANDLER_NAME for handler in root.handlers) == 1
    logging.getLogger("pprd.test").info("hello")
    assert "hello" in stream.getvalue()
    setup_logging(config)
