"""
CLI commands training and evaluating point-pattern codebooks.
"""

import logging
import math
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import click

from adapters.storage.pattern_codec import save_patterns
from config.adapter_factory import (
    AdapterFactory,
    get_codebook_training_use_case,
    get_distortion_estimation_use_case,
)
from config.settings import config
from core.entities.patterns import Codebook, CodebookFamily, DistortionSpec, RdPoint
from core.exceptions import ConfigError
from core.services.random_streams import TRAINING_STREAM, make_rng
from interfaces.cli.common import build_run_config, handle_errors, write_rows
from schemas.run_config import EvalRunConfig, TrainRunConfig

logger = logging.getLogger(__name__)

TRAIN_COLUMNS = [
    "source", "k", "d", "lambda", "cutoff", "M", "heuristic", "seed", "samples", "eval_samples",
    "D", "R", "stderr", "iterations", "training_distortion", "rerun", "codebook", "units",
]
EVAL_COLUMNS = [
    "source", "k", "d", "lambda", "codebook", "M", "heuristic", "seed", "eval_samples", "D", "R", "stderr", "units",
]


def codebook_path(out: Optional[str], size: int, sweep: bool) -> Optional[str]:
    """Output path for one M; sweeps get an ``_M<size>`` suffix."""
    if out is None or not sweep:
        return out
    path = Path(out)
    return str(path.with_name(f"{path.stem}_M{size}{path.suffix}"))


def _rate(point: RdPoint, bits: bool) -> float:
    return point.rate_R / math.log(2.0) if bits else point.rate_R


def _train_one(
    run: TrainRunConfig, size: int, seed: Optional[int], dump_path: Optional[str] = None
) -> Dict[str, Any]:
    sampler = AdapterFactory.create_sampler_adapter(
        run.source, k=run.k, d=run.d, mean_cardinality=run.mean_cardinality
    )
    heuristic = AdapterFactory.create_center_heuristic_adapter(run.heuristic)
    trainer = get_codebook_training_use_case(
        config, sampler, heuristic, workers=run.workers,
        max_iters=run.max_iters, rel_tol=run.rel_tol, window=run.convergence_window,
    )

    rng = make_rng(seed, TRAINING_STREAM)
    n_samples = run.training_samples(size)
    training = trainer.draw_training_set(n_samples, rng, seed)
    if dump_path is not None:
        save_patterns(training.samples, dump_path)
    codebook: Union[Codebook, CodebookFamily]
    if run.source == "gaussian":
        codebook = trainer.train(training, size, DistortionSpec.rho2(), rng)
        iterations = codebook.metadata.get("iterations")
        training_distortion = codebook.metadata.get("training_distortion")
    else:
        budget = {cardinality: size for cardinality in range(1, run.max_cardinality + 1)}
        kept = tuple(sample for sample in training.samples if sample.cardinality <= run.max_cardinality)
        if len(kept) < training.count:
            logger.info("dropped %d training samples above cardinality %d", training.count - len(kept), run.max_cardinality)
        training = replace(training, samples=kept)
        codebook = trainer.train_per_cardinality(training, budget, run.cutoff, rng)
        parts = [book for book in codebook.codebooks.values() if "iterations" in book.metadata]
        iterations = max((book.metadata["iterations"] for book in parts), default=0)
        training_distortion = None

    point = get_distortion_estimation_use_case(config, sampler, workers=run.workers).evaluate(
        codebook, run.eval_samples, seed
    )
    return {
        "codebook": codebook,
        "row": {
            "source": run.source,
            "k": run.k if run.source == "gaussian" else None,
            "d": run.d if run.source == "gaussian" else 2,
            "lambda": run.mean_cardinality if run.source == "poisson" else None,
            "cutoff": run.cutoff if run.source == "poisson" else None,
            "M": size,
            "heuristic": run.heuristic,
            "seed": seed,
            "samples": n_samples,
            "eval_samples": run.eval_samples,
            "D": point.distortion_D,
            "R": _rate(point, run.bits),
            "stderr": point.params.get("stderr"),
            "iterations": iterations,
            "training_distortion": training_distortion,
            "rerun": False,
            "units": "bits" if run.bits else "nats",
        },
    }


@click.command("train")
@click.option("--source", type=click.Choice(["gaussian", "poisson"]), default=None, help="Source model")
@click.option("--k", type=int, default=None, help="Points per pattern (gaussian)")
@click.option("--d", type=int, default=None, help="Dimension (gaussian)")
@click.option("--lambda", "mean_cardinality", type=float, default=None, help="Mean cardinality (poisson)")
@click.option("--cutoff", type=float, default=None, help="USOSPA cut-off (poisson)")
@click.option("--M", "M", type=int, multiple=True, help="Codebook size; repeat for a sweep")
@click.option("--samples", type=int, default=None, help="Training set size (default 100 per codeword)")
@click.option("--heuristic", type=click.Choice(["single_hub", "multi_hub", "modified_single_hub", "exact"]),
              default=None, help="Center heuristic")
@click.option("--max-iters", type=int, default=None, help="LBG iteration cap")
@click.option("--tol", "rel_tol", type=float, default=None, help="Relative-decrease stopping tolerance")
@click.option("--eval-samples", type=int, default=None, help="Fresh samples for evaluation")
@click.option("--max-cardinality", type=int, default=None, help="Largest cardinality trained (poisson)")
@click.option("--seed", type=int, default=None, help="Master seed")
@click.option("--workers", type=int, default=None, help="Worker threads")
@click.option("--bits", is_flag=True, default=None, help="Report rates in bits")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Codebook output file")
@click.option("--dump-samples", type=click.Path(dir_okay=False), default=None,
              help="Write the training patterns to this file")
@click.option("--csv", type=click.Path(dir_okay=False), default=None, help="CSV output path (default stdout)")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="key = value config file")
@handle_errors
def train(config_path: Optional[str], **flags):
    """Train LBG codebooks and report their operational (D, log M) points."""
    run = build_run_config(
        TrainRunConfig,
        {
            "k": config.get_k(),
            "d": config.get_d(),
            "mean_cardinality": config.get_mean_cardinality(),
            "cutoff": config.get_cutoff(),
            "M": [config.get_codebook_size()],
            "samples": config.get_samples(),
            "heuristic": config.get_heuristic(),
            "max_iters": config.get_max_iters(),
            "rel_tol": config.get_rel_tol(),
            "convergence_window": config.get_convergence_window(),
            "eval_samples": config.get_eval_samples(),
            "seed": config.get_seed(),
            "workers": config.get_workers(),
        },
        config_path,
        flags,
    )
    store = AdapterFactory.create_codebook_store_adapter()
    sizes = sorted(set(run.M))
    sweep = len(sizes) > 1
    rows: List[Dict[str, Any]] = []
    previous_d: Optional[float] = None
    for size in sizes:
        result = _train_one(run, size, run.seed, codebook_path(run.dump_samples, size, sweep))
        target = codebook_path(run.out, size, sweep)
        if target is not None:
            store.save(result["codebook"], target)
        result["row"]["codebook"] = target
        rows.append(result["row"])
        current_d = result["row"]["D"]
        if previous_d is not None and current_d > previous_d:
            logger.warning("D=%.6g at M=%d exceeds the smaller codebook's %.6g; retraining", current_d, size, previous_d)
            rerun_seed = run.seed + 1 if run.seed is not None else None
            retry = _train_one(run, size, rerun_seed)
            retry["row"]["rerun"] = True
            retry["row"]["codebook"] = None
            rows.append(retry["row"])
            current_d = min(current_d, retry["row"]["D"])
        previous_d = current_d

    write_rows(run.csv, config, TRAIN_COLUMNS, run.as_run_info(), rows)


@click.command("eval")
@click.option("--codebook", type=click.Path(exists=True, dir_okay=False), default=None, help="Codebook file")
@click.option("--source", type=click.Choice(["gaussian", "poisson"]), default=None, help="Source model")
@click.option("--k", type=int, default=None, help="Points per pattern (defaults to the codebook's)")
@click.option("--d", type=int, default=None, help="Dimension (defaults to the codebook's)")
@click.option("--lambda", "mean_cardinality", type=float, default=None, help="Mean cardinality (poisson)")
@click.option("--samples", "eval_samples", type=int, default=None, help="Fresh samples for evaluation")
@click.option("--seed", type=int, default=None, help="Master seed")
@click.option("--workers", type=int, default=None, help="Worker threads")
@click.option("--bits", is_flag=True, default=None, help="Report rates in bits")
@click.option("--csv", type=click.Path(dir_okay=False), default=None, help="CSV output path (default stdout)")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="key = value config file")
@handle_errors
def evaluate(config_path: Optional[str], **flags):
    """Estimate the distortion of a stored codebook on fresh samples."""
    run = build_run_config(
        EvalRunConfig,
        {
            "mean_cardinality": config.get_mean_cardinality(),
            "eval_samples": config.get_eval_samples(),
            "seed": config.get_seed(),
            "workers": config.get_workers(),
        },
        config_path,
        flags,
    )
    codebook = AdapterFactory.create_codebook_store_adapter().load(run.codebook)
    k = run.k
    d = run.d if run.d is not None else codebook.dim
    if run.source == "gaussian":
        if k is None:
            if isinstance(codebook, CodebookFamily):
                raise ConfigError("--k is required to evaluate a codebook family on the gaussian source")
            k = codebook.codewords[0].cardinality
        if d != codebook.dim:
            raise ConfigError(f"source dimension {d} does not match the codebook's {codebook.dim}")
    elif codebook.dim != 2:
        raise ConfigError(f"the poisson source lives in the unit square, codebook has d={codebook.dim}")
    sampler = AdapterFactory.create_sampler_adapter(run.source, k=k, d=d, mean_cardinality=run.mean_cardinality)
    point = get_distortion_estimation_use_case(config, sampler, workers=run.workers).evaluate(
        codebook, run.eval_samples, run.seed
    )
    row = {
        "source": run.source,
        "k": k if run.source == "gaussian" else None,
        "d": d,
        "lambda": run.mean_cardinality if run.source == "poisson" else None,
        "codebook": run.codebook,
        "M": point.params["M"],
        "heuristic": point.params.get("heuristic"),
        "seed": run.seed,
        "eval_samples": run.eval_samples,
        "D": point.distortion_D,
        "R": _rate(point, run.bits),
        "stderr": point.params.get("stderr"),
        "units": "bits" if run.bits else "nats",
    }
    write_rows(run.csv, config, EVAL_COLUMNS, run.as_run_info(), [row])
