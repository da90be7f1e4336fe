"""
CLI command running the verification suites.
"""

from typing import Optional

import click

from config.adapter_factory import get_verification_use_case
from config.settings import config
from core.usecases.verification import summarize
from interfaces.cli.common import EXIT_CHECK_FAILED, build_run_config, handle_errors
from schemas.run_config import VerifyRunConfig


@click.command("verify")
@click.option("--suite", type=click.Choice(["distortion", "bounds", "codebook", "sampling", "all"]),
              default=None, help="Suite to run")
@click.option("--quick", is_flag=True, default=None, help="Reduced sample counts")
@click.option("--seed", type=int, default=None, help="Master seed")
@click.option("--workers", type=int, default=None, help="Worker threads")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="key = value config file")
@handle_errors
def verify(config_path: Optional[str], **flags):
    """Run oracle and property checks; exit 0 only if every check passes."""
    run = build_run_config(
        VerifyRunConfig, {"seed": config.get_seed(), "workers": config.get_workers()}, config_path, flags
    )
    use_case = get_verification_use_case(config, seed=run.seed, quick=run.quick, workers=run.workers)
    results = use_case.run(run.suite)
    for result in results:
        click.echo(result.describe())
    totals = summarize(results)
    click.echo(f"{totals['passed']}/{totals['total']} checks passed")
    if totals["failed"]:
        click.get_current_context().exit(EXIT_CHECK_FAILED)
