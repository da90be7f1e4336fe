"""
CLI interface for the Point Pattern Rate-Distortion Toolkit.
"""

from typing import Optional

import click

from config.logging_config import setup_logging
from config.settings import config
from interfaces.cli.bound_commands import bounds_gaussian, bounds_poisson
from interfaces.cli.codebook_commands import evaluate, train
from interfaces.cli.verify_commands import verify


@click.group()
@click.version_option(config.get_app_version(), prog_name=config.get_app_name())
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              default=None, help="Override the configured log level")
def cli(log_level: Optional[str]):
    """Rate-distortion bounds and codebooks for point processes."""
    setup_logging(config, level=log_level)


cli.add_command(bounds_gaussian)
cli.add_command(bounds_poisson)
cli.add_command(train)
cli.add_command(evaluate)
cli.add_command(verify)


@cli.command()
def config_info():
    """Show current configuration."""
    click.echo("Current Configuration:")
    click.echo(f"  App Name: {config.get_app_name()}")
    click.echo(f"  App Version: {config.get_app_version()}")
    click.echo(f"  Environment: {config.get_environment()}")
    click.echo(f"  Log Level: {config.get_log_level()} ({config.get_log_format()})")
    click.echo(f"  Seed: {config.get_seed()}")
    click.echo(f"  Gaussian source: k={config.get_k()} d={config.get_d()}")
    click.echo(f"  Poisson source: lambda={config.get_mean_cardinality()} cutoff={config.get_cutoff()}")
    click.echo(f"  Training: M={config.get_codebook_size()} samples={config.get_samples() or '100*M'} "
               f"heuristic={config.get_heuristic()}")
    click.echo(f"  Evaluation: samples={config.get_eval_samples()} workers={config.get_workers()}")


if __name__ == '__main__':
    cli()
