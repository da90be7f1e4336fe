"""
CLI commands tabulating the analytic RD bounds.
"""

from typing import Optional

import click

from config.adapter_factory import get_bound_evaluation_use_case
from config.settings import config
from core.usecases.bound_evaluation import GAUSSIAN_COLUMNS, POISSON_COLUMNS, log_grid
from interfaces.cli.common import build_run_config, handle_errors, write_rows
from schemas.run_config import GaussianBoundsRunConfig, PoissonBoundsRunConfig


@click.command("bounds-gaussian")
@click.option("--k", type=int, default=None, help="Points per pattern")
@click.option("--d", type=int, default=None, help="Dimension")
@click.option("--d-min", type=float, default=None, help="Smallest distortion of the grid")
@click.option("--d-max", type=float, default=None, help="Largest distortion of the grid (default kd)")
@click.option("--d-points", type=int, default=None, help="Number of log-spaced grid points")
@click.option("--epsilon-exponent", type=float, default=None, help="Exponent of the default epsilon rule")
@click.option("--epsilon", type=float, default=None, help="Fixed epsilon for the upper bound")
@click.option("--seed", type=int, default=None, help="Seed (recorded in the header)")
@click.option("--workers", type=int, default=None, help="Worker threads")
@click.option("--bits", is_flag=True, default=None, help="Report rates in bits")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="CSV output path (default stdout)")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="key = value config file")
@handle_errors
def bounds_gaussian(config_path: Optional[str], **flags):
    """Gaussian fixed-cardinality bounds over a distortion grid."""
    run = build_run_config(
        GaussianBoundsRunConfig,
        {"k": config.get_k(), "d": config.get_d(), "seed": config.get_seed(), "workers": config.get_workers()},
        config_path,
        flags,
    )
    grid = log_grid(run.d_min, run.d_max, run.d_points)
    use_case = get_bound_evaluation_use_case(config, bits=run.bits, workers=run.workers)
    rows = use_case.gaussian(run.k, run.d, grid, run.epsilon_exponent, run.epsilon)
    write_rows(run.out, config, GAUSSIAN_COLUMNS, run.as_run_info(), rows)


@click.command("bounds-poisson")
@click.option("--lambda", "mean_cardinality", type=float, default=None, help="Mean cardinality")
@click.option("--cutoff", type=float, default=None, help="USOSPA cut-off c")
@click.option("--kmax", type=int, default=None, help="Lower-bound truncation k_max")
@click.option("--tol", type=float, default=None, help="Slope search tolerance")
@click.option("--d-min", type=float, default=None, help="Smallest distortion of the lower-bound grid")
@click.option("--d-max", type=float, default=None, help="Largest distortion of the lower-bound grid")
@click.option("--d-points", type=int, default=None, help="Number of log-spaced grid points")
@click.option("--n-grid", type=int, default=None, help="Single quantizer grid size N")
@click.option("--n-list", type=str, default=None, help="Grid sizes, e.g. 8,16 or 8..207")
@click.option("--nmax", type=int, default=None, help="Cardinality truncation N_max")
@click.option("--s-lo", type=float, default=None, help="Lower end of the slope search")
@click.option("--s-hi", type=float, default=None, help="Upper end of the slope search")
@click.option("--seed", type=int, default=None, help="Seed (recorded in the header)")
@click.option("--workers", type=int, default=None, help="Worker threads")
@click.option("--bits", is_flag=True, default=None, help="Report rates in bits")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="CSV output path (default stdout)")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="key = value config file")
@handle_errors
def bounds_poisson(config_path: Optional[str], **flags):
    """Poisson unit-square lower bound over a grid and quantizer upper bounds per N."""
    run = build_run_config(
        PoissonBoundsRunConfig,
        {
            "mean_cardinality": config.get_mean_cardinality(),
            "cutoff": config.get_cutoff(),
            "kmax": config.get_kmax(),
            "n_grid": config.get_n_grid(),
            "nmax": config.get_nmax(),
            "tol": config.get_tol(),
            "seed": config.get_seed(),
            "workers": config.get_workers(),
        },
        config_path,
        flags,
    )
    grid = log_grid(run.d_min, run.d_max, run.d_points)
    use_case = get_bound_evaluation_use_case(config, bits=run.bits, workers=run.workers)
    rows = use_case.poisson(run.bound_params(), grid, run.n_list, n_max=run.nmax, tol=run.tol)
    write_rows(run.out, config, POISSON_COLUMNS, run.as_run_info(), rows)
