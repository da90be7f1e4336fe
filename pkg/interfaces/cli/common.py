"""
Helpers shared by the CLI command modules: value merging, error handling
and result output.
"""

import functools
import logging
from contextlib import contextmanager
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Type, TypeVar

import click
from pydantic import BaseModel

from config.adapter_factory import AdapterFactory
from config.config_file import load_config_file
from config.settings import ConfigPort
from core.exceptions import RateDistortionError
from core.ports.result_writer import ResultWriterPort
from schemas.run_config import validate_run_config

logger = logging.getLogger(__name__)

EXIT_ERROR = 2
EXIT_CHECK_FAILED = 1

ModelT = TypeVar("ModelT", bound=BaseModel)


def _accepted_keys(model: Type[BaseModel]) -> Dict[str, str]:
    """Config-file key -> field name, aliases included."""
    keys: Dict[str, str] = {}
    for name, info in model.model_fields.items():
        keys[name] = name
        if info.alias:
            keys[info.alias] = name
    return keys


def build_run_config(
    model: Type[ModelT],
    defaults: Mapping[str, Any],
    config_path: Optional[str],
    flags: Mapping[str, Any],
) -> ModelT:
    """Merge settings defaults < config file < flags and validate the result."""
    keys = _accepted_keys(model)
    values: Dict[str, Any] = {name: value for name, value in defaults.items() if value is not None}
    if config_path:
        for key, value in load_config_file(config_path, allowed_keys=keys).items():
            values[keys[key]] = value
    for name, value in flags.items():
        if value is None or value == ():
            continue
        values[name] = list(value) if isinstance(value, tuple) else value
    return validate_run_config(model, values)


def handle_errors(func: Callable) -> Callable:
    """Report toolkit errors on one line and exit with status 2."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RateDistortionError as error:
            logger.debug("command failed", exc_info=True)
            click.echo(f"Error: {error}", err=True)
            click.get_current_context().exit(EXIT_ERROR)

    return wrapper


@contextmanager
def result_writer(path: Optional[str], config: ConfigPort) -> Iterator[ResultWriterPort]:
    """CSV writer on ``path``, or on stdout when no path is given."""
    with click.open_file(path or "-", "w", encoding="utf-8") as stream:
        writer = AdapterFactory.create_result_writer_adapter(stream, config)
        try:
            yield writer
        finally:
            writer.close()


def write_rows(
    path: Optional[str],
    config: ConfigPort,
    columns: List[str],
    run_info: Dict[str, Any],
    rows: Iterable[Mapping[str, Any]],
) -> None:
    with result_writer(path, config) as writer:
        writer.write_header(columns, run_info)
        for row in rows:
            writer.write_row(row)
