"""
Loader for the ``--config <file>`` format: ``key = value`` lines, ``#``
comments, blank lines ignored.
"""

from pathlib import Path
from typing import Dict, Iterable, Optional, Union

from core.exceptions import ConfigError


def parse_config_text(text: str, allowed_keys: Optional[Iterable[str]] = None) -> Dict[str, str]:
    """Raw string values keyed by name; later lines override earlier ones."""
    allowed = set(allowed_keys) if allowed_keys is not None else None
    values: Dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {number}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"line {number}: empty key or value in {raw.strip()!r}")
        key = key.replace("-", "_")
        if allowed is not None and key not in allowed:
            raise ConfigError(f"line {number}: unknown key {key!r}")
        values[key] = value
    return values


def load_config_file(path: Union[str, Path], allowed_keys: Optional[Iterable[str]] = None) -> Dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise ConfigError(f"cannot read config file {path}: {error}") from error
    return parse_config_text(text, allowed_keys)
