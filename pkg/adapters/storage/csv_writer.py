"""
CSV result writer adapter.

The first line is a ``#`` comment carrying the tool name, version and the
full run configuration as JSON; the second line holds the column names.
"""

import csv
import json
import math
from typing import Any, Dict, List, Mapping, Optional, TextIO

from core.exceptions import ConfigError
from core.ports.result_writer import ResultWriterPort


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return repr(float(value))
    return str(value)


class CsvResultWriterAdapter(ResultWriterPort):
    """Comma-separated rows on a text stream, in the order they are written."""

    def __init__(self, stream: TextIO, tool_name: str, tool_version: str, close_stream: bool = False):
        self._stream = stream
        self._tool_name = tool_name
        self._tool_version = tool_version
        self._close_stream = close_stream
        self._columns: Optional[List[str]] = None
        self._writer = csv.writer(stream, lineterminator="\n")

    def write_header(self, columns: List[str], run_info: Dict[str, Any]) -> None:
        if self._columns is not None:
            raise ConfigError("CSV header already written")
        config_json = json.dumps(run_info, sort_keys=True, default=str)
        self._stream.write(f"# {self._tool_name} {self._tool_version} config={config_json}\n")
        self._columns = list(columns)
        self._writer.writerow(self._columns)

    def write_row(self, row: Mapping[str, Any]) -> None:
        if self._columns is None:
            raise ConfigError("write_header must be called before write_row")
        unknown = set(row) - set(self._columns)
        if unknown:
            raise ConfigError(f"row has columns missing from the header: {sorted(unknown)}")
        self._writer.writerow([format_value(row.get(column)) for column in self._columns])

    def close(self) -> None:
        self._stream.flush()
        if self._close_stream:
            self._stream.close()

    def get_writer_type(self) -> str:
        return "csv"
