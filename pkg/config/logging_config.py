"""
Logging setup. All records go to stderr so CSV written to stdout stays clean.
"""

import json
import logging
import sys
from typing import Optional, TextIO

from config.settings import ConfigPort

TEXT_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
HANDLER_NAME = "pprd"


class JsonFormatter(logging.Formatter):
    """One JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "time": self.formatTime(record),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        return json.dumps(payload)


class StderrHandler(logging.StreamHandler):
    """Writes to whatever ``sys.stderr`` is at emit time."""

    def __init__(self):
        super().__init__(sys.stderr)

    @property
    def stream(self) -> TextIO:
        return sys.stderr

    @stream.setter
    def stream(self, value: TextIO) -> None:
        pass


def setup_logging(config: ConfigPort, stream: Optional[TextIO] = None, level: Optional[str] = None) -> None:
    """Configure the root logger from ``log_level`` and ``log_format``.

    Repeated calls replace the handler installed by the previous call.
    """
    handler = logging.StreamHandler(stream) if stream is not None else StderrHandler()
    if config.get_log_format().lower() == "json":
        handler.setFormatter(JsonFormatter())
    else:
        handler.setFormatter(logging.Formatter(TEXT_FORMAT))
    handler.set_name(HANDLER_NAME)

    root = logging.getLogger()
    for existing in list(root.handlers):
        if existing.get_name() == HANDLER_NAME:
            root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel((level or config.get_log_level()).upper())
