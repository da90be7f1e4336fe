"""
Result writer port interface for the Point Pattern Rate-Distortion Toolkit.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Mapping


class ResultWriterPort(ABC):
    """Port interface for emitting tabular results."""

    @abstractmethod
    def write_header(self, columns: List[str], run_info: Dict[str, Any]) -> None:
        """Write the header comment (tool version, configuration) and column names."""
        pass

    @abstractmethod
    def write_row(self, row: Mapping[str, Any]) -> None:
        """Write one row; keys must be a subset of the header columns."""
        pass

    @abstractmethod
    def close(self) -> None:
        """Flush and release the underlying stream."""
        pass

    @abstractmethod
    def get_writer_type(self) -> str:
        """Get the type of writer."""
        pass
