"""
Codebook store port interface for the Point Pattern Rate-Distortion Toolkit.
"""

from abc import ABC, abstractmethod
from typing import Union

from core.entities.patterns import Codebook, CodebookFamily

StoredCodebook = Union[Codebook, CodebookFamily]


class CodebookStorePort(ABC):
    """Port interface for codebook persistence."""

    @abstractmethod
    def save(self, codebook: StoredCodebook, path: str) -> None:
        """Write a codebook or a per-cardinality family."""
        pass

    @abstractmethod
    def load(self, path: str) -> StoredCodebook:
        """Read back a codebook (one block) or a family (several blocks)."""
        pass

    @abstractmethod
    def dumps(self, codebook: StoredCodebook) -> str:
        """Serialized text of a codebook."""
        pass

    @abstractmethod
    def get_store_type(self) -> str:
        """Get the type of store."""
        pass
