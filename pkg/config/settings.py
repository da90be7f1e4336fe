"""
Configuration settings for the Point Pattern Rate-Distortion Toolkit.
Implements port/adapter pattern for configuration management.
"""

import os
from abc import ABC, abstractmethod
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class ConfigPort(ABC):
    """Port interface for configuration management."""

    @abstractmethod
    def get_app_name(self) -> str:
        pass

    @abstractmethod
    def get_app_version(self) -> str:
        pass

    @abstractmethod
    def get_environment(self) -> str:
        pass

    @abstractmethod
    def get_log_level(self) -> str:
        pass

    @abstractmethod
    def get_log_format(self) -> str:
        pass

    # Randomness
    @abstractmethod
    def get_seed(self) -> Optional[int]:
        pass

    # Source parameters
    @abstractmethod
    def get_k(self) -> int:
        pass

    @abstractmethod
    def get_d(self) -> int:
        pass

    @abstractmethod
    def get_mean_cardinality(self) -> float:
        pass

    @abstractmethod
    def get_cutoff(self) -> float:
        pass

    # Bound parameters
    @abstractmethod
    def get_kmax(self) -> Optional[int]:
        pass

    @abstractmethod
    def get_n_grid(self) -> Optional[int]:
        pass

    @abstractmethod
    def get_nmax(self) -> Optional[int]:
        pass

    @abstractmethod
    def get_tol(self) -> float:
        pass

    # Training parameters
    @abstractmethod
    def get_codebook_size(self) -> int:
        pass

    @abstractmethod
    def get_samples(self) -> Optional[int]:
        pass

    @abstractmethod
    def get_heuristic(self) -> str:
        pass

    @abstractmethod
    def get_max_iters(self) -> int:
        pass

    @abstractmethod
    def get_rel_tol(self) -> float:
        pass

    @abstractmethod
    def get_convergence_window(self) -> int:
        pass

    # Evaluation parameters
    @abstractmethod
    def get_eval_samples(self) -> int:
        pass

    @abstractmethod
    def get_workers(self) -> int:
        pass

    @abstractmethod
    def get_chunk_size(self) -> int:
        pass


class BaseConfig(BaseSettings):
    """Base configuration class.

    Every field can be set from the environment variable of the same name
    (upper case) or from a ``.env`` file.
    """

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    # Environment
    environment: str = Field(default="development")

    # Application Configuration
    app_name: str = Field(default="pprd")
    app_version: str = Field(default="0.1.0")

    # Logging Configuration
    log_level: str = Field(default="INFO")
    log_format: str = Field(default="text")

    seed: Optional[int] = Field(default=0)

    # Source Configuration
    k: int = Field(default=4, ge=1)
    d: int = Field(default=2, ge=1)
    mean_cardinality: float = Field(default=10.0, gt=0)
    cutoff: float = Field(default=0.1, gt=0)

    # Bound Configuration
    kmax: Optional[int] = Field(default=None, ge=1)
    n_grid: Optional[int] = Field(default=None, ge=1)
    nmax: Optional[int] = Field(default=None, ge=1)
    tol: float = Field(default=1e-9, gt=0)

    # Training Configuration
    M: int = Field(default=64, ge=1)
    samples: Optional[int] = Field(default=None, ge=1)  # None: 100 per codeword
    heuristic: str = Field(default="modified_single_hub")
    max_iters: int = Field(default=50, ge=0)
    rel_tol: float = Field(default=1e-4, ge=0)
    convergence_window: int = Field(default=3, ge=1)

    # Evaluation Configuration
    eval_samples: int = Field(default=100_000, ge=100)
    workers: int = Field(default=1, ge=1)
    chunk_size: int = Field(default=10_000, ge=1)


class DevelopmentConfig(BaseConfig):
    """Development environment configuration."""

    log_level: str = "DEBUG"


class ProductionConfig(BaseConfig):
    """Production environment configuration."""

    log_level: str = "INFO"
    log_format: str = "json"


class TestConfig(BaseConfig):
    """Test environment configuration."""

    # Test 환경에서는 .env 파일을 읽지 않음
    model_config = SettingsConfigDict(env_file=None, extra="ignore")

    environment: str = "test"
    log_level: str = "WARNING"
    eval_samples: int = 1000
    max_iters: int = 10


class ConfigAdapter(ConfigPort):
    """Adapter implementation for configuration management."""

    def __init__(self, config: BaseConfig):
        self._config = config

    @property
    def settings(self) -> BaseConfig:
        return self._config

    def get_app_name(self) -> str:
        return self._config.app_name

    def get_app_version(self) -> str:
        return self._config.app_version

    def get_environment(self) -> str:
        return self._config.environment

    def get_log_level(self) -> str:
        return self._config.log_level

    def get_log_format(self) -> str:
        return self._config.log_format

    def get_seed(self) -> Optional[int]:
        return self._config.seed

    def get_k(self) -> int:
        return self._config.k

    def get_d(self) -> int:
        return self._config.d

    def get_mean_cardinality(self) -> float:
        return self._config.mean_cardinality

    def get_cutoff(self) -> float:
        return self._config.cutoff

    def get_kmax(self) -> Optional[int]:
        return self._config.kmax

    def get_n_grid(self) -> Optional[int]:
        return self._config.n_grid

    def get_nmax(self) -> Optional[int]:
        return self._config.nmax

    def get_tol(self) -> float:
        return self._config.tol

    def get_codebook_size(self) -> int:
        return self._config.M

    def get_samples(self) -> Optional[int]:
        return self._config.samples

    def get_heuristic(self) -> str:
        return self._config.heuristic

    def get_max_iters(self) -> int:
        return self._config.max_iters

    def get_rel_tol(self) -> float:
        return self._config.rel_tol

    def get_convergence_window(self) -> int:
        return self._config.convergence_window

    def get_eval_samples(self) -> int:
        return self._config.eval_samples

    def get_workers(self) -> int:
        return self._config.workers

    def get_chunk_size(self) -> int:
        return self._config.chunk_size


def create_config() -> ConfigPort:
    """Factory function to create appropriate configuration based on environment."""
    environment = os.getenv("ENVIRONMENT", "development").lower()

    if environment == "production":
        settings = ProductionConfig()
    elif environment == "test":
        settings = TestConfig()
    else:
        settings = DevelopmentConfig()

    return ConfigAdapter(settings)


# Global configuration instance
config = create_config()
