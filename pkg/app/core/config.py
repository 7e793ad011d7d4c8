"""
Centralized configuration management using Pydantic Settings.
"""
from typing import Literal

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from sympy import isprime


class Settings(BaseSettings):
    """Application settings loaded from environment variables (prefix TORELLI_)."""

    # Project
    project_title: str = "Elliptic Surface Torelli Engine"
    project_version: str = "1.0.0"

    # Ground field
    prime: int = 101

    # Exact algebra
    root_method: Literal["splitting", "scan"] = "splitting"
    root_scan_limit: int = 10_000
    koszul_size_cap: int = 1_000_000
    verify_riemann_roch: bool = True
    rr_cache_size: int = 4096

    # Constructors
    retry_cap: int = 100

    # Database Configuration
    database_url: str = "sqlite:///torelli_runs.db"
    database_echo: bool = False  # SQLAlchemy echo mode

    # Logging Configuration
    log_level: str = "WARNING"
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    model_config = SettingsConfigDict(
        env_prefix="TORELLI_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @field_validator("prime")
    @classmethod
    def _check_prime(cls, value: int) -> int:
        # numpy int64 elimination needs p^2 to stay far from overflow
        if value <= 3 or value >= 2**31 or not isprime(value):
            raise ValueError(f"prime must be a prime with 3 < p < 2^31, got {value}")
        return value


# Global settings instance
settings = Settings()
