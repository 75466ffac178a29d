"""Configuration management using Pydantic Settings.

Features:
- Environment variable loading (``QUATRACE_`` prefix)
- Sectioned settings.toml source
- Type validation
- Default values
- Environment-specific settings
"""

from pathlib import Path
from typing import Any, Literal

from pydantic import Field, field_validator, model_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from src.utils.constants import (
    APP_HOME,
    DEFAULT_FIXED_MAX_SYMBOLS,
    DEFAULT_MC_CHUNK_SIZE,
    DEFAULT_SAMPLES,
    DEFAULT_SYMBOLIC_MAX_SYMBOLS,
    DEFAULT_TERM_CAP,
    DEFAULT_WICK_CAP,
    DEFAULT_Z_THRESHOLD,
    HAAR_RESIDUAL_TOL,
)


class Settings(BaseSettings):
    """Application settings loaded from environment variables and settings.toml."""

    # Enumeration caps
    cap: int = Field(
        DEFAULT_TERM_CAP, description="Maximum premap products, the product of (2m-1)!! over colours before pruning"
    )
    wick_cap: int = Field(DEFAULT_WICK_CAP, description="Maximum index assignments summed by the Wick oracle")
    symbolic_max_symbols: int = Field(
        DEFAULT_SYMBOLIC_MAX_SYMBOLS, description="Largest degree for symbolic-N Weingarten tables"
    )
    fixed_max_symbols: int = Field(DEFAULT_FIXED_MAX_SYMBOLS, description="Largest degree for fixed-N tables")

    # Monte Carlo
    default_samples: int = Field(DEFAULT_SAMPLES, description="Monte Carlo draws when --samples is omitted")
    default_seed: int | None = Field(None, description="Seed used when --seed is omitted")
    mc_chunk_size: int = Field(DEFAULT_MC_CHUNK_SIZE, description="Draws per independently seeded chunk")
    workers: int = Field(1, description="Worker threads for term enumeration and Monte Carlo chunks", ge=1)
    z_threshold: float = Field(DEFAULT_Z_THRESHOLD, description="|z| bound for PASS in compare")
    haar_residual_tol: float = Field(
        HAAR_RESIDUAL_TOL, description="Max |U*U - I| before the Haar sampler re-orthonormalizes"
    )

    # Monitoring
    log_level: str = Field("INFO", description="Logging level")
    debug: bool = Field(False, description="Enable debug mode")
    environment: Literal["development", "testing", "production"] = Field(
        "production", description="Deployment environment"
    )

    model_config = SettingsConfigDict(
        env_prefix="QUATRACE_",
        env_file=[str(APP_HOME / ".env"), ".env"],
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    @field_validator("cap", "wick_cap", "default_samples", "mc_chunk_size", "fixed_max_symbols")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Caps and sample counts must be positive."""
        if v <= 0:
            raise ValueError("must be positive")
        return v

    @field_validator("symbolic_max_symbols")
    @classmethod
    def validate_symbolic_max(cls, v: int) -> int:
        """Weingarten degrees are even."""
        if v <= 0 or v % 2:
            raise ValueError("symbolic_max_symbols must be a positive even number")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: Any) -> str:
        """Validate log level."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"log_level must be one of {valid_levels}")
        return v.upper()

    @model_validator(mode="after")
    def validate_cross_field_dependencies(self) -> "Settings":
        """Validate dependencies between fields."""
        if self.symbolic_max_symbols > self.fixed_max_symbols:
            raise ValueError("symbolic_max_symbols cannot exceed fixed_max_symbols")
        if self.z_threshold <= 0:
            raise ValueError("z_threshold must be positive")
        return self

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        """Priority: init kwargs > env vars > settings.toml > .env."""
        from .toml_source import TomlSettingsSource

        return (
            init_settings,
            env_settings,
            TomlSettingsSource(settings_cls),
            dotenv_settings,
        )

    @property
    def settings_path(self) -> Path:
        """Location of the sectioned TOML file."""
        from .toml_source import TOML_PATH

        return TOML_PATH
