"""Configuration loading with environment detection."""

import os
from pathlib import Path
from typing import Any

import structlog
from dotenv import load_dotenv

from src.exceptions import ConfigurationError, InvalidConfigError

from .environments import DevelopmentConfig, ProductionConfig, TestingConfig
from .settings import Settings

logger = structlog.get_logger()


def resolve_env_file(config_file: Path | None = None) -> Path | None:
    """Find the .env file in priority order.

    1. Explicit config_file argument
    2. ~/.quatrace/.env
    3. ./.env
    4. None (no env file found)
    """
    if config_file:
        return config_file

    from src.utils.constants import APP_HOME

    home_env = APP_HOME / ".env"
    if home_env.exists():
        return home_env

    local = Path(".env")
    if local.exists():
        return local

    return None


def load_config(env: str | None = None, config_file: Path | None = None, **overrides: Any) -> Settings:
    """Load configuration based on environment.

    Args:
        env: Environment name (development, testing, production)
        config_file: Optional path to a .env file
        **overrides: Values that win over every other source (CLI flags)

    Returns:
        Configured Settings instance

    Raises:
        ConfigurationError: If configuration is invalid
    """
    env_file = resolve_env_file(config_file)
    if env_file and env_file.exists():
        logger.debug("Loading .env file", path=str(env_file))
        load_dotenv(env_file)

    env = env or os.getenv("QUATRACE_ENV", "production")
    logger.debug("Loading configuration", environment=env)

    try:
        settings = Settings(environment=env, **{k: v for k, v in overrides.items() if v is not None})
        settings = _apply_environment_overrides(settings, env, explicit=set(overrides))
        _validate_config(settings)

        logger.debug(
            "Configuration loaded successfully",
            environment=env,
            cap=settings.cap,
            workers=settings.workers,
            debug=settings.debug,
        )
        return settings

    except Exception as e:
        logger.error("Failed to load configuration", error=str(e), environment=env)
        raise ConfigurationError(f"Configuration loading failed: {e}") from e


def _apply_environment_overrides(settings: Settings, env: str | None, explicit: set[str] | None = None) -> Settings:
    """Apply environment-specific configuration overrides.

    Explicitly supplied values and QUATRACE_* environment variables are kept.
    """
    overrides: dict[str, Any] = {}

    if env == "development":
        overrides = DevelopmentConfig.as_dict()
    elif env == "testing":
        overrides = TestingConfig.as_dict()
    elif env == "production":
        overrides = ProductionConfig.as_dict()
    else:
        logger.warning("Unknown environment, using default settings", environment=env)

    explicit = explicit or set()
    for key, value in overrides.items():
        if key in explicit or os.getenv(f"QUATRACE_{key.upper()}") is not None:
            continue
        if hasattr(settings, key):
            setattr(settings, key, value)
            logger.debug("Applied environment override", key=key, value=value, environment=env)

    return settings


def _validate_config(settings: Settings) -> None:
    """Perform additional runtime validation."""
    if settings.mc_chunk_size > settings.default_samples * 10:
        raise InvalidConfigError("mc_chunk_size is far larger than default_samples")
    if settings.workers > 64:
        raise InvalidConfigError("workers must be at most 64")


def create_test_config(**overrides: Any) -> Settings:
    """Create configuration for testing with optional overrides.

    Args:
        **overrides: Configuration values to override

    Returns:
        Settings instance configured for testing
    """
    test_values = TestingConfig.as_dict()
    test_values["environment"] = "testing"
    test_values.update(overrides)
    return Settings(**test_values)
