"""Environment-specific configuration overrides."""

from typing import Any


class _Overrides:
    @classmethod
    def as_dict(cls) -> dict[str, Any]:
        """Return config as dictionary."""
        return {
            key: value
            for key, value in cls.__dict__.items()
            if not key.startswith("_") and not callable(value) and not isinstance(value, classmethod)
        }


class DevelopmentConfig(_Overrides):
    """Development environment overrides."""

    debug: bool = True
    log_level: str = "DEBUG"
    default_samples: int = 20_000  # quicker feedback loops


class TestingConfig(_Overrides):
    """Testing environment configuration."""

    debug: bool = True
    log_level: str = "WARNING"
    default_seed: int = 7
    default_samples: int = 20_000
    cap: int = 1_000_000
    wick_cap: int = 2_000_000


class ProductionConfig(_Overrides):
    """Production environment configuration."""

    debug: bool = False
    log_level: str = "INFO"
