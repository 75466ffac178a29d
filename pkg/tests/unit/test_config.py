"""Test configuration loading and validation."""

import pytest
from pydantic import ValidationError

from src.config import Settings, create_test_config, load_config
from src.exceptions import ConfigurationError
from src.utils.constants import DEFAULT_SAMPLES, DEFAULT_TERM_CAP


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("QUATRACE_ENV", "QUATRACE_CAP", "QUATRACE_WORKERS", "QUATRACE_DEFAULT_SEED", "QUATRACE_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    settings = Settings(_env_file=None)

    assert settings.cap == DEFAULT_TERM_CAP
    assert settings.default_samples == DEFAULT_SAMPLES
    assert settings.default_seed is None
    assert settings.workers == 1
    assert settings.environment == "production"


def test_environment_variables_are_read(monkeypatch):
    monkeypatch.setenv("QUATRACE_CAP", "500")
    monkeypatch.setenv("QUATRACE_DEFAULT_SEED", "42")

    settings = Settings(_env_file=None)

    assert settings.cap == 500
    assert settings.default_seed == 42


def test_init_values_win_over_environment(monkeypatch):
    monkeypatch.setenv("QUATRACE_CAP", "500")
    assert Settings(_env_file=None, cap=7).cap == 7


@pytest.mark.parametrize("field", ["cap", "wick_cap", "default_samples", "mc_chunk_size"])
def test_positive_fields(field):
    with pytest.raises(ValidationError):
        Settings(_env_file=None, **{field: 0})


def test_workers_at_least_one():
    with pytest.raises(ValidationError):
        Settings(_env_file=None, workers=0)


def test_symbolic_degree_must_be_even():
    with pytest.raises(ValidationError, match="even"):
        Settings(_env_file=None, symbolic_max_symbols=7)


def test_symbolic_degree_within_fixed_degree():
    with pytest.raises(ValidationError, match="cannot exceed"):
        Settings(_env_file=None, symbolic_max_symbols=12, fixed_max_symbols=10)


def test_z_threshold_positive():
    with pytest.raises(ValidationError, match="z_threshold"):
        Settings(_env_file=None, z_threshold=0)


def test_log_level_normalised():
    assert Settings(_env_file=None, log_level="debug").log_level == "DEBUG"
    with pytest.raises(ValidationError):
        Settings(_env_file=None, log_level="chatty")


def test_settings_path_follows_patched_toml_path(tmp_path):
    assert Settings(_env_file=None).settings_path == tmp_path / "settings.toml"


def test_settings_toml_is_read(tmp_path):
    (tmp_path / "settings.toml").write_text("[caps]\ncap = 1234\n[montecarlo]\nworkers = 3\n", encoding="utf-8")

    settings = Settings(_env_file=None)

    assert (settings.cap, settings.workers) == (1234, 3)


def test_environment_variable_beats_settings_toml(tmp_path, monkeypatch):
    (tmp_path / "settings.toml").write_text("[caps]\ncap = 1234\n", encoding="utf-8")
    monkeypatch.setenv("QUATRACE_CAP", "99")
    assert Settings(_env_file=None).cap == 99


class TestLoadConfig:
    def test_production_by_default(self):
        settings = load_config()
        assert settings.environment == "production"
        assert settings.debug is False

    def test_testing_environment_overrides(self):
        settings = load_config(env="testing")

        assert settings.environment == "testing"
        assert settings.default_seed == 7
        assert settings.log_level == "WARNING"

    def test_environment_from_variable(self, monkeypatch):
        monkeypatch.setenv("QUATRACE_ENV", "development")
        settings = load_config()
        assert (settings.environment, settings.log_level) == ("development", "DEBUG")

    def test_explicit_overrides_survive_environment(self):
        settings = load_config(env="testing", cap=5, workers=2)
        assert (settings.cap, settings.workers) == (5, 2)

    def test_none_overrides_are_ignored(self):
        assert load_config(cap=None).cap == DEFAULT_TERM_CAP

    def test_environment_variable_survives_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("QUATRACE_DEFAULT_SEED", "3")
        assert load_config(env="testing").default_seed == 3

    def test_env_file(self, tmp_path, monkeypatch):
        # registers the variable so the value load_dotenv sets is removed afterwards
        monkeypatch.setenv("QUATRACE_WORKERS", "1")
        monkeypatch.delenv("QUATRACE_WORKERS")
        env_file = tmp_path / "custom.env"
        env_file.write_text("QUATRACE_WORKERS=4\n", encoding="utf-8")
        assert load_config(config_file=env_file).workers == 4

    def test_invalid_value_wrapped(self):
        with pytest.raises(ConfigurationError, match="Configuration loading failed"):
            load_config(cap=-1)

    def test_runtime_validation(self):
        with pytest.raises(ConfigurationError, match="workers"):
            load_config(workers=100)

    def test_unknown_environment_rejected(self):
        with pytest.raises(ConfigurationError):
            load_config(env="staging")


def test_create_test_config():
    settings = create_test_config(cap=11)

    assert settings.environment == "testing"
    assert settings.cap == 11
    assert settings.default_seed == 7
