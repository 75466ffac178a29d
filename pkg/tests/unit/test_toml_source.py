"""Tests for TomlSettingsSource and supporting utilities."""

from pathlib import Path

import tomlkit

from src.config.settings import Settings
from src.config.toml_source import (
    FIELD_TO_SECTION,
    SECTION_MAP,
    TomlSettingsSource,
    _unwrap,
    render_settings_toml,
)

# ── _unwrap ────────────────────────────────────────────────────────────────────


def test_unwrap_plain_value():
    assert _unwrap(42) == 42
    assert _unwrap("hello") == "hello"
    assert _unwrap(True) is True


def test_unwrap_tomlkit_integer():
    doc = tomlkit.parse("[s]\nx = 7\n")
    assert _unwrap(doc["s"]["x"]) == 7


def test_unwrap_tomlkit_float():
    doc = tomlkit.parse("[s]\nx = 2.5\n")
    assert _unwrap(doc["s"]["x"]) == 2.5


def test_unwrap_nested_list():
    raw_list = [tomlkit.integer(1), tomlkit.integer(2)]
    assert _unwrap(raw_list) == [1, 2]


# ── SECTION_MAP / FIELD_TO_SECTION consistency ────────────────────────────────


def test_field_to_section_is_inverse_of_section_map():
    for section, fields in SECTION_MAP.items():
        for field in fields:
            assert FIELD_TO_SECTION[field] == section


def test_no_duplicate_fields_across_sections():
    seen: set[str] = set()
    for fields in SECTION_MAP.values():
        for f in fields:
            assert f not in seen, f"Duplicate field: {f}"
            seen.add(f)


def test_every_setting_has_a_section():
    assert set(FIELD_TO_SECTION) == set(Settings.model_fields)


# ── TomlSettingsSource ────────────────────────────────────────────────────────


def test_source_returns_empty_when_no_file(tmp_path):
    src = TomlSettingsSource(Settings, toml_path=tmp_path / "settings.toml")
    assert src() == {}


def test_source_reads_values_across_sections(tmp_path):
    toml_path = tmp_path / "settings.toml"
    toml_path.write_text(
        "[caps]\ncap = 5000\n[montecarlo]\nz_threshold = 4.0\ndefault_seed = 11\n[logging]\ndebug = true\n",
        encoding="utf-8",
    )
    data = TomlSettingsSource(Settings, toml_path=toml_path)()
    assert data == {"cap": 5000, "z_threshold": 4.0, "default_seed": 11, "debug": True}


def test_source_skips_empty_strings(tmp_path):
    toml_path = tmp_path / "settings.toml"
    toml_path.write_text('[logging]\nlog_level = ""\n', encoding="utf-8")
    assert "log_level" not in TomlSettingsSource(Settings, toml_path=toml_path)()


def test_source_ignores_fields_in_the_wrong_section(tmp_path):
    toml_path = tmp_path / "settings.toml"
    toml_path.write_text("[logging]\ncap = 3\n", encoding="utf-8")
    assert TomlSettingsSource(Settings, toml_path=toml_path)() == {}


def test_source_ignores_unknown_sections(tmp_path):
    toml_path = tmp_path / "settings.toml"
    toml_path.write_text("[unknown_section]\nfoo = 42\n", encoding="utf-8")
    assert TomlSettingsSource(Settings, toml_path=toml_path)() == {}


def test_monkeypatched_toml_path_is_used(monkeypatch, tmp_path):
    import src.config.toml_source as _mod

    custom = tmp_path / "custom.toml"
    custom.write_text("[caps]\nwick_cap = 99\n", encoding="utf-8")
    monkeypatch.setattr(_mod, "TOML_PATH", custom)

    assert TomlSettingsSource(Settings)()["wick_cap"] == 99


# ── render_settings_toml ──────────────────────────────────────────────────────


def test_render_groups_by_section():
    doc = tomlkit.parse(render_settings_toml({"cap": 10, "workers": 2, "log_level": "INFO"}))
    assert doc["caps"]["cap"] == 10
    assert doc["montecarlo"]["workers"] == 2
    assert doc["logging"]["log_level"] == "INFO"


def test_render_skips_none_and_empty_sections():
    text = render_settings_toml({"default_seed": None, "cap": 1})
    assert "default_seed" not in text
    assert "[montecarlo]" not in text


def test_rendered_document_reads_back(tmp_path):
    values = Settings(_env_file=None, cap=321, default_seed=5).model_dump(mode="json")
    toml_path = tmp_path / "settings.toml"
    toml_path.write_text(render_settings_toml(values), encoding="utf-8")

    data = TomlSettingsSource(Settings, toml_path=toml_path)()

    assert data == {k: v for k, v in values.items() if v is not None}


def test_shipped_example_matches_defaults():
    example = Path(__file__).parents[2] / "config" / "settings.example.toml"
    data = TomlSettingsSource(Settings, toml_path=example)()
    defaults = Settings(_env_file=None).model_dump()
    assert data == {k: v for k, v in defaults.items() if v is not None}
