"""Tests for run configuration loading."""

from pathlib import Path

import pytest
from readk_prg._config import (
    ConfigError,
    RunConfig,
    desk_corpus,
    load_run_config,
    parse_config_text,
    provenance,
    toy_regression_corpus,
)
from readk_prg._generators import Mode


def test_defaults():
    """Test an empty configuration yields the defaults."""
    config = load_run_config()

    assert config == RunConfig()
    assert config.input_cap == 24
    assert config.seed_cap == 26
    assert config.samples == 10**6
    assert config.ci_method == "normal"
    assert config.corpus is None


def test_overrides_win_over_file(tmp_path: Path):
    """Test flag overrides replace file values; None overrides are ignored."""
    path = tmp_path / "run.yaml"
    path.write_text("samples: 20000\nthreads: 2\nmode: toy\n")

    config = load_run_config(path, {"samples": 50000, "threads": None})

    assert config.samples == 50000
    assert config.threads == 2
    assert config.mode is Mode.TOY


def test_corpus_section():
    """Test a corpus section is validated into specs."""
    text = """
corpus:
  name: small
  method: exact
  programs:
    - kind: parity
      n: 6
      order: identity
  generators:
    - name: toy
      kind: inw
      mode: toy
"""
    config = parse_config_text(text)

    assert config.corpus is not None
    assert config.corpus.name == "small"
    assert config.corpus.programs[0].n == 6
    assert config.corpus.generators[0].mode is Mode.TOY


def test_invalid_field_reports_location():
    """Test validation errors carry the field path, line and column."""
    text = "rng_seed: 3\nthreads: 0\n"

    with pytest.raises(ConfigError, match="run.yaml:2:10: threads") as exc_info:
        parse_config_text(text, source="run.yaml")

    assert exc_info.value.field == "threads"
    assert exc_info.value.line == 2


def test_nested_invalid_field():
    """Test nested fields are located inside the corpus section."""
    text = "corpus:\n  programs:\n    - kind: parity\n      n: 0\n"

    with pytest.raises(ConfigError) as exc_info:
        parse_config_text(text)

    assert exc_info.value.field == "corpus.programs.0.n"
    assert exc_info.value.line == 4


def test_unknown_key_rejected():
    """Test unknown keys are not silently ignored."""
    with pytest.raises(ConfigError, match="sample_count"):
        parse_config_text("sample_count: 3\n")


def test_yaml_syntax_error():
    """Test YAML syntax errors carry a line."""
    with pytest.raises(ConfigError) as exc_info:
        parse_config_text("samples: [1, 2\n")

    assert exc_info.value.line is not None


def test_top_level_must_be_mapping():
    """Test a list document is rejected."""
    with pytest.raises(ConfigError, match="mapping"):
        parse_config_text("- 1\n- 2\n")


def test_missing_file(tmp_path: Path):
    """Test unreadable files raise ConfigError."""
    with pytest.raises(ConfigError, match="cannot read config"):
        load_run_config(tmp_path / "missing.yaml")


def test_provenance_embeds_config():
    """Test provenance carries the tool name and the merged configuration."""
    header = provenance(RunConfig(rng_seed=5))

    assert header["tool"] == "readk-prg"
    assert header["config"]["rng_seed"] == 5
    assert "version" in header
    assert "command" not in header


def test_provenance_records_command():
    """Test a command and its arguments are kept next to the configuration."""
    header = provenance(RunConfig(), "suite", {"n_max": 2, "corpus": False})

    assert header["command"] == "suite"
    assert header["arguments"] == {"n_max": 2, "corpus": False}


def test_bundled_corpora():
    """Test the bundled corpora validate and differ in method."""
    assert desk_corpus().method == "auto"
    regression = toy_regression_corpus()
    assert regression.method == "exact"
    assert all(g.mode is Mode.TOY for g in regression.generators)
