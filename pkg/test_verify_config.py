#!/usr/bin/env python3
"""
Tests for the verifier config: defaults, load/save, overrides and bad keys.
"""

import json
import logging
import sys
import tempfile
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verify_config import CONFIG_ENV, ConfigError, VerifierConfig, default_config_path, load_config, save_config


def test_defaults():
    config = VerifierConfig()
    assert (config.deg, config.trials, config.seed, config.max_resample, config.report_dir) == (6, 3, 0, 20, None)


def test_missing_file_gives_defaults(tmp_path):
    assert load_config(tmp_path / "absent.json") == VerifierConfig()


def test_save_then_load(tmp_path):
    path = tmp_path / "nested" / "config.json"
    config = VerifierConfig(deg=8, trials=5, seed=11, report_dir="reports")
    assert save_config(config, path)
    assert load_config(path) == config


def test_unknown_keys_are_rejected(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"deg": 4, "colour": "blue"}))
    with pytest.raises(ConfigError, match="colour"):
        load_config(path)


def test_bad_values_are_rejected():
    with pytest.raises(ConfigError):
        VerifierConfig(trials=0)
    with pytest.raises(ConfigError):
        VerifierConfig.from_dict({"deg": "six"})
    with pytest.raises(ConfigError):
        VerifierConfig(deg=-1)


def test_unreadable_file_falls_back_with_warning(tmp_path, caplog):
    path = tmp_path / "config.json"
    path.write_text("{not json")
    with caplog.at_level(logging.WARNING):
        assert load_config(path) == VerifierConfig()
    assert "Failed to load config" in caplog.text


def test_environment_overrides_location(tmp_path, monkeypatch):
    path = tmp_path / "env.json"
    monkeypatch.setenv(CONFIG_ENV, str(path))
    assert default_config_path() == path
    save_config(VerifierConfig(deg=3))
    assert load_config().deg == 3


def test_override_skips_unset_flags():
    config = VerifierConfig(deg=5, seed=2).override(deg=None, trials=7, seed=None)
    assert (config.deg, config.trials, config.seed) == (5, 7, 2)


@settings(max_examples=25, deadline=None)
@given(
    deg=st.integers(min_value=0, max_value=12),
    trials=st.integers(min_value=1, max_value=9),
    seed=st.integers(min_value=0, max_value=10 ** 6),
)
def test_config_survives_a_save(deg, trials, seed):
    config = VerifierConfig(deg=deg, trials=trials, seed=seed)
    with tempfile.TemporaryDirectory() as folder:
        path = Path(folder) / "config.json"
        save_config(config, path)
        assert load_config(path) == config


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
