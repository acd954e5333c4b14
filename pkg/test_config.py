#!/usr/bin/env python3
"""
Tests for environment-driven configuration
"""

import sys

import pytest

import config
from config import Config


def test_defaults():
    cfg = Config()
    assert cfg.max_exact_n == 22
    assert cfg.max_labeled_n == 9
    assert cfg.max_free_n == 10
    assert cfg.default_samples == 100
    assert cfg.fixture_path("fig3.tree").endswith("fig3.tree")


def test_from_env(monkeypatch):
    monkeypatch.setenv("MAX_EXACT_N", "12")
    monkeypatch.setenv("DEFAULT_SEED", "42")
    monkeypatch.setenv("SWEEP_WORKERS", "3")
    monkeypatch.setenv("LOG_LEVEL", "debug")
    cfg = Config.from_env()
    assert cfg.max_exact_n == 12
    assert cfg.default_seed == 42
    assert cfg.sweep_workers == 3


def test_validation_collects_every_error():
    with pytest.raises(ValueError) as excinfo:
        Config(max_labeled_n=12, default_samples=0, log_level="LOUD")
    message = str(excinfo.value)
    assert message.startswith("Configuration validation failed")
    assert "max_labeled_n" in message
    assert "default_samples" in message
    assert "log_level" in message


@pytest.mark.parametrize("kwargs", [
    dict(max_exact_n=0),
    dict(max_free_n=11),
    dict(default_seed=-1),
    dict(default_seed=2 ** 64),
    dict(sweep_workers=0),
])
def test_invalid_values(kwargs):
    with pytest.raises(ValueError):
        Config(**kwargs)


def test_reload_config(monkeypatch):
    monkeypatch.setenv("MAX_EXACT_N", "15")
    config.reload_config()
    try:
        assert config.get_max_exact_n() == 15
        assert config.get_config() is config.config
    finally:
        monkeypatch.delenv("MAX_EXACT_N")
        config.reload_config()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
