"""Test fixtures.

These tests deliberately do NOT depend on a user ``.contextprob_config`` or
a ``CONTEXTPROB_SEED`` in the environment: every test starts from the
default tolerances.
"""

from __future__ import annotations

import os
from pathlib import Path

import pytest


@pytest.fixture(autouse=True)
def _point_config_at_nonexistent(monkeypatch):
    """Force every test to run as if no config existed.

    Tests that want to exercise the config-loading path build their own
    config file under ``tmp_path`` and point ``CONTEXTPROB_CONFIG`` at it
    explicitly. The cache is cleared on entry/exit to keep tests isolated.
    """
    monkeypatch.setenv("CONTEXTPROB_CONFIG", "/this/path/does/not/exist")
    monkeypatch.delenv("CONTEXTPROB_SEED", raising=False)

    from contextprob import config as _config

    _config._get_config.cache_clear()
    monkeypatch.setattr(_config, "DEFAULT_CONFIG_PATH", Path(os.environ["CONTEXTPROB_CONFIG"]))
    try:
        yield
    finally:
        _config._get_config.cache_clear()


@pytest.fixture
def valid_config_file(tmp_path: Path) -> Path:
    """Write a structurally valid config file and return its path."""
    cfg = tmp_path / ".contextprob_config"
    cfg.write_text(
        "# tighter classification, looser sampling\n"
        "lambda_zero_tol = 1e-8\n"
        "\n"
        "empirical_lambda_tol = 0.05\n"
    )
    return cfg


@pytest.fixture
def use_config(monkeypatch):
    """Point the cached config at ``path`` for the rest of the test."""
    from contextprob import config as _config

    def _use(path: Path) -> None:
        monkeypatch.setattr(_config, "DEFAULT_CONFIG_PATH", path)
        _config._get_config.cache_clear()

    return _use
