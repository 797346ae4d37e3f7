"""Smoke tests that do not require a config file or a seed in the environment.

The behaviours locked in here:

* the package imports without ``~/.contextprob_config`` and falls back to
  the default tolerances;
* ``read_config`` handles valid input and surfaces the right errors;
* seed resolution honours the explicit seed, then ``CONTEXTPROB_SEED``.
"""

from __future__ import annotations

from pathlib import Path

import pytest


# ----------------------------------------------------------------------------
# Importability
# ----------------------------------------------------------------------------

def test_package_imports_without_config():
    import contextprob  # noqa: F401
    from contextprob.cli import main  # noqa: F401
    from contextprob.simulator import convergence_study  # noqa: F401


def test_missing_config_uses_defaults():
    from contextprob.config import Tolerances, get_tolerances

    assert get_tolerances() == Tolerances()


def test_explicit_tolerances_win_over_config():
    from contextprob.config import Tolerances, get_tolerances

    mine = Tolerances(lambda_zero_tol=0.5)
    assert get_tolerances(mine) is mine


# ----------------------------------------------------------------------------
# read_config
# ----------------------------------------------------------------------------

def test_read_config_happy_path(valid_config_file: Path):
    from contextprob.config import read_config

    tol = read_config(valid_config_file)

    assert tol.lambda_zero_tol == 1e-8
    assert tol.empirical_lambda_tol == 0.05
    # untouched keys keep their defaults
    assert tol.orthogonality_tol == 1e-9


def test_configured_tolerances_are_cached(valid_config_file: Path, use_config):
    from contextprob.config import get_tolerances

    use_config(valid_config_file)
    first = get_tolerances()
    valid_config_file.write_text("lambda_zero_tol = 0.3\n")
    assert get_tolerances() is first
    assert first.lambda_zero_tol == 1e-8


def test_read_config_missing_file(tmp_path: Path):
    from contextprob.config import read_config

    with pytest.raises(FileNotFoundError):
        read_config(tmp_path / "does_not_exist")


def test_read_config_unknown_key(tmp_path: Path):
    from contextprob.config import read_config

    bad = tmp_path / "bad.cfg"
    bad.write_text("lambda_zero_tolerance = 1e-3\n")

    with pytest.raises(ValueError, match="lambda_zero_tolerance"):
        read_config(bad)


def test_read_config_negative_value(tmp_path: Path):
    from contextprob.config import read_config

    bad = tmp_path / "bad.cfg"
    bad.write_text("clamp_tol = -1\n")

    with pytest.raises(ValueError, match="clamp_tol"):
        read_config(bad)


def test_read_config_line_without_equals(tmp_path: Path):
    from contextprob.config import read_config

    bad = tmp_path / "bad.cfg"
    bad.write_text("clamp_tol 1e-3\n")

    with pytest.raises(ValueError, match="Malformed"):
        read_config(bad)


def test_with_overrides_is_a_pure_copy():
    from contextprob.config import Tolerances

    base = Tolerances()
    tighter = base.with_overrides({"unitarity_tol": "1e-14"})

    assert tighter.unitarity_tol == 1e-14
    assert base.unitarity_tol == 1e-10


# ----------------------------------------------------------------------------
# Seeds
# ----------------------------------------------------------------------------

def test_resolve_seed_order(monkeypatch):
    from contextprob.config import resolve_seed

    assert resolve_seed(None, 7) == 7
    monkeypatch.setenv("CONTEXTPROB_SEED", "11")
    assert resolve_seed(None, 7) == 11
    assert resolve_seed(3, 7) == 3


@pytest.mark.parametrize("seed", [-1, 2**64, 1.5, True])
def test_invalid_seeds_are_rejected(seed):
    from contextprob.config import validate_seed

    with pytest.raises(ValueError):
        validate_seed(seed)


def test_invalid_seed_in_environment(monkeypatch):
    from contextprob.config import resolve_seed

    monkeypatch.setenv("CONTEXTPROB_SEED", "not-a-seed")
    with pytest.raises(ValueError, match="CONTEXTPROB_SEED"):
        resolve_seed(None, 0)
