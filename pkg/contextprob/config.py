"""Numerical tolerances and seed resolution.

Tolerances live in a ``key = value`` file (``~/.contextprob_config`` unless
``CONTEXTPROB_CONFIG`` says otherwise). The file is optional: when it is
missing every tolerance keeps its default.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace
from functools import lru_cache
from pathlib import Path
from typing import Mapping

from pyiron_snippets.logger import logger

# Overridable via env var to ease testing / CI.
DEFAULT_CONFIG_PATH = Path(
    os.environ.get("CONTEXTPROB_CONFIG", Path.home() / ".contextprob_config")
)

SEED_ENV_VAR = "CONTEXTPROB_SEED"
MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class Tolerances:
    """Tolerances used across the calculus.

    Attributes:
        lambda_zero_tol: |lambda| at or below this labels a profile Classical.
        lambda_boundary_tol: slack on |lambda| = 1 before a coefficient counts
            as hyperbolic.
        orthogonality_tol: allowed |lambda_1 + K lambda_2|.
        probability_sum_tol: allowed deviation of a distribution sum from 1.
        probability_floor: probabilities at or below this are rejected.
        clamp_tol: rounding-level excursions outside [0, 1] that are clamped.
        amplitude_norm_tol: allowed deviation of amplitude row norms from 1.
        decomposable_tol: allowed deviation of composed squared norms from 1.
        unitarity_tol: allowed deviation of row inner products from delta_ij.
        empirical_lambda_tol: classification tolerance for sampled profiles.
    """

    lambda_zero_tol: float = 1e-9
    lambda_boundary_tol: float = 1e-9
    orthogonality_tol: float = 1e-9
    probability_sum_tol: float = 1e-12
    probability_floor: float = 1e-300
    clamp_tol: float = 1e-12
    amplitude_norm_tol: float = 1e-12
    decomposable_tol: float = 1e-9
    unitarity_tol: float = 1e-10
    empirical_lambda_tol: float = 0.02

    def with_overrides(self, overrides: Mapping[str, float | str]) -> "Tolerances":
        """Return a copy with the named tolerances replaced."""
        return replace(self, **_validated(overrides))

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


def _validated(values: Mapping[str, float | str]) -> dict[str, float]:
    known = {f.name for f in fields(Tolerances)}
    result = {}
    for key, raw in values.items():
        if key not in known:
            raise ValueError(
                f"Unknown tolerance {key!r}. Valid options: {sorted(known)}"
            )
        try:
            value = float(raw)
        except (TypeError, ValueError) as e:
            raise ValueError(f"Tolerance {key!r} is not a number: {raw!r}") from e
        if not value >= 0.0:
            raise ValueError(f"Tolerance {key!r} must be nonnegative, got {value}")
        result[key] = value
    return result


def read_config(config_file: Path) -> Tolerances:
    """
    Read tolerances from a ``key = value`` configuration file.

    Args:
        config_file (Path): Path to the configuration file.

    Returns:
        Tolerances: Defaults with every key found in the file replaced.

    Raises:
        FileNotFoundError: If the configuration file does not exist.
        ValueError: If a key is unknown or a value is not a nonnegative number.
    """
    config_data = {}
    try:
        with open(config_file, "r") as f:
            for line in f:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValueError(f"Malformed config line: {line!r}")
                key, value = line.split("=", 1)
                config_data[key.strip()] = value.strip()
    except FileNotFoundError as e:
        raise FileNotFoundError(f"Configuration file not found: {config_file}") from e

    return Tolerances().with_overrides(config_data)


@lru_cache(maxsize=1)
def _get_config() -> Tolerances:
    """Lazily read and cache the tolerances from ``DEFAULT_CONFIG_PATH``."""
    if not Path(DEFAULT_CONFIG_PATH).is_file():
        logger.debug(f"No config at {DEFAULT_CONFIG_PATH}; using default tolerances")
        return Tolerances()
    return read_config(DEFAULT_CONFIG_PATH)


def get_tolerances(tolerances: Tolerances | None = None) -> Tolerances:
    """Return ``tolerances`` if given, else the configured ones."""
    if tolerances is not None:
        return tolerances
    return _get_config()


def validate_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ValueError(f"Seed must be an integer, got {seed!r}")
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"Seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def resolve_seed(explicit: int | None, fallback: int) -> int:
    """Pick the explicit seed, else ``CONTEXTPROB_SEED``, else ``fallback``."""
    if explicit is not None:
        return validate_seed(explicit)
    env_seed = os.environ.get(SEED_ENV_VAR)
    if env_seed:
        try:
            return validate_seed(int(env_seed))
        except ValueError as e:
            raise ValueError(f"{SEED_ENV_VAR}={env_seed!r} is not a valid seed") from e
    return validate_seed(fallback)
