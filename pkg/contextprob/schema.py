"""JSON problem and scenario files.

Every document carries ``"schema_version": 1`` at the top level. Structural
problems (missing keys, wrong shapes, non-numbers) raise
:class:`~contextprob.errors.MalformedInput`; values that parse but violate the
probability axioms raise the domain errors of the constructed objects.
"""

from __future__ import annotations

import json
import numbers
from dataclasses import dataclass
from pathlib import Path

from contextprob.errors import MalformedInput
from contextprob.probability import (
    ContextDistribution,
    OutcomeDistribution,
    PhaseRepresentation,
    TransitionMatrix,
)
from contextprob.simulator import EnsembleScenario

SCHEMA_VERSION = 1


@dataclass(frozen=True, eq=False)
class Problem:
    """
    A ``(p, P, q)`` triple plus the optional inputs of the other subcommands.

    ``lambdas``/``phases`` feed ``transform``; ``xi``/``gamma`` (and for the
    hyperbolic representation ``signs``/``matrix_signs``) feed the
    representation subcommands.
    """

    p: ContextDistribution
    P: TransitionMatrix
    q: OutcomeDistribution | None = None
    lambdas: list[float] | None = None
    phases: tuple[PhaseRepresentation, ...] | None = None
    xi: list[float] | None = None
    gamma: list[list[float]] | None = None
    signs: list[int] | None = None
    matrix_signs: list[list[int]] | None = None


def load_document(path: str | Path) -> dict:
    """Read a JSON document and check its schema version."""
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise MalformedInput(f"Input file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise MalformedInput(f"{path} must hold a JSON object, got {type(data).__name__}")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise MalformedInput(
            f"Unsupported schema_version {version!r}; expected {SCHEMA_VERSION}"
        )
    return data


def dump_document(document: dict) -> str:
    """Serialize with the schema version, sorted keys and a trailing newline."""
    return json.dumps({"schema_version": SCHEMA_VERSION, **document}, sort_keys=True, indent=2) + "\n"


def _is_number(value) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _numbers(data: dict, key: str, depth: int = 1, required: bool = True):
    if key not in data or data[key] is None:
        if required:
            raise MalformedInput(f"Missing required key {key!r}")
        return None
    value = data[key]

    def check(item, level: int) -> None:
        if level == 0:
            if not _is_number(item):
                raise MalformedInput(f"{key!r} must contain numbers, got {item!r}")
            return
        if not isinstance(item, list) or not item:
            raise MalformedInput(f"{key!r} must be a nested list of depth {depth}, got {item!r}")
        for sub in item:
            check(sub, level - 1)

    check(value, depth)
    return value


def _integer(data: dict, key: str, default: int | None = None) -> int:
    if key not in data:
        if default is None:
            raise MalformedInput(f"Missing required key {key!r}")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInput(f"{key!r} must be an integer, got {value!r}")
    return value


def _phases(data: dict) -> tuple[PhaseRepresentation, ...] | None:
    raw = data.get("phases")
    if raw is None:
        return None
    if not isinstance(raw, list):
        raise MalformedInput(f"'phases' must be a list, got {raw!r}")
    try:
        return tuple(PhaseRepresentation.from_dict(item) for item in raw)
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedInput(f"Malformed phase entry in {raw!r}") from e


def read_problem(data: dict) -> Problem:
    """Build a :class:`Problem` from a parsed problem document."""
    p = _numbers(data, "p")
    P = _numbers(data, "P", depth=2)
    q = _numbers(data, "q", required=False)
    return Problem(
        p=ContextDistribution(p),
        P=TransitionMatrix(P),
        q=None if q is None else OutcomeDistribution(q),
        lambdas=_numbers(data, "lambdas", required=False),
        phases=_phases(data),
        xi=_numbers(data, "xi", required=False),
        gamma=_numbers(data, "gamma", depth=2, required=False),
        signs=_numbers(data, "signs", required=False),
        matrix_signs=_numbers(data, "matrix_signs", depth=2, required=False),
    )


def read_scenario(data: dict) -> EnsembleScenario:
    """Build an :class:`EnsembleScenario` from a parsed scenario document."""
    pass_through = data.get("pass_through", False)
    if not isinstance(pass_through, bool):
        raise MalformedInput(f"'pass_through' must be a boolean, got {pass_through!r}")
    return EnsembleScenario(
        joint=_numbers(data, "joint", depth=2),
        disturbed=TransitionMatrix(_numbers(data, "disturbed", depth=2)),
        n=_integer(data, "n"),
        seed=_integer(data, "seed", 0),
        replications=_integer(data, "replications", 1),
        pass_through=pass_through,
    )
