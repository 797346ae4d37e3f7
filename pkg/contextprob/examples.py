"""Worked examples with known closed-form answers.

Three transitions are recomputed end to end:

* ``T``: p = (1/2, 1/2), P = [[1/2, 1/2], [1/3, 2/3]] with trigonometric
  phases (3 pi/4, pi/3), which no unitary matrix can produce.
* ``H``: p = (1/4, 3/4), P all 1/2, at the largest admissible hyperbolic
  phase.
* ``HT``: p = (1/2, 1/2), P = [[4/5, 1/5], [4/5, 1/5]], q = (2/5, 3/5), a
  mixed trigonometric/hyperbolic transition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from pyiron_snippets.logger import logger

from contextprob.complex_rep import (
    amplitudes_from_context,
    born,
    compose,
    is_unitary,
    matrix_from_probabilities,
)
from contextprob.config import Tolerances, get_tolerances
from contextprob.errors import NonphysicalResult
from contextprob.hyperbolic_rep import (
    admissible_h_phase_bound,
    g_amplitudes_from_context,
    g_born,
    g_compose,
    g_matrix_from_probabilities,
    max_h_phase,
)
from contextprob.probability import (
    ContextDistribution,
    OutcomeDistribution,
    PhaseRepresentation,
    TransitionMatrix,
    coupling_coefficient,
    forward_transform,
    interference_coefficients,
    profile_from_lambdas,
    profile_from_phases,
)

GOLDEN: dict[str, float | str | bool] = {
    "trigonometric/K": math.sqrt(2.0),
    "trigonometric/q1": 5.0 / 12.0 - 1.0 / (2.0 * math.sqrt(3.0)),
    "trigonometric/q2": 7.0 / 12.0 + 1.0 / (2.0 * math.sqrt(3.0)),
    "trigonometric/behaviour": "T",
    "trigonometric/theta1": 3.0 * math.pi / 4.0,
    "trigonometric/theta2": math.pi / 3.0,
    "trigonometric/born_q1": 5.0 / 12.0 - 1.0 / (2.0 * math.sqrt(3.0)),
    "trigonometric/unitary": False,
    "hyperbolic/e": 2.0 / math.sqrt(3.0),
    "hyperbolic/q1_at_max_phase": 0.0,
    "hyperbolic/q2_at_max_phase": 1.0,
    "hyperbolic/rejects_beyond_max_phase": True,
    "hyperbolic/g_born_q1_at_max_phase": 1.0,
    "mixed/K": 0.25,
    "mixed/lambda1": -0.5,
    "mixed/lambda2": 2.0,
    "mixed/behaviour": "HT",
    "mixed/q1": 0.4,
    "mixed/q2": 0.6,
    "mixed/cosh_phase": math.log(2.0 + math.sqrt(3.0)),
}


@dataclass(frozen=True)
class ExampleCheck:
    name: str
    expected: float | str | bool
    computed: float | str | bool
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class ExampleReport:
    tol: float
    checks: tuple[ExampleCheck, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> tuple[ExampleCheck, ...]:
        return tuple(check for check in self.checks if not check.passed)

    def to_dict(self) -> dict:
        return {
            "tol": self.tol,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


def _trigonometric(tolerances: Tolerances) -> dict:
    p = ContextDistribution([0.5, 0.5])
    P = TransitionMatrix([[0.5, 0.5], [1.0 / 3.0, 2.0 / 3.0]])
    theta = (3.0 * math.pi / 4.0, math.pi / 3.0)
    profile = profile_from_phases(
        [PhaseRepresentation("cos", t) for t in theta], p, P, tolerances
    )
    q = forward_transform(p, P, profile, tolerances)
    recovered = interference_coefficients(p, P, q, tolerances)
    U = matrix_from_probabilities(P, [[theta[0], theta[1]], [0.0, 0.0]])
    beta = compose(amplitudes_from_context(p, (0.0, 0.0)), U)
    return {
        "trigonometric/K": coupling_coefficient(P),
        "trigonometric/q1": float(q.probs[0]),
        "trigonometric/q2": float(q.probs[1]),
        "trigonometric/behaviour": recovered.behaviour.value,
        "trigonometric/theta1": recovered.phases[0].theta,
        "trigonometric/theta2": recovered.phases[1].theta,
        "trigonometric/born_q1": float(born(beta, tolerances).probs[0]),
        "trigonometric/unitary": is_unitary(U, tolerances.unitarity_tol),
    }


def _hyperbolic(tolerances: Tolerances) -> dict:
    p = ContextDistribution([0.25, 0.75])
    P = TransitionMatrix([[0.5, 0.5], [0.5, 0.5]])
    bound = admissible_h_phase_bound(p.probs[0], P.rows[0, 0])
    theta_max = max_h_phase(p.probs[0], P.rows[0, 0])
    at_max = forward_transform(
        p, P, profile_from_lambdas([-math.cosh(theta_max), math.cosh(theta_max)], p, P, tolerances),
        tolerances,
    )
    beyond = theta_max + 0.01
    try:
        forward_transform(
            p, P, profile_from_lambdas([-math.cosh(beyond), math.cosh(beyond)], p, P, tolerances),
            tolerances,
        )
        rejected = False
    except NonphysicalResult:
        rejected = True
    U = g_matrix_from_probabilities(P, [[1, 1], [1, -1]], [[0.0, 0.0], [0.0, 0.0]])
    alpha = g_amplitudes_from_context(p, (1, 1), (0.0, theta_max))
    return {
        "hyperbolic/e": bound,
        "hyperbolic/q1_at_max_phase": float(at_max.probs[0]),
        "hyperbolic/q2_at_max_phase": float(at_max.probs[1]),
        "hyperbolic/rejects_beyond_max_phase": rejected,
        "hyperbolic/g_born_q1_at_max_phase": float(g_born(g_compose(alpha, U), tolerances).probs[0]),
    }


def _mixed(tolerances: Tolerances) -> dict:
    p = ContextDistribution([0.5, 0.5])
    P = TransitionMatrix([[0.8, 0.2], [0.8, 0.2]])
    profile = interference_coefficients(p, P, OutcomeDistribution([0.4, 0.6]), tolerances)
    q = forward_transform(p, P, profile, tolerances)
    return {
        "mixed/K": coupling_coefficient(P),
        "mixed/lambda1": float(profile.lambdas[0]),
        "mixed/lambda2": float(profile.lambdas[1]),
        "mixed/behaviour": profile.behaviour.value,
        "mixed/q1": float(q.probs[0]),
        "mixed/q2": float(q.probs[1]),
        "mixed/cosh_phase": profile.phases[1].theta,
    }


def _matches(expected, computed, tol: float) -> bool:
    if isinstance(expected, bool) or isinstance(expected, str):
        return expected == computed
    return abs(float(computed) - float(expected)) <= tol


def run_examples(
    tol: float = 1e-9,
    golden: Mapping[str, float | str | bool] | None = None,
    tolerances: Tolerances | None = None,
) -> ExampleReport:
    """
    Recompute the worked examples and compare them with ``golden``.

    Args:
        tol (float): Absolute tolerance for numeric checks.
        golden (Mapping | None): Expected values by check name; defaults to
            :data:`GOLDEN`.
        tolerances (Tolerances | None): Tolerances for the calculus itself.

    Returns:
        ExampleReport: One check per golden entry, in golden order.
    """
    tolerances = get_tolerances(tolerances)
    golden = GOLDEN if golden is None else golden
    computed = {**_trigonometric(tolerances), **_hyperbolic(tolerances), **_mixed(tolerances)}
    checks = []
    for name, expected in golden.items():
        if name not in computed:
            raise KeyError(f"No computation for golden entry {name!r}")
        value = computed[name]
        passed = _matches(expected, value, tol)
        if not passed:
            logger.warning(f"{name}: expected {expected!r}, computed {value!r}")
        checks.append(ExampleCheck(name, expected, value, passed))
    return ExampleReport(tol=tol, checks=tuple(checks))
