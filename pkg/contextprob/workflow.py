"""pyiron_workflow nodes around the calculus.

Node inputs accept either the domain objects or plain (nested) lists, so the
nodes can be fed straight from JSON documents.
"""

from __future__ import annotations

from typing import Optional, Sequence

from pyiron_workflow import Workflow

from contextprob.config import Tolerances
from contextprob.probability import (
    ContextDistribution,
    InterferenceProfile,
    OutcomeDistribution,
    TransitionMatrix,
    forward_transform,
    interference_coefficients,
    profile_from_lambdas,
)
from contextprob.simulator import (
    ConvergenceTrace,
    CountTable,
    EnsembleScenario,
    convergence_study,
    empirical_profile,
    simulate_counts,
)


def _context(p) -> ContextDistribution:
    return p if isinstance(p, ContextDistribution) else ContextDistribution(p)


def _transition(P) -> TransitionMatrix:
    return P if isinstance(P, TransitionMatrix) else TransitionMatrix(P)


@Workflow.wrap.as_function_node("profile")
def classify(
    p,
    P,
    q,
    tolerances: Optional[Tolerances] = None,
) -> InterferenceProfile:
    """
    Interference profile of an observed transition.

    Args:
        p: Context probabilities (``ContextDistribution`` or list).
        P: Transition probabilities (``TransitionMatrix`` or nested list).
        q: Observed outcome probabilities (``OutcomeDistribution`` or list).
        tolerances (Tolerances, optional): Defaults to the configured ones.

    Returns:
        InterferenceProfile: lambdas, deltas, behaviour and phases.
    """
    q = q if isinstance(q, OutcomeDistribution) else OutcomeDistribution(q)
    return interference_coefficients(_context(p), _transition(P), q, tolerances)


@Workflow.wrap.as_function_node("q")
def transform(
    p,
    P,
    lambdas: Sequence[float],
    tolerances: Optional[Tolerances] = None,
) -> OutcomeDistribution:
    p, P = _context(p), _transition(P)
    profile = profile_from_lambdas(lambdas, p, P, tolerances)
    return forward_transform(p, P, profile, tolerances)


@Workflow.wrap.as_function_node("counts")
def sample_counts(scenario: EnsembleScenario, replication: int = 0) -> CountTable:
    return simulate_counts(scenario, replication)


@Workflow.wrap.as_function_node("profile")
def measure_profile(
    counts: CountTable, tolerances: Optional[Tolerances] = None
) -> InterferenceProfile:
    return empirical_profile(counts, tolerances)


@Workflow.wrap.as_function_node("trace")
def convergence(
    scenario: EnsembleScenario,
    schedule: Sequence[int],
    progress: bool = False,
) -> ConvergenceTrace:
    """
    Run a convergence study of ``scenario`` over ``schedule``.

    Args:
        scenario (EnsembleScenario): Sampling setup including seed and
            replication count.
        schedule (Sequence[int]): Strictly increasing ensemble sizes.
        progress (bool, optional): Show a progress bar. Defaults to False.

    Returns:
        ConvergenceTrace: Per-replication records and their summary.
    """
    return convergence_study(scenario, schedule, progress=progress)


@Workflow.wrap.as_macro_node("profile")
def sampled_profile(
    self,
    scenario: EnsembleScenario,
    replication: int = 0,
    tolerances: Optional[Tolerances] = None,
):
    """
    Sample one replication of ``scenario`` and measure its profile.

    Args:
        self: The macro instance.
        scenario (EnsembleScenario): Sampling setup including the seed.
        replication (int, optional): Stream index. Defaults to 0.
        tolerances (Tolerances, optional): Defaults to the configured ones.

    Returns:
        InterferenceProfile: The empirical profile of the sampled counts.
    """
    self.counts = sample_counts(scenario=scenario, replication=replication)
    self.profile = measure_profile(counts=self.counts, tolerances=tolerances)
    self.counts >> self.profile
    self.starting_nodes = [self.counts]

    return self.profile
