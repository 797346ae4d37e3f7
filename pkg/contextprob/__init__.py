"""contextprob - interference of probabilities under context transitions.

Public API:
    probability   - interference coefficients, classification, forward
                    transform and the multi-valued decomposition
    hyperbolic    - hyperbolic (split-complex) numbers
    simulator     - frequency simulation and convergence studies
    complex_rep   - complex amplitude representation
    hyperbolic_rep - hyperbolic amplitude representation

The pyiron_workflow nodes live in ``contextprob.workflow`` and are not
imported here.
"""

from ._version import __version__
from .config import Tolerances, get_tolerances
from .errors import ContextProbError
from .hyperbolic import HyperbolicNumber
from .probability import (
    Behaviour,
    ContextDistribution,
    InterferenceProfile,
    OutcomeDistribution,
    TransitionMatrix,
    forward_transform,
    interference_coefficients,
    multi_valued_decomposition,
)
from .simulator import EnsembleScenario, convergence_study, simulate_counts

__all__ = [
    "Behaviour",
    "ContextDistribution",
    "ContextProbError",
    "EnsembleScenario",
    "HyperbolicNumber",
    "InterferenceProfile",
    "OutcomeDistribution",
    "Tolerances",
    "TransitionMatrix",
    "convergence_study",
    "forward_transform",
    "get_tolerances",
    "interference_coefficients",
    "multi_valued_decomposition",
    "simulate_counts",
    "__version__",
]
