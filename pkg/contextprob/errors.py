"""Exception hierarchy for contextprob.

Every domain error derives from :class:`ContextProbError` and from the
builtin it refines, so ``except ValueError`` keeps catching bad inputs.
"""

from __future__ import annotations


class ContextProbError(Exception):
    """Base class for all contextprob errors."""


class MalformedInput(ContextProbError, ValueError):
    """A problem/scenario file or CLI argument could not be parsed."""


class InvalidDistribution(ContextProbError, ValueError):
    """A probability vector or matrix violates its normalization."""


class DegenerateProbability(InvalidDistribution):
    """A probability that must be strictly positive is not."""


class UnsupportedDimension(ContextProbError, ValueError):
    pass


class NonphysicalResult(ContextProbError, ValueError):
    """The transformed probabilities leave [0, 1]."""


class OrthogonalityViolated(ContextProbError, ValueError):
    """The interference coefficients violate lambda_1 = -K lambda_2."""


class NotInvertible(ContextProbError, ArithmeticError):
    """Inverse requested for a hyperbolic number outside G+*."""


class NoPolarForm(ContextProbError, ArithmeticError):
    pass


class PhaseOverflow(ContextProbError, OverflowError):
    pass


class SingularTransition(ContextProbError, ValueError):
    """A transition amplitude matrix is not invertible."""


class NotDecomposable(ContextProbError, ValueError):
    """Composed squared moduli do not sum to one."""


class NonphysicalState(ContextProbError, ValueError):
    """A composed squared modulus is negative."""


class NoSolution(ContextProbError, ValueError):
    """A phase constraint has no solution for the requested parameters."""


class InvalidShift(ContextProbError, ValueError):
    pass


class SimulationError(ContextProbError, RuntimeError):
    """Sampling produced counts the frequency formulas cannot use."""


class EmptyContext(SimulationError):
    pass


class UndefinedCoefficient(SimulationError):
    pass
