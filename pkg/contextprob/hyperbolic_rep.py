"""Hyperbolic amplitude representation of hyperbolic transitions.

Amplitudes live in the module G**2 over the hyperbolic numbers. Contexts map
to ``alpha_i = +-sqrt(p_i) e^{j xi_i}`` and transitions to the standard-form
entries ``beta_ij = +-sqrt(P_ij) e^{j gamma_ij}``. The squared modulus of a
hyperbolic number can be negative, so the composed state is physical only
when both squared moduli are nonnegative and sum to one.

Phase conventions match :mod:`contextprob.complex_rep`: ``gamma_1 =
gamma_11 - gamma_21``, ``gamma_2 = gamma_12 - gamma_22``, ``eta = xi_1 -
xi_2``. Hyperbolic phases are not periodic and are never wrapped.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from contextprob.config import Tolerances, get_tolerances
from contextprob.errors import (
    DegenerateProbability,
    InvalidDistribution,
    NonphysicalResult,
    NonphysicalState,
    NoSolution,
    NotDecomposable,
    UnsupportedDimension,
)
from contextprob.hyperbolic import ZERO, HyperbolicNumber, h_exp
from contextprob.phases import PhaseFamily
from contextprob.probability import (
    ContextDistribution,
    OutcomeDistribution,
    TransitionMatrix,
    coupling_coefficient,
)


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"Sign must be +1 or -1, got {sign!r}")
    return int(sign)


@dataclass(frozen=True)
class StandardFormEntry:
    """``sign * sqrt(p) * e^{j gamma}``, an element of G+* stored by parts."""

    sign: int
    p: float
    gamma: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "sign", _check_sign(self.sign))
        if not self.p > get_tolerances().probability_floor:
            raise DegenerateProbability(f"Standard-form probability must be positive, got {self.p}")

    @property
    def value(self) -> HyperbolicNumber:
        return self.sign * math.sqrt(self.p) * h_exp(self.gamma)

    def times_conj(self, other: StandardFormEntry) -> HyperbolicNumber:
        """``self * conj(other)`` with the phases subtracted before exponentiating."""
        scale = self.sign * other.sign * math.sqrt(self.p * other.p)
        return scale * h_exp(self.gamma - other.gamma)

    def to_dict(self) -> dict:
        return {"sign": self.sign, "p": self.p, "gamma": self.gamma}

    @classmethod
    def from_dict(cls, data: dict) -> StandardFormEntry:
        return cls(sign=int(data["sign"]), p=float(data["p"]), gamma=float(data["gamma"]))


@dataclass(frozen=True)
class GAmplitudeVector:
    components: tuple[HyperbolicNumber, HyperbolicNumber]

    def __post_init__(self) -> None:
        components = tuple(self.components)
        if len(components) != 2:
            raise UnsupportedDimension(f"G-amplitude vectors have 2 components, got {len(components)}")
        object.__setattr__(self, "components", components)

    def sq_norms(self) -> np.ndarray:
        return np.array([c.sq_norm() for c in self.components])

    def scale(self, a: HyperbolicNumber | float) -> GAmplitudeVector:
        return GAmplitudeVector(tuple(a * c for c in self.components))

    def __add__(self, other: GAmplitudeVector) -> GAmplitudeVector:
        return GAmplitudeVector(tuple(a + b for a, b in zip(self.components, other.components)))

    def is_decomposable(self, tol: float | None = None) -> bool:
        """Squared moduli nonnegative and summing to one."""
        if tol is None:
            tol = get_tolerances().decomposable_tol
        sq = self.sq_norms()
        return bool(np.all(sq >= 0.0) and abs(sq.sum() - 1.0) <= tol)

    def to_dict(self) -> dict:
        return {"components": [c.to_dict() for c in self.components]}

    @classmethod
    def from_dict(cls, data: dict) -> GAmplitudeVector:
        return cls(tuple(HyperbolicNumber.from_dict(c) for c in data["components"]))


@dataclass(frozen=True)
class GTransitionMatrix:
    """
    2x2 matrix of standard-form entries whose rows satisfy ``sum_j P_ij = 1``.

    Keeping sign, probability and phase apart makes the sign product and the
    phase differences exact.
    """

    entries: tuple[tuple[StandardFormEntry, StandardFormEntry], ...]

    def __post_init__(self) -> None:
        entries = tuple(tuple(row) for row in self.entries)
        if len(entries) != 2 or any(len(row) != 2 for row in entries):
            raise UnsupportedDimension("G-transition matrices must be 2x2")
        sums = self.probabilities_of(entries).sum(axis=1)
        if np.any(np.abs(sums - 1.0) > get_tolerances().probability_sum_tol):
            raise InvalidDistribution(f"Rows of a G-transition matrix must sum to 1, got {sums}")
        object.__setattr__(self, "entries", entries)

    @staticmethod
    def probabilities_of(entries) -> np.ndarray:
        return np.array([[e.p for e in row] for row in entries])

    def probabilities(self) -> np.ndarray:
        return self.probabilities_of(self.entries)

    def values(self) -> tuple[tuple[HyperbolicNumber, HyperbolicNumber], ...]:
        return tuple(tuple(e.value for e in row) for row in self.entries)

    @property
    def sigma(self) -> int:
        """Product of the four entry signs."""
        return math.prod(e.sign for row in self.entries for e in row)

    def phase_differences(self) -> tuple[float, float]:
        (b11, b12), (b21, b22) = self.entries
        return b11.gamma - b21.gamma, b12.gamma - b22.gamma

    def to_dict(self) -> dict:
        return {"entries": [[e.to_dict() for e in row] for row in self.entries]}

    @classmethod
    def from_dict(cls, data: dict) -> GTransitionMatrix:
        return cls(tuple(tuple(StandardFormEntry.from_dict(e) for e in row) for row in data["entries"]))


@dataclass(frozen=True)
class UnitarityReport:
    double_stochastic: bool
    sigma_ok: bool
    phase_ok: bool
    unitary: bool

    def to_dict(self) -> dict:
        return asdict(self)


def g_inner_product(z: GAmplitudeVector, w: GAmplitudeVector) -> HyperbolicNumber:
    """``z_1 conj(w_1) + z_2 conj(w_2)``."""
    result = ZERO
    for a, b in zip(z.components, w.components):
        result = result + a * b.conj()
    return result


def g_amplitudes_from_context(
    p: ContextDistribution, signs: Sequence[int], xi: Sequence[float]
) -> GAmplitudeVector:
    """``alpha_i = sign_i sqrt(p_i) e^{j xi_i}``."""
    if p.size != 2:
        raise UnsupportedDimension(f"G-amplitude vectors are two-dimensional, got size {p.size}")
    return GAmplitudeVector(
        tuple(
            StandardFormEntry(sign, prob, phase).value
            for sign, prob, phase in zip(signs, p.probs.tolist(), xi)
        )
    )


def g_matrix_from_probabilities(
    P: TransitionMatrix,
    signs: Sequence[Sequence[int]],
    gamma: Sequence[Sequence[float]],
) -> GTransitionMatrix:
    """``beta_ij = sign_ij sqrt(P_ij) e^{j gamma_ij}``."""
    if P.size != 2:
        raise UnsupportedDimension(f"G-transition matrices are 2x2, got size {P.size}")
    return GTransitionMatrix(
        tuple(
            tuple(
                StandardFormEntry(int(signs[i][j]), float(P.rows[i, j]), float(gamma[i][j]))
                for j in range(2)
            )
            for i in range(2)
        )
    )


def g_compose(alpha: GAmplitudeVector, U: GTransitionMatrix) -> GAmplitudeVector:
    """``beta_j = alpha_1 beta_1j + alpha_2 beta_2j`` over G."""
    (b11, b12), (b21, b22) = U.values()
    a1, a2 = alpha.components
    return GAmplitudeVector((a1 * b11 + a2 * b21, a1 * b12 + a2 * b22))


def g_normalization_defect(alpha: GAmplitudeVector, U: GTransitionMatrix) -> float:
    """``|beta_1|**2 + |beta_2|**2 - 1`` of the composition, from the cross term."""
    (b11, b12), (b21, b22) = U.entries
    a1, a2 = alpha.components
    overlap = b11.times_conj(b21) + b12.times_conj(b22)
    return 2.0 * (a1 * a2.conj() * overlap).real


def g_born(beta: GAmplitudeVector, tolerances: Tolerances | None = None) -> OutcomeDistribution:
    """
    Outcome probabilities ``q_j = |beta_j|**2`` of a physical state.

    Raises:
        NonphysicalState: If a squared modulus is negative.
        NotDecomposable: If the squared moduli do not sum to one.
    """
    tolerances = get_tolerances(tolerances)
    sq = beta.sq_norms()
    if np.any(sq < -tolerances.clamp_tol):
        raise NonphysicalState(f"Negative squared moduli {sq.tolist()}")
    total = sq.sum()
    if abs(total - 1.0) > tolerances.decomposable_tol:
        raise NotDecomposable(f"|beta_1|^2 + |beta_2|^2 = {total}; the state is not decomposable")
    clipped = np.clip(sq, 0.0, None)
    return OutcomeDistribution(clipped / clipped.sum())


def _row_gram(U: GTransitionMatrix) -> list[list[tuple[HyperbolicNumber, float]]]:
    """Row inner products with the summed size ``sqrt(P_ij P_kj) cosh`` of their terms."""
    gram = []
    for r in U.entries:
        gram_row = []
        for s in U.entries:
            terms = [a.times_conj(b) for a, b in zip(r, s)]
            size = sum(math.sqrt(a.p * b.p) * math.cosh(a.gamma - b.gamma) for a, b in zip(r, s))
            gram_row.append((terms[0] + terms[1], size))
        gram.append(gram_row)
    return gram


def g_is_unitary(U: GTransitionMatrix, tol: float | None = None) -> bool:
    """
    Rows orthonormal under the G-inner product.

    Each entry of the row Gram matrix is compared relative to the summed
    size of its terms.
    """
    if tol is None:
        tol = get_tolerances().unitarity_tol
    gram = _row_gram(U)
    for i in range(2):
        for k in range(2):
            value, size = gram[i][k]
            expected = 1.0 if i == k else 0.0
            scaled = tol * max(1.0, size)
            if abs(value.x - expected) > scaled or abs(value.y) > scaled:
                return False
    return True


def g_unitary_characterization(
    U: GTransitionMatrix, tolerances: Tolerances | None = None
) -> UnitarityReport:
    """Check double stochasticity, ``sigma = -1`` and ``gamma_1 = gamma_2``."""
    tolerances = get_tolerances(tolerances)
    columns = U.probabilities().sum(axis=0)
    double_stochastic = bool(np.all(np.abs(columns - 1.0) <= tolerances.probability_sum_tol))
    gamma1, gamma2 = U.phase_differences()
    phase_ok = abs(gamma1 - gamma2) <= tolerances.unitarity_tol
    sigma_ok = U.sigma == -1
    return UnitarityReport(
        double_stochastic=double_stochastic,
        sigma_ok=sigma_ok,
        phase_ok=phase_ok,
        unitary=double_stochastic and sigma_ok and phase_ok,
    )


def admissible_h_phase_bound(s: float, t: float) -> float:
    """
    ``e(s, t) = (s t + (1 - s)(1 - t)) / (2 sqrt(s (1 - s) t (1 - t)))``.

    Hyperbolic interference with phase ``theta`` is physical only for
    ``cosh(theta) <= e(s, t)``; ``e >= 1`` with equality iff ``s + t = 1``.

    Raises:
        DegenerateProbability: Unless ``0 < s < 1`` and ``0 < t < 1``.
    """
    for name, value in (("s", s), ("t", t)):
        if not 0.0 < value < 1.0:
            raise DegenerateProbability(f"{name} must lie in (0, 1), got {value}")
    return (s * t + (1.0 - s) * (1.0 - t)) / (2.0 * math.sqrt(s * (1.0 - s) * t * (1.0 - t)))


def max_h_phase(s: float, t: float) -> float:
    return math.acosh(admissible_h_phase_bound(s, t))


def h_quantum_outcomes(
    p: ContextDistribution,
    P: TransitionMatrix,
    theta: float,
    sign: int = 1,
    tolerances: Tolerances | None = None,
) -> OutcomeDistribution:
    """
    Hyperbolic transformation of a double stochastic transition.

    ``q_1 = p_1 P_11 + p_2 P_21 + sign 2 sqrt(p_1 p_2 P_11 P_21) cosh(theta)``,
    ``q_2`` with the opposite interference term.

    Raises:
        NonphysicalResult: If ``theta`` exceeds the admissible bound.
    """
    tolerances = get_tolerances(tolerances)
    _check_sign(sign)
    if p.size != 2 or P.size != 2:
        raise UnsupportedDimension("Hyperbolic outcomes are defined for two-valued observables")
    weights = 2.0 * np.sqrt(p.probs[0] * p.probs[1] * P.rows[0] * P.rows[1])
    q = p.probs @ P.rows + sign * weights * np.array([1.0, -1.0]) * math.cosh(theta)
    if np.any(q < -tolerances.clamp_tol) or np.any(q > 1.0 + tolerances.clamp_tol):
        raise NonphysicalResult(f"cosh({theta}) pushes the outcomes {q.tolist()} outside [0, 1]")
    return OutcomeDistribution(np.clip(q, 0.0, 1.0))


def _checked_arccosh(value: float, slack: float = 1e-12) -> float:
    if value < 1.0 - slack:
        raise NoSolution(f"K cosh(eta + gamma_2) = {value} < 1")
    return math.acosh(max(1.0, value))


def g_solve_phase_constraint(
    P: TransitionMatrix,
    sigma: int,
    eta: float,
    tolerances: Tolerances | None = None,
) -> list[PhaseFamily]:
    """
    Solution families of ``cosh(eta + gamma_1) + sigma K cosh(eta + gamma_2) = 0``.

    Only ``sigma = -1`` admits solutions, reducing the equation to
    ``cosh(eta + gamma_1) = K cosh(eta + gamma_2)``. For K = 1 the families
    are G-quantum, ``gamma_1 = gamma_2``, and memory,
    ``2 eta + gamma_1 + gamma_2 = 0``. Otherwise
    ``gamma_1 = -eta +- arccosh(K cosh(eta + gamma_2))``.

    Raises:
        NoSolution: If ``sigma = +1``; the general family raises it for a
            ``gamma_2`` with ``K cosh(eta + gamma_2) < 1``.
    """
    tolerances = get_tolerances(tolerances)
    if _check_sign(sigma) == 1:
        raise NoSolution("The hyperbolic phase constraint has no solution for sigma = +1")
    K = coupling_coefficient(P)
    if P.is_double_stochastic(tolerances.probability_sum_tol):
        return [
            PhaseFamily("g-quantum", "gamma_1 = gamma_2", lambda gamma2: (gamma2,), periodic=False),
            PhaseFamily(
                "memory",
                "2 eta + gamma_1 + gamma_2 = 0",
                lambda gamma2: (-2.0 * eta - gamma2,),
                periodic=False,
            ),
        ]

    def general(gamma2: float) -> tuple[float, float]:
        angle = _checked_arccosh(K * math.cosh(eta + gamma2))
        return (-eta + angle, -eta - angle)

    return [
        PhaseFamily(
            "general",
            f"cosh(eta + gamma_1) = {K:.12g} cosh(eta + gamma_2)",
            general,
            periodic=False,
        )
    ]
