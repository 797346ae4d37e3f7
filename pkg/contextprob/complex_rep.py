"""Complex amplitude representation of trigonometric transitions.

A context distribution ``p`` with phases ``xi`` becomes the amplitude vector
``alpha_i = sqrt(p_i) e^{i xi_i}``; a transition matrix ``P`` with phases
``gamma`` becomes ``beta_ij = sqrt(P_ij) e^{i gamma_ij}``. Composition
``beta = alpha U`` followed by the Born rule gives the outcome probabilities.

Phase conventions: ``gamma_1 = gamma_11 - gamma_21``,
``gamma_2 = gamma_12 - gamma_22`` and ``eta = xi_1 - xi_2``. Returned phases
lie in (-pi, pi].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from pyiron_snippets.logger import logger

from contextprob.config import Tolerances, get_tolerances
from contextprob.errors import (
    InvalidDistribution,
    NoSolution,
    NotDecomposable,
    SingularTransition,
    UnsupportedDimension,
)
from contextprob.phases import PhaseFamily, wrap_phase
from contextprob.probability import (
    ContextDistribution,
    OutcomeDistribution,
    TransitionMatrix,
    coupling_coefficient,
)


def complex_to_dict(z: complex) -> dict[str, float]:
    return {"re": float(z.real), "im": float(z.imag)}


def complex_from_dict(data: dict) -> complex:
    return complex(float(data["re"]), float(data["im"]))


def _complex_array(values, shape: tuple[int, ...], name: str) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    if arr.shape != shape:
        raise UnsupportedDimension(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class AmplitudeVector:
    """Two complex amplitudes; normalization is only enforced by :func:`born`."""

    components: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "components", _complex_array(self.components, (2,), "amplitude vector")
        )

    def sq_norms(self) -> np.ndarray:
        return np.abs(self.components) ** 2

    def is_decomposable(self, tol: float | None = None) -> bool:
        if tol is None:
            tol = get_tolerances().decomposable_tol
        return bool(abs(self.sq_norms().sum() - 1.0) <= tol)

    def to_dict(self) -> dict:
        return {"components": [complex_to_dict(c) for c in self.components]}

    @classmethod
    def from_dict(cls, data: dict) -> AmplitudeVector:
        return cls([complex_from_dict(c) for c in data["components"]])


@dataclass(frozen=True, eq=False)
class TransitionAmplitudeMatrix:
    """
    Invertible 2x2 matrix ``U = (beta_ij)`` whose rows have unit squared norm.

    Raises:
        InvalidDistribution: If a row norm deviates from 1.
        SingularTransition: If ``U`` is not invertible.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        tol = get_tolerances()
        entries = _complex_array(self.entries, (2, 2), "transition amplitude matrix")
        row_norms = (np.abs(entries) ** 2).sum(axis=1)
        if np.any(np.abs(row_norms - 1.0) > tol.amplitude_norm_tol):
            raise InvalidDistribution(
                f"Rows of a transition amplitude matrix must have unit norm, got {row_norms}"
            )
        if abs(np.linalg.det(entries)) <= tol.amplitude_norm_tol:
            raise SingularTransition(f"Transition amplitude matrix is singular: {entries}")
        object.__setattr__(self, "entries", entries)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.entries) ** 2

    def to_dict(self) -> dict:
        return {"entries": [[complex_to_dict(b) for b in row] for row in self.entries]}

    @classmethod
    def from_dict(cls, data: dict) -> TransitionAmplitudeMatrix:
        return cls([[complex_from_dict(b) for b in row] for row in data["entries"]])


def amplitudes_from_context(
    p: ContextDistribution, xi: Sequence[float]
) -> AmplitudeVector:
    """``alpha_i = sqrt(p_i) e^{i xi_i}``."""
    if p.size != 2:
        raise UnsupportedDimension(f"Amplitude vectors are two-dimensional, got size {p.size}")
    return AmplitudeVector(np.sqrt(p.probs) * np.exp(1j * np.asarray(xi, dtype=float)))


def matrix_from_probabilities(
    P: TransitionMatrix, gamma: Sequence[Sequence[float]]
) -> TransitionAmplitudeMatrix:
    """``beta_ij = sqrt(P_ij) e^{i gamma_ij}``."""
    if P.size != 2:
        raise UnsupportedDimension(f"Amplitude matrices are 2x2, got size {P.size}")
    gamma = np.asarray(gamma, dtype=float)
    return TransitionAmplitudeMatrix(np.sqrt(P.rows) * np.exp(1j * gamma))


def matrix_from_phase_differences(
    P: TransitionMatrix, gamma1: float, gamma2: float
) -> TransitionAmplitudeMatrix:
    """Matrix with ``gamma_11 = gamma1``, ``gamma_12 = gamma2`` and a real second row."""
    return matrix_from_probabilities(P, [[gamma1, gamma2], [0.0, 0.0]])


def phase_differences(U: TransitionAmplitudeMatrix) -> tuple[float, float]:
    angles = np.angle(U.entries)
    return (
        wrap_phase(angles[0, 0] - angles[1, 0]),
        wrap_phase(angles[0, 1] - angles[1, 1]),
    )


def compose(alpha: AmplitudeVector, U: TransitionAmplitudeMatrix) -> AmplitudeVector:
    """``beta_j = alpha_1 beta_1j + alpha_2 beta_2j``."""
    return AmplitudeVector(alpha.components @ U.entries)


def born(beta: AmplitudeVector, tolerances: Tolerances | None = None) -> OutcomeDistribution:
    """
    Outcome probabilities ``q_j = |beta_j|**2``.

    Raises:
        NotDecomposable: If the squared moduli do not sum to 1 within
            ``decomposable_tol``.
    """
    tolerances = get_tolerances(tolerances)
    sq = beta.sq_norms()
    total = sq.sum()
    if abs(total - 1.0) > tolerances.decomposable_tol:
        raise NotDecomposable(
            f"|beta_1|^2 + |beta_2|^2 = {total}; the state is not decomposable"
        )
    return OutcomeDistribution(np.clip(sq / total, 0.0, 1.0))


def normalization_defect(alpha: AmplitudeVector, U: TransitionAmplitudeMatrix) -> float:
    """
    ``2 Re[alpha_1 conj(alpha_2) (beta_11 conj(beta_21) + beta_12 conj(beta_22))]``.

    For normalized ``alpha`` this equals ``|beta_1|**2 + |beta_2|**2 - 1`` of the
    composed state.
    """
    a1, a2 = alpha.components
    b = U.entries
    overlap = b[0, 0] * np.conj(b[1, 0]) + b[0, 1] * np.conj(b[1, 1])
    return float(2.0 * (a1 * np.conj(a2) * overlap).real)


def is_unitary(U: TransitionAmplitudeMatrix, tol: float | None = None) -> bool:
    """Rows orthonormal under ``<z, w> = z_1 conj(w_1) + z_2 conj(w_2)``."""
    if tol is None:
        tol = get_tolerances().unitarity_tol
    gram = U.entries @ U.entries.conj().T
    return bool(np.all(np.abs(gram - np.eye(2)) <= tol))


def _checked_arccos(value: float, slack: float = 1e-12) -> float:
    if abs(value) > 1.0 + slack:
        raise NoSolution(f"|K cos(eta + gamma_2)| = {abs(value)} > 1")
    return math.acos(min(1.0, max(-1.0, value)))


def solve_phase_constraint(
    P: TransitionMatrix, eta: float, tolerances: Tolerances | None = None
) -> list[PhaseFamily]:
    """
    Solution families of ``cos(eta + gamma_1) = -K cos(eta + gamma_2)``.

    For double stochastic ``P`` (K = 1) there are two families: the quantum
    one, ``gamma_1 - gamma_2 = pi``, and the memory one,
    ``2 eta + gamma_1 + gamma_2 = pi``. Otherwise a single family
    ``gamma_1 = -eta +- arccos(-K cos(eta + gamma_2))``; asking it for a
    ``gamma_2`` with ``|K cos(eta + gamma_2)| > 1`` raises ``NoSolution``.
    """
    tolerances = get_tolerances(tolerances)
    K = coupling_coefficient(P)
    if P.is_double_stochastic(tolerances.probability_sum_tol):
        logger.debug(f"Double stochastic transition; eta={eta}")
        return [
            PhaseFamily(
                "quantum",
                "gamma_1 = gamma_2 + pi",
                lambda gamma2: (gamma2 + math.pi,),
            ),
            PhaseFamily(
                "memory",
                "2 eta + gamma_1 + gamma_2 = pi",
                lambda gamma2: (math.pi - 2.0 * eta - gamma2,),
            ),
        ]

    def general(gamma2: float) -> tuple[float, float]:
        angle = _checked_arccos(-K * math.cos(eta + gamma2))
        return (-eta + angle, -eta - angle)

    return [
        PhaseFamily(
            "general",
            f"cos(eta + gamma_1) = -{K:.12g} cos(eta + gamma_2)",
            general,
        )
    ]


def quantum_outcomes(
    p: ContextDistribution, P: TransitionMatrix, theta: float
) -> OutcomeDistribution:
    """
    Trigonometric transformation of a double stochastic transition.

    ``q_1 = p_1 P_11 + p_2 P_21 + 2 sqrt(p_1 p_2 P_11 P_21) cos(theta)`` and
    ``q_2`` with the opposite interference term.
    """
    if p.size != 2 or P.size != 2:
        raise UnsupportedDimension("Quantum outcomes are defined for two-valued observables")
    weights = 2.0 * np.sqrt(p.probs[0] * p.probs[1] * P.rows[0] * P.rows[1])
    q = p.probs @ P.rows + weights * np.array([1.0, -1.0]) * math.cos(theta)
    return OutcomeDistribution(np.clip(q, 0.0, 1.0))
