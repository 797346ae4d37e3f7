"""Interference coefficients of context transitions.

A context distribution ``p``, a row-stochastic transition matrix ``P`` and an
observed outcome distribution ``q`` determine the statistical deviations

    delta_j = q_j - sum_i p_i P_ij

and their normalized form ``lambda_j = delta_j / (2 sqrt(p_1 P_1j p_2 P_2j))``.
The magnitudes of the lambdas classify the transition as classical,
trigonometric, hyperbolic or hyper-trigonometric.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Literal, Sequence

import numpy as np
from pyiron_snippets.logger import logger

from contextprob.config import Tolerances, get_tolerances
from contextprob.errors import (
    DegenerateProbability,
    InvalidDistribution,
    NonphysicalResult,
    OrthogonalityViolated,
    UnsupportedDimension,
)


def _frozen_array(values, ndim: int, name: str) -> np.ndarray:
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError) as e:
        raise InvalidDistribution(f"{name} is not numeric: {values!r}") from e
    if arr.ndim != ndim or arr.shape[0] < 2:
        raise InvalidDistribution(
            f"{name} must be a {ndim}-d array with at least 2 entries per axis, "
            f"got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise InvalidDistribution(f"{name} has non-finite entries: {arr.tolist()}")
    arr.setflags(write=False)
    return arr


def _require_positive(arr: np.ndarray, name: str, floor: float) -> None:
    if np.any(arr <= floor):
        raise DegenerateProbability(
            f"{name} must be strictly positive, got {arr.tolist()}"
        )


def _require_normalized(sums, name: str, tol: float) -> None:
    if np.any(np.abs(np.asarray(sums) - 1.0) > tol):
        raise InvalidDistribution(f"{name} must sum to 1, got sums {np.ravel(sums)}")


@dataclass(frozen=True, eq=False)
class ContextDistribution:
    """Distribution ``p_i = P(C = c_i)`` on the parent ensemble."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        tol = get_tolerances()
        probs = _frozen_array(self.probs, 1, "context distribution")
        _require_positive(probs, "context distribution", tol.probability_floor)
        _require_normalized(probs.sum(), "context distribution", tol.probability_sum_tol)
        object.__setattr__(self, "probs", probs)

    @property
    def size(self) -> int:
        return self.probs.shape[0]

    def to_list(self) -> list[float]:
        return self.probs.tolist()


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Distribution ``q_j = P(A = a_j)``; zero entries are allowed."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        tol = get_tolerances()
        probs = _frozen_array(self.probs, 1, "outcome distribution")
        if np.any(probs < 0.0) or np.any(probs > 1.0):
            raise InvalidDistribution(
                f"outcome distribution entries must lie in [0, 1], got {probs.tolist()}"
            )
        _require_normalized(probs.sum(), "outcome distribution", tol.probability_sum_tol)
        object.__setattr__(self, "probs", probs)

    @property
    def size(self) -> int:
        return self.probs.shape[0]

    def to_list(self) -> list[float]:
        return self.probs.tolist()


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Row-stochastic matrix with entry ``(i, j) = P(A = a_j | C = c_i)``."""

    rows: np.ndarray

    def __post_init__(self) -> None:
        tol = get_tolerances()
        rows = _frozen_array(self.rows, 2, "transition matrix")
        if rows.shape[0] != rows.shape[1]:
            raise InvalidDistribution(
                f"transition matrix must be square, got shape {rows.shape}"
            )
        _require_positive(rows, "transition matrix", tol.probability_floor)
        _require_normalized(rows.sum(axis=1), "transition matrix rows", tol.probability_sum_tol)
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return self.rows.shape[0]

    def is_double_stochastic(self, tol: float | None = None) -> bool:
        """Columns also sum to one."""
        if tol is None:
            tol = get_tolerances().probability_sum_tol
        return bool(np.all(np.abs(self.rows.sum(axis=0) - 1.0) <= tol))

    def to_list(self) -> list[list[float]]:
        return self.rows.tolist()


class Behaviour(str, Enum):
    CLASSICAL = "C"
    TRIGONOMETRIC = "T"
    HYPERBOLIC = "H"
    HYPER_TRIGONOMETRIC = "HT"


@dataclass(frozen=True)
class PhaseRepresentation:
    """``lambda = cos(theta)`` (kind ``cos``) or ``sign * cosh(theta)``."""

    kind: Literal["cos", "cosh"]
    theta: float
    sign: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("cos", "cosh"):
            raise ValueError(f"Unknown phase kind {self.kind!r}. Valid options: cos, cosh")
        if self.sign not in (1, -1):
            raise ValueError(f"Phase sign must be +1 or -1, got {self.sign!r}")

    @property
    def value(self) -> float:
        if self.kind == "cos":
            return math.cos(self.theta)
        return self.sign * math.cosh(self.theta)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "theta": self.theta, "sign": self.sign}

    @classmethod
    def from_dict(cls, data: dict) -> PhaseRepresentation:
        return cls(kind=data["kind"], theta=float(data["theta"]), sign=int(data.get("sign", 1)))


@dataclass(frozen=True, eq=False)
class InterferenceProfile:
    """Normalized deviations of one context transition.

    For two-valued observables ``lambdas`` and ``deltas`` have shape ``(2,)``
    and ``pairs`` is ``None``. For the M-valued decomposition they have shape
    ``(M, len(pairs))`` with entry ``[i, c]`` belonging to outcome ``i`` and
    context pair ``pairs[c] = (k, l)``; no phases are extracted then.
    """

    lambdas: np.ndarray
    deltas: np.ndarray | None
    behaviour: Behaviour
    phases: tuple[PhaseRepresentation, ...] = ()
    pairs: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self) -> None:
        lambdas = np.array(self.lambdas, dtype=float)
        lambdas.setflags(write=False)
        object.__setattr__(self, "lambdas", lambdas)
        if self.deltas is not None:
            deltas = np.array(self.deltas, dtype=float)
            deltas.setflags(write=False)
            object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "behaviour", Behaviour(self.behaviour))

    @property
    def is_dichotomic(self) -> bool:
        return self.pairs is None

    def to_dict(self) -> dict:
        data = {
            "lambdas": self.lambdas.tolist(),
            "deltas": None if self.deltas is None else self.deltas.tolist(),
            "behaviour": self.behaviour.value,
            "phases": [phase.to_dict() for phase in self.phases],
        }
        if self.pairs is not None:
            data["pairs"] = [list(pair) for pair in self.pairs]
        return data

    @classmethod
    def from_dict(cls, data: dict) -> InterferenceProfile:
        pairs = data.get("pairs")
        return cls(
            lambdas=data["lambdas"],
            deltas=data.get("deltas"),
            behaviour=Behaviour(data["behaviour"]),
            phases=tuple(PhaseRepresentation.from_dict(p) for p in data.get("phases", [])),
            pairs=None if pairs is None else tuple((int(k), int(l)) for k, l in pairs),
        )


@dataclass(frozen=True)
class AdmissibleInterval:
    """Closed interval of lambda_1 values keeping both outcomes in [0, 1]."""

    lower: float
    upper: float

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= value <= self.upper + tol


def _require_dichotomic(*objects) -> None:
    for obj in objects:
        if obj.size != 2:
            raise UnsupportedDimension(
                f"Only two-valued observables are supported here, got size {obj.size}"
            )


def _require_same_size(p: ContextDistribution, P: TransitionMatrix, *others) -> None:
    sizes = {p.size, P.size, *(o.size for o in others)}
    if len(sizes) != 1:
        raise UnsupportedDimension(f"Mismatched dimensions: {sorted(sizes)}")


def classify_lambdas(
    lambdas: Sequence[float] | np.ndarray,
    zero_tol: float,
    boundary_tol: float,
) -> Behaviour:
    """Classify coefficients; |lambda| = 1 counts as trigonometric."""
    magnitudes = np.abs(np.asarray(lambdas, dtype=float)).ravel()
    if np.all(magnitudes <= zero_tol):
        return Behaviour.CLASSICAL
    trigonometric = magnitudes <= 1.0 + boundary_tol
    if np.all(trigonometric):
        return Behaviour.TRIGONOMETRIC
    if not np.any(trigonometric):
        return Behaviour.HYPERBOLIC
    return Behaviour.HYPER_TRIGONOMETRIC


def phase_from_lambda(lam: float, boundary_tol: float | None = None) -> PhaseRepresentation:
    """Trigonometric phase for |lambda| <= 1, hyperbolic one otherwise.

    The hyperbolic phase is the nonnegative branch ``ln(|l| + sqrt(l**2 - 1))``.
    """
    if boundary_tol is None:
        boundary_tol = get_tolerances().lambda_boundary_tol
    if abs(lam) <= 1.0 + boundary_tol:
        return PhaseRepresentation("cos", math.acos(min(1.0, max(-1.0, lam))))
    return PhaseRepresentation("cosh", math.acosh(abs(lam)), 1 if lam > 0 else -1)


def lambda_from_phase(phase: PhaseRepresentation) -> float:
    return phase.value


def hyperbolic_phase_branches(lam: float) -> tuple[float, float]:
    """Both hyperbolic phases ``ln(|l| +- sqrt(l**2 - 1))`` with cosh = |lambda|."""
    if abs(lam) < 1.0:
        raise ValueError(f"|lambda| = {abs(lam)} < 1 has no hyperbolic phase")
    root = math.sqrt(lam * lam - 1.0)
    return math.log(abs(lam) + root), math.log(abs(lam) - root)


def coupling_coefficient(P: TransitionMatrix) -> float:
    """``K = sqrt(P_12 P_22 / (P_11 P_21))``; equals 1 iff P is double stochastic."""
    _require_dichotomic(P)
    r = P.rows
    return math.sqrt((r[0, 1] * r[1, 1]) / (r[0, 0] * r[1, 0]))


def bayes_outcomes(p: ContextDistribution, P: TransitionMatrix) -> OutcomeDistribution:
    """Classical total-probability prediction ``q_j = sum_i p_i P_ij``."""
    _require_same_size(p, P)
    return OutcomeDistribution(p.probs @ P.rows)


def _interference_weights(p: ContextDistribution, P: TransitionMatrix) -> np.ndarray:
    """``2 sqrt(p_1 P_1j p_2 P_2j)`` for j = 1, 2."""
    return 2.0 * np.sqrt(p.probs[0] * P.rows[0] * p.probs[1] * P.rows[1])


def _profile(
    lambdas: np.ndarray, deltas: np.ndarray | None, tolerances: Tolerances
) -> InterferenceProfile:
    return InterferenceProfile(
        lambdas=lambdas,
        deltas=deltas,
        behaviour=classify_lambdas(
            lambdas, tolerances.lambda_zero_tol, tolerances.lambda_boundary_tol
        ),
        phases=tuple(
            phase_from_lambda(lam, tolerances.lambda_boundary_tol) for lam in lambdas
        ),
    )


def interference_coefficients(
    p: ContextDistribution,
    P: TransitionMatrix,
    q: OutcomeDistribution,
    tolerances: Tolerances | None = None,
) -> InterferenceProfile:
    """
    Deviations of ``q`` from the Bayes prediction, normalized and classified.

    Args:
        p (ContextDistribution): Context probabilities.
        P (TransitionMatrix): Transition probabilities.
        q (OutcomeDistribution): Observed outcome probabilities, strictly positive.
        tolerances (Tolerances | None): Defaults to the configured tolerances.

    Returns:
        InterferenceProfile: lambdas, deltas, behaviour and per-lambda phases.

    Raises:
        DegenerateProbability: If some outcome probability is not positive.
        UnsupportedDimension: If the observables are not two-valued.
    """
    tolerances = get_tolerances(tolerances)
    _require_dichotomic(p, P, q)
    _require_positive(q.probs, "outcome distribution", tolerances.probability_floor)
    deltas = q.probs - p.probs @ P.rows
    lambdas = deltas / _interference_weights(p, P)
    return _profile(lambdas, deltas, tolerances)


def profile_from_lambdas(
    lambdas: Sequence[float],
    p: ContextDistribution | None = None,
    P: TransitionMatrix | None = None,
    tolerances: Tolerances | None = None,
) -> InterferenceProfile:
    """Dichotomic profile from given lambdas; deltas need both ``p`` and ``P``."""
    tolerances = get_tolerances(tolerances)
    lambdas = np.asarray(lambdas, dtype=float)
    if lambdas.shape != (2,):
        raise UnsupportedDimension(f"Expected two lambdas, got shape {lambdas.shape}")
    deltas = None
    if p is not None and P is not None:
        _require_dichotomic(p, P)
        deltas = lambdas * _interference_weights(p, P)
    return _profile(lambdas, deltas, tolerances)


def profile_from_phases(
    phases: Sequence[PhaseRepresentation],
    p: ContextDistribution | None = None,
    P: TransitionMatrix | None = None,
    tolerances: Tolerances | None = None,
) -> InterferenceProfile:
    return profile_from_lambdas([phase.value for phase in phases], p, P, tolerances)


def check_orthogonality(
    profile: InterferenceProfile, K: float, tol: float | None = None
) -> bool:
    """True iff ``|lambda_1 + K lambda_2| <= tol``."""
    if not profile.is_dichotomic:
        raise UnsupportedDimension("Orthogonality is defined for two-valued profiles")
    if tol is None:
        tol = get_tolerances().orthogonality_tol
    return bool(abs(profile.lambdas[0] + K * profile.lambdas[1]) <= tol)


def forward_transform(
    p: ContextDistribution,
    P: TransitionMatrix,
    profile: InterferenceProfile,
    tolerances: Tolerances | None = None,
) -> OutcomeDistribution:
    """
    Apply ``q_j = p_1 P_1j + p_2 P_2j + 2 sqrt(p_1 P_1j p_2 P_2j) lambda_j``.

    Unclamped values are returned as computed. Rounding-level excursions
    (within ``clamp_tol``) outside [0, 1] are clamped and renormalised;
    anything larger is rejected.

    Raises:
        OrthogonalityViolated: If lambda_1 != -K lambda_2 within tolerance, or
            the residual moves the sum of q by more than ``probability_sum_tol``.
        NonphysicalResult: If some q_j leaves [0, 1].
    """
    tolerances = get_tolerances(tolerances)
    _require_dichotomic(p, P)
    K = coupling_coefficient(P)
    if not check_orthogonality(profile, K, tolerances.orthogonality_tol):
        raise OrthogonalityViolated(
            f"lambda_1 + K lambda_2 = {profile.lambdas[0] + K * profile.lambdas[1]:.3e} "
            f"with K = {K}"
        )
    q = p.probs @ P.rows + _interference_weights(p, P) * profile.lambdas
    if np.any(q < -tolerances.clamp_tol) or np.any(q > 1.0 + tolerances.clamp_tol):
        raise NonphysicalResult(f"Transformed probabilities {q.tolist()} leave [0, 1]")
    clamped = np.clip(q, 0.0, 1.0)
    if np.array_equal(clamped, q):
        total = float(q.sum())
        if abs(total - 1.0) > tolerances.probability_sum_tol:
            raise OrthogonalityViolated(
                f"Transformed probabilities sum to {total!r}; lambda_1 + K lambda_2 = "
                f"{profile.lambdas[0] + K * profile.lambdas[1]:.3e} moves the total"
            )
        return OutcomeDistribution(q)
    logger.debug(f"forward_transform clamped {q.tolist()} into [0, 1]")
    return OutcomeDistribution(clamped / clamped.sum())


def lambda_admissible_interval(
    p: ContextDistribution, P: TransitionMatrix
) -> AdmissibleInterval:
    """Values of lambda_1 (with lambda_2 = -lambda_1 / K) keeping q in [0, 1].

    Under orthogonality ``q_2 = 1 - q_1``, so the bounds reduce to
    ``0 <= q_1 <= 1``, which is linear in lambda_1.
    """
    _require_dichotomic(p, P)
    bayes = p.probs @ P.rows
    weight = _interference_weights(p, P)[0]
    return AdmissibleInterval(lower=-bayes[0] / weight, upper=bayes[1] / weight)


def _pair_indices(M: int) -> tuple[tuple[tuple[int, int], ...], np.ndarray, np.ndarray]:
    pairs = tuple(itertools.combinations(range(M), 2))
    k_idx = np.array([k for k, _ in pairs])
    l_idx = np.array([l for _, l in pairs])
    return pairs, k_idx, l_idx


def multi_valued_decomposition(
    p: ContextDistribution,
    P: TransitionMatrix,
    q: OutcomeDistribution,
    tolerances: Tolerances | None = None,
) -> InterferenceProfile:
    """
    Pairwise coefficients ``lambda_kl^(i)`` for M-valued observables.

    With ``delta_kl^(i) = [p_k (q_i - P_ki) + p_l (q_i - P_li)] / (M - 1)`` the
    outcome probabilities are reconstructed as
    ``q_i = sum_j p_j P_ji + 2 sum_{k<l} sqrt(p_k p_l P_ki P_li) lambda_kl^(i)``.

    Returns:
        InterferenceProfile: ``lambdas[i, c]`` for outcome i and pair ``pairs[c]``.
    """
    tolerances = get_tolerances(tolerances)
    _require_same_size(p, P, q)
    _require_positive(q.probs, "outcome distribution", tolerances.probability_floor)
    M = p.size
    pairs, k_idx, l_idx = _pair_indices(M)
    # entry [i, c] is P[k_c, i]
    P_k = P.rows[k_idx, :].T
    P_l = P.rows[l_idx, :].T
    q_col = q.probs[:, None]
    deltas = (p.probs[k_idx] * (q_col - P_k) + p.probs[l_idx] * (q_col - P_l)) / (M - 1)
    lambdas = deltas / (2.0 * np.sqrt(p.probs[k_idx] * p.probs[l_idx] * P_k * P_l))
    return InterferenceProfile(
        lambdas=lambdas,
        deltas=deltas,
        behaviour=classify_lambdas(
            lambdas, tolerances.lambda_zero_tol, tolerances.lambda_boundary_tol
        ),
        pairs=pairs,
    )


def reconstruct_outcomes(
    p: ContextDistribution, P: TransitionMatrix, profile: InterferenceProfile
) -> np.ndarray:
    """Evaluate the pairwise reconstruction of ``q``; the result is not validated."""
    _require_same_size(p, P)
    if profile.is_dichotomic:
        _require_dichotomic(p)
        pairs, lambdas = ((0, 1),), profile.lambdas[:, None]
    else:
        pairs, lambdas = profile.pairs, profile.lambdas
    k_idx = np.array([k for k, _ in pairs])
    l_idx = np.array([l for _, l in pairs])
    P_k = P.rows[k_idx, :].T
    P_l = P.rows[l_idx, :].T
    weights = 2.0 * np.sqrt(p.probs[k_idx] * p.probs[l_idx] * P_k * P_l)
    return p.probs @ P.rows + (weights * lambdas).sum(axis=1)
