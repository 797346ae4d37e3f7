"""Frequency simulation of context transitions.

A parent ensemble of ``n`` elements is drawn from the joint distribution of
(C, A). Splitting it by the value of C gives the sub-ensembles ``S_i``; inside
each of them A is redrawn from the disturbed conditional row, modelling a
selection that perturbs A. Counting before (``n_ij``) and after (``m_ij``) the
disturbance gives empirical interference coefficients that converge to the
analytic ones of :mod:`contextprob.probability`.

Random streams come from ``numpy.random.PCG64``. Replication ``r`` of a
scenario with seed ``s`` draws from ``SeedSequence(s, spawn_key=(r,))``, so
replications are independent and each is reproducible on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
import pandas as pd
from pyiron_snippets.logger import logger
from scipy.stats import linregress
from tqdm.auto import tqdm

from contextprob.config import Tolerances, get_tolerances, validate_seed
from contextprob.errors import (
    DegenerateProbability,
    EmptyContext,
    InvalidDistribution,
    InvalidShift,
    UndefinedCoefficient,
    UnsupportedDimension,
)
from contextprob.probability import (
    ContextDistribution,
    InterferenceProfile,
    OutcomeDistribution,
    TransitionMatrix,
    classify_lambdas,
    interference_coefficients,
    phase_from_lambda,
    profile_from_lambdas,
)

CSV_COLUMNS = (
    "N",
    "replication",
    "p1",
    "p11",
    "p12",
    "p21",
    "p22",
    "q1",
    "q2",
    "delta1",
    "delta2",
    "lambda1",
    "lambda2",
    "valid",
)


@dataclass(frozen=True, eq=False)
class EnsembleScenario:
    """
    Sampling setup for the frequency derivation.

    Attributes:
        joint (np.ndarray): 2x2 matrix ``pi_ij = P(C = c_i, A = a_j)``.
        disturbed (TransitionMatrix): Rows governing A inside ``S_i`` after
            selection.
        n (int): Size of the parent ensemble.
        seed (int): Unsigned 64-bit seed.
        replications (int): Independent repetitions per ensemble size.
        pass_through (bool): Disable the disturbance, so ``m_ij = n_ij``.
    """

    joint: np.ndarray
    disturbed: TransitionMatrix
    n: int
    seed: int = 0
    replications: int = 1
    pass_through: bool = False

    def __post_init__(self) -> None:
        tol = get_tolerances()
        joint = np.array(self.joint, dtype=float)
        if joint.shape != (2, 2):
            raise UnsupportedDimension(
                f"Only 2x2 joint distributions can be simulated, got shape {joint.shape}"
            )
        if not np.all(np.isfinite(joint)) or np.any(joint < 0.0):
            raise InvalidDistribution(f"Joint distribution has invalid entries: {joint.tolist()}")
        if abs(joint.sum() - 1.0) > tol.probability_sum_tol:
            raise InvalidDistribution(f"Joint distribution must sum to 1, got {joint.sum()}")
        if np.any(joint.sum(axis=1) <= tol.probability_floor):
            raise DegenerateProbability(
                f"Context marginals must be strictly positive, got {joint.sum(axis=1).tolist()}"
            )
        joint.setflags(write=False)
        object.__setattr__(self, "joint", joint)

        disturbed = self.disturbed
        if not isinstance(disturbed, TransitionMatrix):
            disturbed = TransitionMatrix(disturbed)
        if disturbed.size != 2:
            raise UnsupportedDimension(f"Disturbed rows must be 2x2, got size {disturbed.size}")
        object.__setattr__(self, "disturbed", disturbed)

        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"Ensemble size must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        validate_seed(self.seed)
        if (
            isinstance(self.replications, bool)
            or not isinstance(self.replications, (int, np.integer))
            or self.replications < 1
        ):
            raise ValueError(f"Replications must be a positive integer, got {self.replications!r}")
        object.__setattr__(self, "replications", int(self.replications))

    @property
    def context(self) -> ContextDistribution:
        return ContextDistribution(self.joint.sum(axis=1))

    @property
    def outcome(self) -> OutcomeDistribution:
        return OutcomeDistribution(self.joint.sum(axis=0))

    @property
    def conditional_rows(self) -> np.ndarray:
        """``pi_ij / p_i``, the distribution of A inside ``S_i`` before disturbance."""
        return self.joint / self.joint.sum(axis=1)[:, None]

    def analytic_profile(self, tolerances: Tolerances | None = None) -> InterferenceProfile:
        """Limit of the empirical profile for ``n -> infinity``."""
        if self.pass_through:
            return profile_from_lambdas(np.zeros(2), tolerances=tolerances)
        return interference_coefficients(self.context, self.disturbed, self.outcome, tolerances)

    def with_size(self, n: int) -> EnsembleScenario:
        return replace(self, n=n)

    def with_seed(self, seed: int) -> EnsembleScenario:
        return replace(self, seed=seed)

    def with_replications(self, replications: int) -> EnsembleScenario:
        return replace(self, replications=replications)

    def to_dict(self) -> dict:
        return {
            "joint": self.joint.tolist(),
            "disturbed": self.disturbed.to_list(),
            "n": self.n,
            "seed": self.seed,
            "replications": self.replications,
            "pass_through": self.pass_through,
        }

    @classmethod
    def from_dict(cls, data: dict) -> EnsembleScenario:
        return cls(
            joint=data["joint"],
            disturbed=TransitionMatrix(data["disturbed"]),
            n=data["n"],
            seed=data.get("seed", 0),
            replications=data.get("replications", 1),
            pass_through=bool(data.get("pass_through", False)),
        )


@dataclass(frozen=True, eq=False)
class CountTable:
    """Counts ``n_ij`` on the parent ensemble and ``m_ij`` after disturbance."""

    n: np.ndarray
    m: np.ndarray

    def __post_init__(self) -> None:
        n = np.array(self.n, dtype=np.int64)
        m = np.array(self.m, dtype=np.int64)
        if n.shape != (2, 2) or m.shape != (2, 2):
            raise UnsupportedDimension(
                f"Count tables must be 2x2, got shapes {n.shape} and {m.shape}"
            )
        if np.any(n < 0) or np.any(m < 0):
            raise ValueError("Counts must be nonnegative")
        if not np.array_equal(n.sum(axis=1), m.sum(axis=1)):
            raise ValueError(
                f"Sub-ensemble sizes differ before and after disturbance: "
                f"{n.sum(axis=1).tolist()} vs {m.sum(axis=1).tolist()}"
            )
        n.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)

    @property
    def total(self) -> int:
        return int(self.n.sum())

    @property
    def context_totals(self) -> np.ndarray:
        return self.n.sum(axis=1)

    @property
    def context_frequencies(self) -> np.ndarray:
        """``p_i^(N) = N_i / N``."""
        return self.context_totals / self.total

    @property
    def transition_frequencies(self) -> np.ndarray:
        """``p_ij^(N) = m_ij / N_i``."""
        return self.m / self.context_totals[:, None]

    @property
    def outcome_frequencies(self) -> np.ndarray:
        """``q_j^(N) = n_j / N``."""
        return self.n.sum(axis=0) / self.total

    @property
    def deviations(self) -> np.ndarray:
        """``Delta_ij = n_ij - m_ij``."""
        return self.n - self.m

    def deviation_rates(self) -> np.ndarray:
        return self.deviations / self.total

    def empirical_deltas(self) -> np.ndarray:
        return self.deviations.sum(axis=0) / self.total

    def to_dict(self) -> dict:
        return {"n": self.n.tolist(), "m": self.m.tolist()}


def replication_generator(seed: int, replication: int = 0) -> np.random.Generator:
    """Independent PCG64 stream for one replication of a seeded run."""
    validate_seed(seed)
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(replication,)))
    )


def simulate_counts(scenario: EnsembleScenario, replication: int = 0) -> CountTable:
    """
    Draw the parent ensemble and the disturbed sub-ensembles.

    Args:
        scenario (EnsembleScenario): Sampling setup.
        replication (int): Index of the random stream to use.

    Returns:
        CountTable: ``n_ij`` from a multinomial draw of size ``scenario.n``
        over the joint distribution, ``m_ij`` from multinomial draws of size
        ``N_i`` over the disturbed rows.

    Raises:
        EmptyContext: If some sub-ensemble ends up empty.
    """
    rng = replication_generator(scenario.seed, replication)
    n = rng.multinomial(scenario.n, scenario.joint.ravel()).reshape(2, 2)
    totals = n.sum(axis=1)
    if np.any(totals == 0):
        raise EmptyContext(
            f"Sub-ensemble sizes {totals.tolist()} at N={scenario.n}; "
            "increase the ensemble size"
        )
    if scenario.pass_through:
        m = n.copy()
    else:
        m = np.stack(
            [rng.multinomial(totals[i], scenario.disturbed.rows[i]) for i in range(2)]
        )
    return CountTable(n=n, m=m)


def empirical_profile(
    counts: CountTable, tolerances: Tolerances | None = None
) -> InterferenceProfile:
    """
    Count form of the interference coefficients.

    ``delta_j^(N) = sum_i (n_ij - m_ij) / N`` and
    ``lambda_j^(N) = sum_i (n_ij - m_ij) / (2 sqrt(m_1j m_2j))``. Sampling
    noise straddles ``|lambda| = 1``, so classification uses
    ``empirical_lambda_tol`` both for the classical and the boundary test.

    Raises:
        UndefinedCoefficient: If some ``m_ij`` is zero.
    """
    tolerances = get_tolerances(tolerances)
    if np.any(counts.m == 0):
        raise UndefinedCoefficient(
            f"Disturbed counts {counts.m.tolist()} contain zeros; lambda is undefined"
        )
    numerators = counts.deviations.sum(axis=0)
    lambdas = numerators / (2.0 * np.sqrt(counts.m[0] * counts.m[1]))
    tol = tolerances.empirical_lambda_tol
    near_boundary = np.abs(np.abs(lambdas) - 1.0) <= tol
    if np.any(near_boundary):
        logger.warning(
            f"Empirical lambdas {lambdas.tolist()} lie within {tol} of |lambda| = 1; "
            "the classification is not reliable at this ensemble size"
        )
    return InterferenceProfile(
        lambdas=lambdas,
        deltas=counts.empirical_deltas(),
        behaviour=classify_lambdas(lambdas, tol, tol),
        phases=tuple(phase_from_lambda(lam, tol) for lam in lambdas),
    )


def pass_through_scenario(
    joint: Sequence[Sequence[float]] | np.ndarray,
    n: int,
    seed: int = 0,
    replications: int = 1,
) -> EnsembleScenario:
    """Scenario whose disturbed rows are the undisturbed conditional rows."""
    joint = np.asarray(joint, dtype=float)
    return EnsembleScenario(
        joint=joint,
        disturbed=TransitionMatrix(joint / joint.sum(axis=1)[:, None]),
        n=n,
        seed=seed,
        replications=replications,
        pass_through=True,
    )


def make_decoherence_scenario(
    p: ContextDistribution,
    base: TransitionMatrix,
    shift: float,
    n: int = 10**6,
    seed: int = 0,
    replications: int = 1,
) -> EnsembleScenario:
    """
    Scenario whose per-context deviations cancel in the total.

    Row 1 of the disturbed matrix is ``base[0] + (shift, -shift)``; row 2 is
    shifted by ``-shift * p_1 / p_2`` per outcome in the opposite direction, so
    ``p_1 Delta_rate_1j + p_2 Delta_rate_2j = 0`` and the analytic lambdas
    vanish while each ``Delta_ij / N`` stays finite. ``shift = 0`` gives a
    pass-through scenario.

    Raises:
        InvalidShift: If a disturbed probability leaves (0, 1).
    """
    if p.size != 2 or base.size != 2:
        raise UnsupportedDimension("Decoherence scenarios are defined for 2 contexts")
    joint = p.probs[:, None] * base.rows
    if shift == 0:
        return pass_through_scenario(joint, n=n, seed=seed, replications=replications)
    offset = shift * p.probs[0] / p.probs[1]
    disturbed = base.rows + np.array([[shift, -shift], [-offset, offset]])
    if np.any(disturbed <= 0.0) or np.any(disturbed >= 1.0):
        raise InvalidShift(
            f"shift={shift} moves the disturbed rows {disturbed.tolist()} outside (0, 1)"
        )
    return EnsembleScenario(
        joint=joint,
        disturbed=TransitionMatrix(disturbed),
        n=n,
        seed=seed,
        replications=replications,
    )


@dataclass(frozen=True, eq=False)
class ConvergenceTrace:
    """
    Empirical quantities over an increasing schedule of ensemble sizes.

    ``records`` holds one row per (N, replication) with the CSV columns plus
    ``max_deviation_rate`` (``max_ij |Delta_ij| / N``). Points whose lambdas
    are undefined carry NaN there and ``valid = False``.
    """

    schedule: tuple[int, ...]
    records: pd.DataFrame
    analytic: InterferenceProfile | None = None

    @property
    def summary(self) -> pd.DataFrame:
        """Per-N replication mean and standard deviation."""
        grouped = self.records.groupby("N", sort=True)
        summary = pd.DataFrame(
            {
                "lambda1_mean": grouped["lambda1"].mean(),
                "lambda1_std": grouped["lambda1"].std(ddof=1),
                "lambda2_mean": grouped["lambda2"].mean(),
                "lambda2_std": grouped["lambda2"].std(ddof=1),
                "delta1_mean": grouped["delta1"].mean(),
                "delta2_mean": grouped["delta2"].mean(),
                "max_deviation_rate_mean": grouped["max_deviation_rate"].mean(),
                "valid_fraction": grouped["valid"].mean(),
            }
        )
        return summary

    def final_mean_lambdas(self) -> np.ndarray:
        last = self.summary.iloc[-1]
        return np.array([last["lambda1_mean"], last["lambda2_mean"]])

    def stddev_slope(self, column: str = "lambda1") -> float:
        """Slope of log(stddev) against log(N); NaN with fewer than two usable points."""
        std = self.summary[f"{column}_std"]
        usable = std[np.isfinite(std) & (std > 0.0)]
        if len(usable) < 2:
            return math.nan
        fit = linregress(np.log(usable.index.to_numpy(dtype=float)), np.log(usable.to_numpy()))
        return float(fit.slope)

    def shrinks_like_inverse_sqrt(self, tol: float = 0.25, column: str = "lambda1") -> bool:
        slope = self.stddev_slope(column)
        return bool(np.isfinite(slope) and abs(slope + 0.5) <= tol)

    def to_csv(self) -> str:
        return self.records.loc[:, list(CSV_COLUMNS)].to_csv(index=False, lineterminator="\n")


def _record(N: int, replication: int, counts: CountTable, tolerances: Tolerances) -> dict:
    p = counts.context_frequencies
    P = counts.transition_frequencies
    q = counts.outcome_frequencies
    deltas = counts.empirical_deltas()
    try:
        lambdas = empirical_profile(counts, tolerances).lambdas
        valid = True
    except UndefinedCoefficient as e:
        logger.debug(f"N={N} replication={replication}: {e}")
        lambdas = np.full(2, np.nan)
        valid = False
    return {
        "N": N,
        "replication": replication,
        "p1": p[0],
        "p11": P[0, 0],
        "p12": P[0, 1],
        "p21": P[1, 0],
        "p22": P[1, 1],
        "q1": q[0],
        "q2": q[1],
        "delta1": deltas[0],
        "delta2": deltas[1],
        "lambda1": lambdas[0],
        "lambda2": lambdas[1],
        "valid": valid,
        "max_deviation_rate": float(np.abs(counts.deviation_rates()).max()),
    }


def convergence_study(
    scenario: EnsembleScenario,
    schedule: Sequence[int],
    progress: bool = False,
    tolerances: Tolerances | None = None,
) -> ConvergenceTrace:
    """
    Simulate every ensemble size of ``schedule`` ``scenario.replications`` times.

    Replication ``r`` uses the same random stream at every N.

    Raises:
        ValueError: If the schedule is empty or not strictly increasing.
        EmptyContext: Propagated from :func:`simulate_counts`.
    """
    tolerances = get_tolerances(tolerances)
    schedule = tuple(int(N) for N in schedule)
    if not schedule or schedule[0] < 1 or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError(f"Schedule must be strictly increasing positive sizes, got {schedule}")

    logger.info(
        f"Convergence study over N={list(schedule)} with "
        f"{scenario.replications} replications (seed {scenario.seed})"
    )
    rows = []
    with tqdm(
        total=len(schedule) * scenario.replications,
        desc="convergence",
        disable=not progress,
    ) as bar:
        for N in schedule:
            sized = scenario.with_size(N)
            for replication in range(scenario.replications):
                rows.append(_record(N, replication, simulate_counts(sized, replication), tolerances))
                bar.update(1)

    try:
        analytic = scenario.analytic_profile(tolerances)
    except (DegenerateProbability, InvalidDistribution) as e:
        logger.debug(f"No analytic profile for scenario: {e}")
        analytic = None
    trace = ConvergenceTrace(schedule=schedule, records=pd.DataFrame(rows), analytic=analytic)

    slope = trace.stddev_slope()
    if np.isfinite(slope) and not trace.shrinks_like_inverse_sqrt():
        logger.warning(f"lambda stddev scales like N^{slope:.2f}, expected about N^-0.5")
    return trace
