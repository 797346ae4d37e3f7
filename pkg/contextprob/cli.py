"""Command-line front end.

Subcommands:

    classify   interference profile of a (p, P, q) problem file
    transform  outcome probabilities of (p, P) and lambdas or phases
    simulate   frequency convergence study of a scenario file
    rep-c      complex amplitude representation diagnostics
    rep-g      hyperbolic amplitude representation diagnostics
    examples   recompute the worked examples against golden values

Exit codes: 0 success, 1 golden mismatch, 2 malformed input, 3 domain
error, 4 degenerate simulation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import pandas as pd
from pyiron_snippets.logger import logger

from contextprob._version import __version__
from contextprob.complex_rep import (
    amplitudes_from_context,
    born,
    compose,
    is_unitary,
    matrix_from_probabilities,
    normalization_defect,
    phase_differences,
    solve_phase_constraint,
)
from contextprob.config import Tolerances, get_tolerances, resolve_seed
from contextprob.errors import (
    ContextProbError,
    MalformedInput,
    NonphysicalState,
    NoSolution,
    NotDecomposable,
    SimulationError,
)
from contextprob.examples import run_examples
from contextprob.hyperbolic_rep import (
    g_amplitudes_from_context,
    g_born,
    g_compose,
    g_matrix_from_probabilities,
    g_normalization_defect,
    g_solve_phase_constraint,
    g_unitary_characterization,
)
from contextprob.phases import PhaseFamily
from contextprob.probability import (
    check_orthogonality,
    coupling_coefficient,
    forward_transform,
    interference_coefficients,
    multi_valued_decomposition,
    profile_from_lambdas,
    profile_from_phases,
)
from contextprob.schema import dump_document, load_document, read_problem, read_scenario
from contextprob.simulator import convergence_study

SUBCOMMANDS = ("classify", "transform", "simulate", "rep-c", "rep-g", "examples")

EXIT_OK = 0
EXIT_GOLDEN_MISMATCH = 1
EXIT_MALFORMED = 2
EXIT_DOMAIN = 3
EXIT_SIMULATION = 4


@dataclass(frozen=True)
class RunConfig:
    """Parsed command line of one invocation."""

    subcommand: str
    input_path: Path | None = None
    output_format: str = "json"
    output_path: Path | None = None
    seed: int | None = None
    replications: int | None = None
    schedule: tuple[int, ...] | None = None
    tolerance_overrides: dict[str, str] = field(default_factory=dict)
    progress: bool = False

    def __post_init__(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise MalformedInput(
                f"Unknown subcommand {self.subcommand!r}. Valid options: {', '.join(SUBCOMMANDS)}"
            )
        if self.output_format not in ("json", "csv"):
            raise MalformedInput(f"Unknown format {self.output_format!r}. Valid options: json, csv")

    @property
    def tolerances(self) -> Tolerances:
        try:
            return get_tolerances().with_overrides(self.tolerance_overrides)
        except ValueError as e:
            raise MalformedInput(str(e)) from e

    def require_input(self) -> dict:
        if self.input_path is None:
            raise MalformedInput(f"{self.subcommand} requires --input")
        return load_document(self.input_path)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        return cls(
            subcommand=args.subcommand,
            input_path=args.input,
            output_format=args.format,
            output_path=args.output,
            seed=args.seed,
            replications=args.replications,
            schedule=_parse_schedule(args.schedule),
            tolerance_overrides=_parse_tolerances(args.tol),
            progress=args.progress,
        )


def _parse_schedule(raw: str | None) -> tuple[int, ...] | None:
    if raw is None:
        return None
    try:
        return tuple(int(float(item)) for item in raw.split(",") if item.strip())
    except ValueError as e:
        raise MalformedInput(f"--schedule must be comma-separated integers, got {raw!r}") from e


def _parse_tolerances(items: Sequence[str] | None) -> dict[str, str]:
    overrides = {}
    for item in items or ():
        if "=" not in item:
            raise MalformedInput(f"--tol expects NAME=VALUE, got {item!r}")
        name, value = item.split("=", 1)
        overrides[name.strip()] = value.strip()
    return overrides


def _csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n")


def _families(families: list[PhaseFamily], gamma2: float) -> list[dict]:
    result = []
    for family in families:
        entry = family.to_dict()
        try:
            entry["gamma1"] = list(family.solutions(gamma2))
        except NoSolution as e:
            entry["gamma1"] = []
            entry["error"] = str(e)
        result.append(entry)
    return result


def run_classify(config: RunConfig) -> tuple[str, int]:
    tolerances = config.tolerances
    problem = read_problem(config.require_input())
    if problem.q is None:
        raise MalformedInput("classify requires 'q' in the problem file")
    if problem.p.size == 2:
        profile = interference_coefficients(problem.p, problem.P, problem.q, tolerances)
        K = coupling_coefficient(problem.P)
        document = {
            "profile": profile.to_dict(),
            "K": K,
            "orthogonal": check_orthogonality(profile, K, tolerances.orthogonality_tol),
        }
    else:
        profile = multi_valued_decomposition(problem.p, problem.P, problem.q, tolerances)
        document = {"profile": profile.to_dict()}
    if config.output_format == "csv":
        if not profile.is_dichotomic:
            raise MalformedInput("CSV output of classify needs a two-valued observable")
        frame = pd.DataFrame(
            {
                "outcome": [1, 2],
                "lambda": profile.lambdas,
                "delta": profile.deltas,
                "kind": [phase.kind for phase in profile.phases],
                "theta": [phase.theta for phase in profile.phases],
                "sign": [phase.sign for phase in profile.phases],
            }
        )
        return _csv(frame), EXIT_OK
    return dump_document(document), EXIT_OK


def run_transform(config: RunConfig) -> tuple[str, int]:
    tolerances = config.tolerances
    problem = read_problem(config.require_input())
    if problem.lambdas is not None:
        profile = profile_from_lambdas(problem.lambdas, problem.p, problem.P, tolerances)
    elif problem.phases is not None:
        profile = profile_from_phases(problem.phases, problem.p, problem.P, tolerances)
    else:
        raise MalformedInput("transform requires 'lambdas' or 'phases' in the problem file")
    q = forward_transform(problem.p, problem.P, profile, tolerances)
    if config.output_format == "csv":
        return _csv(pd.DataFrame({"outcome": [1, 2], "q": q.probs})), EXIT_OK
    return dump_document({"profile": profile.to_dict(), "q": q.to_list()}), EXIT_OK


def run_simulate(config: RunConfig) -> tuple[str, int]:
    tolerances = config.tolerances
    scenario = read_scenario(config.require_input())
    try:
        scenario = scenario.with_seed(resolve_seed(config.seed, scenario.seed))
        if config.replications is not None:
            scenario = scenario.with_replications(config.replications)
    except ValueError as e:
        raise MalformedInput(str(e)) from e
    schedule = config.schedule or (scenario.n,)
    trace = convergence_study(scenario, schedule, progress=config.progress, tolerances=tolerances)

    final = trace.final_mean_lambdas()
    target = None if trace.analytic is None else trace.analytic.lambdas.tolist()
    summary = f"final mean lambda {final.tolist()} (analytic {target})"
    logger.info(summary)

    if config.output_format == "csv":
        sys.stderr.write(f"{summary}\n")
        return trace.to_csv(), EXIT_OK
    document = {
        "scenario": scenario.to_dict(),
        "schedule": list(trace.schedule),
        "records": json.loads(trace.records.to_json(orient="records", double_precision=15)),
        "summary": json.loads(
            trace.summary.reset_index().to_json(orient="records", double_precision=15)
        ),
        "final_mean_lambdas": [None if math.isnan(x) else x for x in final.tolist()],
        "analytic": None if trace.analytic is None else trace.analytic.to_dict(),
    }
    return dump_document(document), EXIT_OK


def run_rep_c(config: RunConfig) -> tuple[str, int]:
    tolerances = config.tolerances
    problem = read_problem(config.require_input())
    if problem.gamma is None:
        raise MalformedInput("rep-c requires 'gamma' in the problem file")
    xi = problem.xi or [0.0, 0.0]
    alpha = amplitudes_from_context(problem.p, xi)
    U = matrix_from_probabilities(problem.P, problem.gamma)
    beta = compose(alpha, U)
    document = {
        "alpha": alpha.to_dict(),
        "U": U.to_dict(),
        "beta": beta.to_dict(),
        "defect": normalization_defect(alpha, U),
        "unitary": is_unitary(U, tolerances.unitarity_tol),
        "phase_differences": list(phase_differences(U)),
    }
    try:
        document["q"] = born(beta, tolerances).to_list()
    except NotDecomposable as e:
        document["q"] = None
        document["error"] = str(e)
    eta = xi[0] - xi[1]
    document["families"] = _families(
        solve_phase_constraint(problem.P, eta, tolerances), document["phase_differences"][1]
    )
    return dump_document(document), EXIT_OK


def run_rep_g(config: RunConfig) -> tuple[str, int]:
    tolerances = config.tolerances
    problem = read_problem(config.require_input())
    if problem.gamma is None or problem.matrix_signs is None:
        raise MalformedInput("rep-g requires 'gamma' and 'matrix_signs' in the problem file")
    xi = problem.xi or [0.0, 0.0]
    signs = problem.signs or [1, 1]
    try:
        alpha = g_amplitudes_from_context(problem.p, signs, xi)
        U = g_matrix_from_probabilities(problem.P, problem.matrix_signs, problem.gamma)
    except ValueError as e:
        if isinstance(e, ContextProbError):
            raise
        raise MalformedInput(str(e)) from e
    beta = g_compose(alpha, U)
    document = {
        "alpha": alpha.to_dict(),
        "U": U.to_dict(),
        "sigma": U.sigma,
        "beta": beta.to_dict(),
        "sq_norms": beta.sq_norms().tolist(),
        "defect": g_normalization_defect(alpha, U),
        "unitarity": g_unitary_characterization(U, tolerances).to_dict(),
        "phase_differences": list(U.phase_differences()),
    }
    try:
        document["q"] = g_born(beta, tolerances).to_list()
        document["physical"] = True
    except (NonphysicalState, NotDecomposable) as e:
        document["q"] = None
        document["physical"] = False
        document["error"] = str(e)
    try:
        families = g_solve_phase_constraint(problem.P, U.sigma, xi[0] - xi[1], tolerances)
        document["families"] = _families(families, document["phase_differences"][1])
    except NoSolution as e:
        document["families"] = []
        document["families_error"] = str(e)
    return dump_document(document), EXIT_OK


def run_examples_command(config: RunConfig) -> tuple[str, int]:
    report = run_examples(tol=1e-9, tolerances=config.tolerances)
    code = EXIT_OK if report.passed else EXIT_GOLDEN_MISMATCH
    if config.output_format == "csv":
        frame = pd.DataFrame([check.to_dict() for check in report.checks])
        return _csv(frame), code
    return dump_document(report.to_dict()), code


RUNNERS: dict[str, Callable[[RunConfig], tuple[str, int]]] = {
    "classify": run_classify,
    "transform": run_transform,
    "simulate": run_simulate,
    "rep-c": run_rep_c,
    "rep-g": run_rep_g,
    "examples": run_examples_command,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", type=Path, help="Problem or scenario JSON file.")
    common.add_argument("--output", type=Path, help="Write the result here instead of stdout.")
    common.add_argument("--format", choices=("json", "csv"), default="json", help="Output format.")
    common.add_argument("--seed", type=int, help="Seed override (unsigned 64-bit).")
    common.add_argument("--replications", type=int, help="Replications per ensemble size.")
    common.add_argument("--schedule", help="Comma-separated ensemble sizes, e.g. 1000,10000.")
    common.add_argument(
        "--tol",
        action="append",
        metavar="NAME=VALUE",
        help="Tolerance override; may be repeated.",
    )
    common.add_argument("--progress", action="store_true", help="Show a progress bar.")

    parser = argparse.ArgumentParser(prog="contextprob", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        subparsers.add_parser(name, parents=[common])
    return parser


def _emit(text: str, output_path: Path | None) -> None:
    if output_path is None:
        sys.stdout.write(text)
        return
    with open(output_path, "w", newline="\n") as f:
        f.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig.from_args(args)
        logger.info(f"contextprob {config.subcommand} started")
        text, code = RUNNERS[config.subcommand](config)
        _emit(text, config.output_path)
    except MalformedInput as e:
        logger.error(f"Malformed input: {e}")
        return EXIT_MALFORMED
    except SimulationError as e:
        logger.error(f"Simulation failed: {e}")
        return EXIT_SIMULATION
    except ContextProbError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_DOMAIN
    except ValueError as e:
        logger.error(f"Invalid argument: {e}")
        return EXIT_MALFORMED
    logger.info(f"contextprob {config.subcommand} finished with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
