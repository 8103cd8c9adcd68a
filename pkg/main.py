"""
Main Application for the Quantum State Discrimination Toolkit
Command-line entry point: solve ensembles, evaluate bounds and regenerate
the figure tables as CSV files
"""

import argparse
import json
import os
import sys
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from analytics.bounds import bounds_report
from analytics.support import ambiguous_indices, extract_support
from ensembles.file_format import read_ensemble
from pipeline.experiments import coincidence_experiment, conjecture_search
from pipeline.figures import fig1_frame, fig2_frame, fig3_frame
from solver.optimizer import SolveResult, solve_optimal
from utils.config import load_config
from utils.exceptions import NotConverged, QsdError
from utils.helpers import format_index_set, parse_index_set
from utils.logger import get_logger, setup_global_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_NOT_CONVERGED = 3


def setup_logging(level: str, log_file: Optional[str]) -> bool:
    """
    Set up logging for the application

    Returns:
        True if logging was configured, False if the log file could not be opened
    """
    try:
        setup_global_logging(level, log_file)
        return True
    except OSError as e:
        setup_global_logging(level)
        logger.warning(f"Could not open log file {log_file}: {e}")
        return False


def write_frame(frame: pd.DataFrame, path: str):
    """Write a DataFrame as CSV with a header row and LF line endings"""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(frame)} rows to {path}")


def _output_path(args: argparse.Namespace, config: Dict[str, Any], default_name: str) -> str:
    if args.out:
        return args.out
    return os.path.join(config["output"]["dir"], default_name)


def _solver_settings(args: argparse.Namespace, config: Dict[str, Any]) -> Dict[str, Any]:
    settings = dict(config["solver"])
    if getattr(args, "tol", None) is not None:
        settings["tol"] = args.tol
    return settings


def _experiment_value(args: argparse.Namespace, config: Dict[str, Any], name: str):
    value = getattr(args, name, None)
    return value if value is not None else config["experiment"][name]


def _povm_payload(result: SolveResult) -> List[List[List[List[float]]]]:
    return [
        [[[float(z.real), float(z.imag)] for z in row] for row in op]
        for op in result.povm.operators
    ]


def _solve_with_partial(ensemble, settings) -> Tuple[SolveResult, bool]:
    try:
        return solve_optimal(ensemble, settings=settings), True
    except NotConverged as e:
        return e.result, False


def cmd_discriminate(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    """Solve an ensemble file and write the measurement, support and bounds as JSON"""
    ensemble = read_ensemble(args.ensemble)
    result, converged = _solve_with_partial(ensemble, _solver_settings(args, config))

    support = extract_support(result.povm, config["support"]["threshold"])
    ambiguous = ambiguous_indices(
        result.povm, config["support"]["ambiguous_low"], config["support"]["ambiguous_high"]
    )
    report = bounds_report(ensemble, support)

    payload = dict(result.to_dict())
    payload.update(
        {
            "n": ensemble.n,
            "dim": ensemble.dim,
            "support": format_index_set(support),
            "ambiguous": format_index_set(ambiguous),
            "povm": _povm_payload(result),
            "bounds": [
                {"name": e.name, "value": e.value, "applicable": e.applicable, "reason": e.reason}
                for e in report.entries.values()
            ],
        }
    )

    path = _output_path(args, config, "discriminate.json")
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")

    print(f"P_opt = {result.p_success:.12f} (gap {result.gap:.3e}), support = {{{format_index_set(support)}}}")
    logger.info(f"Wrote discrimination result to {path}")
    return EXIT_OK if converged else EXIT_NOT_CONVERGED


def cmd_bounds(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    """Evaluate every bound on an ensemble file; the support comes from --support or a solve"""
    ensemble = read_ensemble(args.ensemble)
    converged = True
    if args.support is not None:
        support = sorted(parse_index_set(args.support))
    else:
        result, converged = _solve_with_partial(ensemble, _solver_settings(args, config))
        support = extract_support(result.povm, config["support"]["threshold"])

    frame = bounds_report(ensemble, support).to_frame()
    write_frame(frame, _output_path(args, config, "bounds.csv"))
    return EXIT_OK if converged else EXIT_NOT_CONVERGED


def cmd_fig1(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    frame = fig1_frame(
        args.alpha_min,
        args.alpha_max,
        args.steps,
        _solver_settings(args, config),
        threads=_experiment_value(args, config, "threads"),
    )
    write_frame(frame, _output_path(args, config, "fig1.csv"))
    print(f"max discrepancy = {frame['discrepancy'].max():.3e}")
    return EXIT_OK if frame["converged"].all() else EXIT_NOT_CONVERGED


def cmd_fig2(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    frame = fig2_frame(args.grid, threads=_experiment_value(args, config, "threads"))
    write_frame(frame, _output_path(args, config, "fig2.csv"))
    return EXIT_OK


def cmd_fig3(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    frame = fig3_frame(
        args.grid,
        solver_settings=_solver_settings(args, config),
        support_settings=config["support"],
        threads=_experiment_value(args, config, "threads"),
    )
    write_frame(frame, _output_path(args, config, "fig3.csv"))
    return EXIT_OK if frame["converged"].all() else EXIT_NOT_CONVERGED


def cmd_fig4(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    stats = coincidence_experiment(
        _experiment_value(args, config, "instances"),
        n=config["experiment"]["n_states"],
        d=config["experiment"]["dim"],
        seed=_experiment_value(args, config, "seed"),
        threads=_experiment_value(args, config, "threads"),
        support_settings=config["support"],
        solver_settings=_solver_settings(args, config),
    )
    write_frame(stats.to_frame(), _output_path(args, config, "fig4.csv"))
    if args.records:
        write_frame(stats.records, args.records)
    print(
        f"coincide = {stats.coincide_rate:.4f} "
        f"[{stats.ci99['coincide'][0]:.4f}, {stats.ci99['coincide'][1]:.4f}], "
        f"violations = {stats.violations}, ambiguous = {stats.ambiguous}"
    )
    return EXIT_OK if stats.unconverged == 0 else EXIT_NOT_CONVERGED


def cmd_conjecture(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    report = conjecture_search(
        _experiment_value(args, config, "instances"),
        n=config["experiment"]["n_states"],
        d=config["experiment"]["dim"],
        seed=_experiment_value(args, config, "seed"),
        threads=_experiment_value(args, config, "threads"),
        pure=args.pure,
        support_settings=config["support"],
        solver_settings=_solver_settings(args, config),
    )
    write_frame(report.counterexamples, _output_path(args, config, "conjecture.csv"))
    print(
        f"{len(report.counterexamples)} counterexamples among {report.evaluated} "
        f"evaluated instances (min margin {report.min_margin})"
    )
    return EXIT_OK


COMMANDS = {
    "discriminate": cmd_discriminate,
    "bounds": cmd_bounds,
    "fig1": cmd_fig1,
    "fig2": cmd_fig2,
    "fig3": cmd_fig3,
    "fig4": cmd_fig4,
    "conjecture": cmd_conjecture,
}


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per operation"""
    parser = argparse.ArgumentParser(
        prog="qsd", description="Minimum-error quantum state discrimination toolkit"
    )
    parser.add_argument("--config", default="config.json", help="JSON configuration file")
    parser.add_argument("--log-level", default=None, help="Overrides logging.level")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, solve: bool = True):
        p.add_argument("--out", default=None, help="Output file")
        if solve:
            p.add_argument("--tol", type=float, default=None, help="Certified gap to reach")

    p = sub.add_parser("discriminate", help="Optimal measurement of an ensemble file")
    p.add_argument("--ensemble", required=True)
    add_common(p)

    p = sub.add_parser("bounds", help="Bound report for an ensemble file")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--support", default=None, help='Index set such as "0 1"; solved when omitted')
    add_common(p)

    p = sub.add_parser("fig1", help="Equidistant triple: closed form against solver")
    p.add_argument("--alpha-min", type=float, default=0.5)
    p.add_argument("--alpha-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=51)
    p.add_argument("--threads", type=int, default=None)
    add_common(p)

    p = sub.add_parser("fig2", help="Mirror family region and inequality map")
    p.add_argument("--grid", type=int, default=400)
    p.add_argument("--threads", type=int, default=None)
    add_common(p, solve=False)

    p = sub.add_parser("fig3", help="Qubit triple support map over the Bloch sphere")
    p.add_argument("--grid", type=int, default=40)
    p.add_argument("--threads", type=int, default=None)
    add_common(p)

    for name, text in (
        ("fig4", "Subset/superset coincidence experiment"),
        ("conjecture", "Search for violations of the pruned-PGM inequality"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--instances", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--threads", type=int, default=None)
        add_common(p)
        if name == "fig4":
            p.add_argument("--records", default=None, help="Optional per-instance CSV")
        else:
            p.add_argument("--pure", action="store_true", help="Sample pure states")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main application function"""
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args.config)
    except (ValueError, RuntimeError) as e:
        setup_logging(args.log_level or "INFO", None)
        logger.error(f"Failed to load configuration: {e}")
        return EXIT_INPUT

    logging_config = config["logging"]
    setup_logging(args.log_level or logging_config["level"], logging_config.get("file"))
    logger.info(f"Running {args.command}")

    try:
        return COMMANDS[args.command](args, config)
    except NotConverged as e:
        logger.error(f"Solver did not converge: {e}")
        return EXIT_NOT_CONVERGED
    except (QsdError, ValueError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INPUT
    except Exception as e:
        logger.error(f"Error in {args.command}: {e}", exc_info=True)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
