"""
Main entry point for the dwssp CLI.

Usage:
    dwssp                                  Print usage help.
    dwssp analyze METHOD                   Order, stability function, A-stability.
    dwssp certify METHOD [--tol TOL]       Downwind SSP coefficient and certificate.
    dwssp optimal-lmm --k K [--p P]        Optimal downwind multistep method.
    dwssp advect   [--cfl 8 --n 128]       Square-wave advection, three methods.
    dwssp converge [--cfl 8 --sizes 32,64,128,256]
                                           Sine-wave convergence table (WENO5).
    dwssp burgers  [--cfl 6.5 --n 512]     Burgers shock formation vs. reference.
    dwssp run CONFIG.yaml                  Experiment from a YAML spec.

METHOD is a built-in name (forward-euler, backward-euler, trapezoidal,
ssprk22, ssprk33, dw-family:<r>, lmm:<name>) or a JSON method file.

Exit codes: 0 success, 2 invalid input, 3 solver or certification failure,
4 I/O error.
"""
import argparse
import json
import logging
import math
import os
import sys
from typing import Callable, List, Optional

from .config import DEFAULT_BISECTION_TOL, DEFAULT_LOG_LEVEL, DEFAULT_OUTPUT_DIR, MAX_JOBS
from .exceptions import DwsspError, DwsspValidationError
from .logging_config import configure_logging
from .utils import Utils

logger = logging.getLogger("dwssp.cli")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SOLVER = 3
EXIT_IO = 4

FAMILY_CHECK_TOL = 1e-6


def _emit(report: dict, out_dir: Optional[str], filename: str) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))
    if out_dir:
        path = os.path.join(out_dir, filename)
        Utils.atomic_write_json(path, report)
        print(f"Wrote {path}", file=sys.stderr)


def _positive_tol(tol: float) -> float:
    if not (math.isfinite(tol) and tol > 0.0):
        raise DwsspValidationError(f"--tol must be positive, got {tol}")
    return tol


# ---------------------------------------------------------------------------
# Method commands
# ---------------------------------------------------------------------------

def _cmd_analyze(args: argparse.Namespace) -> int:
    from .methods import method_report, resolve_method

    method = resolve_method(args.method)
    report = method_report(method)
    report["method"] = report["method"] or args.method
    _emit(report, args.out, "analysis.json")
    return EXIT_OK


def _cmd_certify(args: argparse.Namespace) -> int:
    from .methods import DownwindLmm, resolve_method
    from .methods.catalog import FAMILY_PREFIX
    from .ssp import certification_report, lmm_downwind_ssp_coefficient

    tol = _positive_tol(args.tol)
    method = resolve_method(args.method)
    if isinstance(method, DownwindLmm):
        report = {"method": method.name or args.method, "Ctilde": lmm_downwind_ssp_coefficient(method)}
    else:
        report = certification_report(method, tol, method=method.name or args.method)
        name = method.name or ""
        if name.startswith(FAMILY_PREFIX):
            r = float(name[len(FAMILY_PREFIX):])
            report["family_r"] = r
            report["family_check"] = abs(report["Ctilde"] - r) <= max(FAMILY_CHECK_TOL, 10 * tol)
    _emit(report, args.out, "certificate.json")
    return EXIT_OK


def _cmd_optimal_lmm(args: argparse.Namespace) -> int:
    from .ssp import optimal_lmm

    tol = _positive_tol(args.tol)
    method, r_opt = optimal_lmm(args.k, args.p, implicit=not args.explicit, tol=tol)
    report = {"Ctilde": r_opt, "method": method.to_dict()}
    _emit(report, args.out, "optimal_lmm.json")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Experiment commands
# ---------------------------------------------------------------------------

def _parse_sizes(raw: Optional[str]) -> Optional[tuple]:
    if raw is None:
        return None
    try:
        return tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError as exc:
        raise DwsspValidationError(f"--sizes must be comma-separated integers, got {raw!r}") from exc


def _parse_methods(raw: Optional[str]) -> Optional[tuple]:
    if raw is None:
        return None
    return tuple(part.strip() for part in raw.split(",") if part.strip())


def _jobs(args: argparse.Namespace) -> int:
    if args.jobs < 1:
        raise DwsspValidationError(f"--jobs must be at least 1, got {args.jobs}")
    if args.jobs > MAX_JOBS:
        logger.warning(f"--jobs {args.jobs} capped at {MAX_JOBS}")
    return min(args.jobs, MAX_JOBS)


def _run_spec(spec, args: argparse.Namespace) -> int:
    from .experiments import run_experiment, write_artifacts

    jobs = _jobs(args)
    out_dir = args.out or os.path.join(DEFAULT_OUTPUT_DIR, args.command)
    result = run_experiment(spec, jobs=jobs)
    write_artifacts(result, out_dir)
    for label, error in result.errors.items():
        trace = result.traces[label]
        print(f"{label:>28}  max error {error:.6e}  TV nonincreasing {trace.tv_nonincreasing()}  "
              f"peak |u| {trace.max_norm_peak():.6f}")
    if result.table:
        from .experiments import convergence_frame
        print(convergence_frame(result.table).to_string(index=False))
    print(f"Artifacts in {out_dir}")
    return EXIT_OK


def _experiment_spec(problem: str, args: argparse.Namespace):
    from .experiments import ExperimentSpec

    return ExperimentSpec.for_problem(
        problem,
        n=args.n,
        cfl=args.cfl,
        t_end=args.t_end,
        r=args.r,
        spatial=args.spatial,
        methods=_parse_methods(args.methods),
        sizes=_parse_sizes(getattr(args, "sizes", None)),
        second_cfl=getattr(args, "second_cfl", None),
        splitting=getattr(args, "splitting", None),
    )


def _cmd_advect(args: argparse.Namespace) -> int:
    return _run_spec(_experiment_spec("advection-square", args), args)


def _cmd_converge(args: argparse.Namespace) -> int:
    if args.sizes is None:
        args.sizes = "32,64,128,256"
    return _run_spec(_experiment_spec("advection-sine", args), args)


def _cmd_burgers(args: argparse.Namespace) -> int:
    if args.second_cfl is None and args.cfl is not None:
        args.second_cfl = args.cfl / 2.0
    elif args.second_cfl is None:
        args.second_cfl = 3.25
    return _run_spec(_experiment_spec("burgers", args), args)


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        from .experiments.config_loader import load_spec_from_config
    except ImportError as exc:
        raise DwsspValidationError(str(exc)) from exc
    return _run_spec(load_spec_from_config(args.config), args)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, metavar="DIR",
                        help="Output directory for reports and artifacts")
    common.add_argument("--verbose", "-v", action="store_true", help="Log at DEBUG level")
    common.add_argument("--log-file", default=None, metavar="FILE", help="Also log to FILE")

    parser = argparse.ArgumentParser(
        prog="dwssp",
        description="Downwind strong-stability-preserving time integrators",
    )
    sub = parser.add_subparsers(dest="command", metavar="<command>")

    analyze = sub.add_parser("analyze", parents=[common], help="Order and linear stability of a method")
    analyze.add_argument("method", metavar="METHOD")
    analyze.set_defaults(handler=_cmd_analyze)

    certify = sub.add_parser("certify", parents=[common], help="Certify the downwind SSP coefficient")
    certify.add_argument("method", metavar="METHOD")
    certify.add_argument("--tol", type=float, default=DEFAULT_BISECTION_TOL,
                         help=f"Bisection tolerance (default: {DEFAULT_BISECTION_TOL:g})")
    certify.set_defaults(handler=_cmd_certify)

    lmm = sub.add_parser("optimal-lmm", parents=[common], help="Search for an optimal multistep method")
    lmm.add_argument("--k", type=int, required=True, help="Number of steps")
    lmm.add_argument("--p", type=int, default=2, help="Order of accuracy (default: 2)")
    lmm.add_argument("--explicit", action="store_true", help="Restrict to explicit methods")
    lmm.add_argument("--tol", type=float, default=DEFAULT_BISECTION_TOL,
                     help=f"Bisection tolerance (default: {DEFAULT_BISECTION_TOL:g})")
    lmm.set_defaults(handler=_cmd_optimal_lmm)

    experiment = argparse.ArgumentParser(add_help=False, parents=[common])
    experiment.add_argument("--cfl", type=float, default=None, help="dt / dt_FE")
    experiment.add_argument("--n", type=int, default=None, help="Grid points")
    experiment.add_argument("--t-end", type=float, default=None, help="Final time")
    experiment.add_argument("--r", type=float, default=None, help="Downwind family parameter (default: 8)")
    experiment.add_argument("--spatial", choices=["first", "weno5"], default=None,
                            help="Spatial operator pair")
    experiment.add_argument("--methods", default=None, metavar="A,B,...",
                            help="Comma-separated methods (default: backward-euler,trapezoidal,dw-family:r)")
    experiment.add_argument("--jobs", type=int, default=1, help="Concurrent runs (default: 1)")

    advect = sub.add_parser("advect", parents=[experiment], help="Square-wave advection")
    advect.set_defaults(handler=_cmd_advect)

    converge = sub.add_parser("converge", parents=[experiment], help="Sine-wave convergence table")
    converge.add_argument("--sizes", default=None, metavar="N1,N2,...",
                          help="Ascending grid sizes (default: 32,64,128,256)")
    converge.set_defaults(handler=_cmd_converge)

    burgers = sub.add_parser("burgers", parents=[experiment], help="Burgers shock formation")
    burgers.add_argument("--second-cfl", type=float, default=None,
                         help="CFL of the extra downwind-family run (default: half of --cfl)")
    burgers.add_argument("--splitting", choices=["lax-friedrichs", "engquist-osher"], default=None,
                         help="Burgers flux splitting (default: engquist-osher, or DWSSP_BURGERS_SPLITTING)")
    burgers.set_defaults(handler=_cmd_burgers)

    run = sub.add_parser("run", parents=[common], help="Experiment described by a YAML file")
    run.add_argument("config", metavar="CONFIG")
    run.add_argument("--jobs", type=int, default=1, help="Concurrent runs (default: 1)")
    run.set_defaults(handler=_cmd_run)

    return parser


def _dispatch(handler: Callable[[argparse.Namespace], int], args: argparse.Namespace) -> int:
    try:
        return handler(args)
    except DwsspValidationError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except DwsspError as exc:
        logger.error(f"{args.command} failed: {exc}")
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        print("\nExample:")
        print("  dwssp certify dw-family:8")
        print("  dwssp advect --cfl 8 --n 128 --out results/square")
        return EXIT_OK

    try:
        configure_logging(logging.DEBUG if args.verbose else DEFAULT_LOG_LEVEL, args.log_file)
    except OSError as exc:
        print(f"I/O error: cannot open log file: {exc}", file=sys.stderr)
        return EXIT_IO
    return _dispatch(args.handler, args)


if __name__ == "__main__":
    sys.exit(main())
