"""Command-line front end.

Every command renders one CSV table preceded by a ``#`` header line and
writes it to stdout or ``--out``. Exit codes: 0 success, 2 parameter error,
3 numerical-domain error, 4 verification failure.
"""

import argparse
import logging
import os
import sys
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from analysis.benchmarks import METRICS, energy_drift, work_precision
from analysis.convergence import convergence_order, geometric_grid, local_error_order
from analysis.stability import stability_limit
from analysis.symmetry_probes import (
    linear_order_degree,
    nonlinear_symmetry_probe,
    pseudo_symmetry_degree,
    pseudo_symplecticity_degree,
    readout_symmetry_degree,
)
from cli.resolve import PROBLEMS, build_system, parse_time, resolve_method, resolve_methods, resolve_set, snap_step
from coefficients.catalog import bundled_sets, verify_coefficient_set
from coefficients.error_model import basic_error_model, effective_error_curve, effective_error_terms
from config.settings import (
    DEFAULT_POLY_DEGREE,
    DEFAULT_SEARCH_BOX,
    DEFAULT_SEARCH_STARTS,
    DEFAULT_SEED,
)
from data.coefficient_file import write_coefficient_file
from data.models import Projection, RunConfig, SearchProblem, Symmetry
from engine.integrator import integrate, trajectory_header, trajectory_rows
from solver.multistart import multistart_search
from utils.csv_output import emit, render_csv
from utils.errors import (
    CoefficientFileError,
    ConvergenceError,
    DomainError,
    IntegrationError,
    UnknownMethodError,
    ValidationError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_NUMERICAL = 3
EXIT_VERIFICATION = 4

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

PROBE_KINDS = (
    "symmetry",
    "readout-symmetry",
    "symplecticity",
    "stability",
    "elbow",
    "order",
    "linear-order",
    "nonlinear-symmetry",
)

DEFAULT_FINAL_TIMES = {"ho": "650", "kepler": "650", "pendulum": "200pi", "oracle": "1"}
DEFAULT_STEPS = {"ho": 1.0 / 6.0, "kepler": 2.0 / 7.0, "pendulum": 0.2 * np.pi, "oracle": 0.1}
# step grid of the trajectory probes when --h-grid is not given
PROBE_GRID = (0.05, 0.4, 6)

CommandResult = Tuple[str, int]


def _problem_params(args: argparse.Namespace) -> Dict[str, float]:
    problem = getattr(args, "problem", None)
    keys = {"ho": ("q0", "p0"), "kepler": ("e",), "pendulum": ("alpha",), "oracle": ("seed", "dim", "norm")}.get(problem, ())
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _h_values(args: argparse.Namespace, t_final: Optional[float], default_grid=None) -> List[float]:
    grid = getattr(args, "h_grid", None) or default_grid
    if grid:
        start, stop, count = grid
        values = geometric_grid(float(start), float(stop), int(count)).tolist()
    elif getattr(args, "h", None) is not None:
        values = [args.h]
    else:
        values = [DEFAULT_STEPS[args.problem]]
    if t_final is not None and t_final > 0:
        values = [snap_step(h, t_final) for h in values]
    return values


# catalog


def cmd_catalog(args: argparse.Namespace) -> CommandResult:
    sets = bundled_sets()
    config = RunConfig(subcommand="catalog", output=args.out, options={"verify": args.verify})
    columns = ["name", "stages", "composition_order", "projected_order", "pseudo_symmetry_order", "symmetry", "provenance"]
    if args.verify:
        columns += ["max_residual", "passed"]

    rows = []
    status = EXIT_OK
    for s in sets:
        row = [s.name, s.stages, s.composition_order, s.projected_order, s.pseudo_symmetry_order, s.symmetry, s.provenance]
        if args.verify:
            report = verify_coefficient_set(s)
            row += [report.max_residual, report.passed]
            if not report.passed:
                status = EXIT_VERIFICATION
        rows.append(row)

    if args.export:
        for s in sets:
            write_coefficient_file(s, os.path.join(args.export, f"{s.name}.txt"))
        logger.info(f"Exported {len(sets)} coefficient files to {args.export}")
    return render_csv(config.header_items(), columns, rows), status


# verify


def cmd_verify(args: argparse.Namespace) -> CommandResult:
    coefficient_set = resolve_set(args.method)
    report = verify_coefficient_set(coefficient_set)
    config = RunConfig(subcommand="verify", methods=[coefficient_set.name], output=args.out)

    rows = []
    for name, value in zip(("w1", "w31", "w41", "w51", "w52"), report.residues.as_tuple()):
        rows.append([f"{name}.re", value.real, None, "info"])
        rows.append([f"{name}.im", value.imag, None, "info"])
    for name, value in report.defects.items():
        rows.append([f"defect {name}", value, report.residue_tol, "pass" if value <= report.residue_tol else "fail"])
    rows.append(["symmetry", f"{report.classified.value} (declared {report.declared.value})", None,
                 "pass" if report.symmetry_ok else "fail"])
    for name, value in report.parity.items():
        rows.append([f"parity {name}", value, report.structural_tol, "pass" if value <= report.structural_tol else "fail"])
    if coefficient_set.symmetry in (Symmetry.PALINDROMIC, Symmetry.BOTH):
        rows.append(["note", "w41 = 0 by palindromic symmetry", None, "info"])
    rows.append(["result", "pass" if report.passed else "fail", None, "pass" if report.passed else "fail"])

    status = EXIT_OK if report.passed else EXIT_VERIFICATION
    return render_csv(config.header_items(), ["check", "value", "limit", "status"], rows), status


# probe


def cmd_probe(args: argparse.Namespace) -> CommandResult:
    kind = args.kind
    spec = resolve_method(args.method, args.projection)
    options: Dict[str, object] = {"kind": kind, "projection": spec.projection}
    config = RunConfig(subcommand="probe", methods=[spec.name], output=args.out, options=options)

    if kind in ("symmetry", "readout-symmetry", "symplecticity", "linear-order"):
        probe = {
            "symmetry": pseudo_symmetry_degree,
            "readout-symmetry": readout_symmetry_degree,
            "symplecticity": pseudo_symplecticity_degree,
            "linear-order": linear_order_degree,
        }[kind]
        report = probe(spec, args.degree)
        options.update(degree=args.degree, first_degree=report.first_degree, saturated=report.saturated)
        rows = list(zip(report.grid, report.defects))
        return render_csv(config.header_items(), ["degree", "defect"], rows), EXIT_OK

    if kind == "stability":
        report = stability_limit(spec)
        options.update(scan_step=report.scan_step, bisection_tol=report.bisection_tol)
        rows = [[report.method, report.stages, report.h_t, report.h_t_per_stage, report.unbounded]]
        return render_csv(config.header_items(), ["method", "stages", "h_t", "h_t_per_stage", "unbounded"], rows), EXIT_OK

    if kind == "elbow":
        model = effective_error_terms(spec.set)
        basic = basic_error_model()
        options.update(e_lo=model.e_lo, e_hi=model.e_hi, elbow=model.elbow)
        start, stop, count = args.h_grid or (0.01, 10.0, 50)
        grid = geometric_grid(float(start), float(stop), int(count))
        rows = [[h, effective_error_curve(model, h), effective_error_curve(basic, h)] for h in grid]
        return render_csv(config.header_items(), ["h", "effective_error", "basic_error"], rows), EXIT_OK

    # trajectory-based probes
    config.problem = args.problem
    config.problem_params = _problem_params(args)
    system = build_system(args.problem, config.problem_params)
    x0 = system.initial_state()
    if kind == "order" and args.problem != "oracle":
        t_final = parse_time(args.tf or "10")
        config.t_final = t_final
        grid = _h_values(args, t_final, PROBE_GRID)
        report = convergence_order(system, spec, grid, t_final, x0)
    else:
        grid = _h_values(args, None, PROBE_GRID)
        if kind == "order":
            report = local_error_order(system, spec, grid, x0)
        else:
            report = nonlinear_symmetry_probe(system, spec, grid, x0)
    config.h_grid = tuple(args.h_grid) if args.h_grid else None
    options.update(slope=report.slope, discarded=report.discarded, insufficient_signal=report.insufficient_signal)
    rows = list(zip(report.grid, report.defects))
    return render_csv(config.header_items(), ["h", "defect"], rows), EXIT_OK


# bench


def _bench_grid(args: argparse.Namespace, stages: int, t_final: float) -> List[float]:
    if args.costs:
        # equal base-step evaluations across methods
        counts = [max(1, int(round(float(c) / stages))) for c in args.costs.split(",")]
        return [t_final / n for n in counts]
    if args.steps:
        return [t_final / int(n) for n in args.steps.split(",")]
    return _h_values(args, t_final)


def _sampling(h: float, sample_dt: Optional[float]) -> Tuple[float, int]:
    if sample_dt is None:
        return h, 1
    per_sample = max(1, int(round(sample_dt / h)))
    return sample_dt / per_sample, per_sample


def cmd_bench(args: argparse.Namespace) -> CommandResult:
    specs = resolve_methods(args.methods, args.projection)
    t_final = parse_time(args.tf or DEFAULT_FINAL_TIMES[args.problem])
    sample_dt = parse_time(args.sample_dt) if args.sample_dt else None
    params = _problem_params(args)
    system = build_system(args.problem, params)
    x0 = system.initial_state()

    mode = "trajectory" if args.trajectory else ("drift" if args.drift else "work_precision")
    config = RunConfig(
        subcommand="bench",
        methods=[s.name for s in specs],
        problem=args.problem,
        problem_params=params,
        h_grid=tuple(args.h_grid) if args.h_grid else None,
        h=args.h,
        t_final=t_final,
        sample_every=args.sample_every,
        output=args.out,
        options={"mode": mode, "metric": args.metric, "projection": args.projection,
                 "steps": args.steps, "costs": args.costs, "sample_dt": sample_dt},
    )

    if mode == "trajectory":
        if len(specs) != 1:
            raise DomainError("--trajectory takes exactly one method")
        h, stride = _sampling(_bench_grid(args, specs[0].stages, t_final)[0], sample_dt)
        stride = stride if sample_dt else args.sample_every
        trajectory = integrate(system, specs[0], h, t_final, x0, stride)
        text = render_csv(config.header_items(), trajectory_header(system.dim), trajectory_rows(trajectory))
        if trajectory.error is not None:
            logger.error(f"trajectory stopped early: {trajectory.error}")
            return text, EXIT_NUMERICAL
        return text, EXIT_OK

    rows = []
    for spec in specs:
        for h in _bench_grid(args, spec.stages, t_final):
            h, stride = _sampling(h, sample_dt)
            stride = stride if sample_dt else args.sample_every
            if mode == "drift":
                stats = energy_drift(system, spec, h, t_final, stride, x0)
                rows.append([stats.method, stats.h, stats.t_final, stats.first_decile_max, stats.last_decile_max,
                             stats.trend, stats.envelope_noise, stats.samples])
            else:
                for row in work_precision(system, [spec], [h], t_final, args.metric, stride, x0):
                    rows.append([row.method, row.h, row.steps, row.cost, row.metric, row.value])

    if mode == "drift":
        columns = ["method", "h", "t_final", "first_decile_max", "last_decile_max", "trend", "envelope_noise", "samples"]
    else:
        columns = ["method", "h", "steps", "cost", "metric", "value"]
    return render_csv(config.header_items(), columns, rows), EXIT_OK


# search


def cmd_search(args: argparse.Namespace) -> CommandResult:
    problem = SearchProblem(stages=args.stages, target_order=args.order, seed=args.seed, box=args.box, max_starts=args.starts)
    solutions = multistart_search(problem)
    config = RunConfig(
        subcommand="search",
        seed=args.seed,
        output=args.out,
        options={"stages": args.stages, "order": args.order, "starts": args.starts, "box": args.box,
                 "solutions": len(solutions)},
    )
    rows = []
    for rank, solution in enumerate(solutions, start=1):
        path = None
        if args.export:
            path = write_coefficient_file(solution.set, os.path.join(args.export, f"{solution.set.name}.txt"))
        first = solution.set.alphas[0]
        rows.append([rank, solution.set.name, solution.one_norm, solution.leading_error, solution.residual,
                     first.real, first.imag, path])
    if not solutions:
        logger.warning("search found no admissible solution")
    columns = ["rank", "name", "one_norm", "leading_error", "residual", "alpha1_re", "alpha1_im", "file"]
    return render_csv(config.header_items(), columns, rows), EXIT_OK


def _add_problem_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--e", type=float, default=None, help="Kepler eccentricity (default 0.6)")
    parser.add_argument("--alpha", type=float, default=None, help="pendulum initial momentum (default 0.5)")
    parser.add_argument("--q0", type=float, default=None, help="oscillator initial position (default 2.5)")
    parser.add_argument("--p0", type=float, default=None, help="oscillator initial momentum (default 0)")
    parser.add_argument("--seed", type=int, default=None, help="oracle seed")
    parser.add_argument("--dim", type=int, default=None, help="oracle dimension (2..6)")
    parser.add_argument("--norm", type=float, default=None, help="oracle generator spectral norm (default 1)")
    parser.add_argument("--tf", default=None, help="final time, e.g. 650 or 200pi")
    parser.add_argument("--h", type=float, default=None, help="single step size")
    parser.add_argument("--h-grid", nargs=3, type=float, metavar=("START", "STOP", "COUNT"), default=None,
                        help="geometric grid of step sizes")


def _output_options(default) -> argparse.ArgumentParser:
    """--out and --log-level, accepted before or after the subcommand."""
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument("--out", default=default, help="write the CSV here instead of stdout")
    options.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=default,
                         help="logging level for this run")
    return options


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="complexcompose",
        description="Symmetric-conjugate and palindromic complex composition integrators",
        parents=[_output_options(None)],
    )
    # SUPPRESS keeps a value given before the subcommand
    common = _output_options(argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="list the bundled coefficient sets")
    p.add_argument("--verify", action="store_true", help="append the largest order-condition residual")
    p.add_argument("--export", default=None, metavar="DIR", help="write one coefficient file per set")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", parents=[common], help="check a method's order conditions and symmetry")
    p.add_argument("method", help="catalog name or coefficient file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("probe", parents=[common], help="measure degrees, slopes, stability or the error model")
    p.add_argument("kind", choices=PROBE_KINDS)
    p.add_argument("method", help="catalog name or coefficient file")
    p.add_argument("--degree", type=int, default=DEFAULT_POLY_DEGREE, help="polynomial truncation degree")
    p.add_argument("--projection", default=Projection.PER_STEP.value, choices=[x.value for x in Projection])
    p.add_argument("--problem", default="ho", choices=PROBLEMS)
    _add_problem_options(p)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("bench", parents=[common], help="work-precision, drift or trajectory tables")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("--methods", default="SC5,SC9,SC11", help="comma-separated names or files")
    p.add_argument("--projection", default=Projection.PER_STEP.value, choices=[x.value for x in Projection])
    p.add_argument("--metric", default="max_rel_energy", choices=METRICS)
    p.add_argument("--steps", default=None, help="comma-separated step counts")
    p.add_argument("--costs", default=None, help="comma-separated base-step evaluation counts, shared by all methods")
    p.add_argument("--sample-every", type=int, default=1, help="sampling stride in steps")
    p.add_argument("--sample-dt", default=None, help="sampling interval in time, e.g. 2pi")
    p.add_argument("--drift", action="store_true", help="emit energy-drift statistics")
    p.add_argument("--trajectory", action="store_true", help="emit the sampled trajectory of one method")
    _add_problem_options(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("search", parents=[common], help="multistart Newton search for symmetric-conjugate sets")
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--starts", type=int, default=DEFAULT_SEARCH_STARTS)
    p.add_argument("--box", type=float, default=DEFAULT_SEARCH_BOX)
    p.add_argument("--export", default=None, metavar="DIR", help="write ranked solutions as coefficient files")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """Parse arguments, run one command and return its exit code."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_PARAMETER

    if args.log_level:
        logging.getLogger().setLevel(args.log_level)

    try:
        text, status = args.func(args)
    except (DomainError, CoefficientFileError, UnknownMethodError) as e:
        logger.error(f"parameter error: {e}")
        return EXIT_PARAMETER
    except ValidationError as e:
        logger.error(f"validation failed: {e}")
        return EXIT_VERIFICATION
    except (IntegrationError, ConvergenceError) as e:
        logger.error(f"numerical error: {e}")
        return EXIT_NUMERICAL
    except Exception:
        logger.exception(f"unexpected failure in '{args.command}'")
        raise

    emit(text, args.out, stdout)
    return status
