"""
Command-line surface of the toolkit.

Subcommands:
- expand: coefficients, inverse and logarithmic coefficients and every functional of one member
- evaluate: a single functional of one member
- certify: objective certification, extremal attainment and the discrepancy ledger
- sample: randomized no-violation campaigns
"""

import argparse
import logging
import sys
from typing import Any, List, Optional, Sequence, Tuple

from config import (LOG_FORMAT, DEFAULT_LOG_LEVEL, OUTPUT_FORMATS, SCALAR_MODES,
                    EXIT_OK, EXIT_FAILURE, EXIT_USAGE, WORKER_BACKENDS)
from coefficients.class_ids import ClassId
from coefficients.classes import coeffs_from_schwarz
from coefficients.functionals import (inverse_coeffs, log_coeffs, log_inverse_coeffs,
                                      h23_inverse_residual, get_functional,
                                      FUNCTIONALS)
from coefficients.schwarz import SchwarzCoeffs, validate_schwarz
from systems.certify import certify_all
from systems.harness import (STATUS_FAIL, check_extremals, discrepancy_ledger, run_campaign,
                             explore_true_h23, bounded_functionals)
from systems.performance_manager import PerformanceManager
from systems.report_manager import ReportManager
from systems.run_settings import RunConfig, build_run_config, LOG_LEVELS
from utils.errors import UsageError
from utils.rationals import parse_rational

logger = logging.getLogger(__name__)

W_EXAMPLE = "--w z | --w z2 | --w 1/2,1/2,0,0"


def parse_w_spec(text: str, mode: str = "exact") -> SchwarzCoeffs:
    """'z', 'z2' or four comma-separated coefficients c1,c2,c3,c4"""
    spec = text.strip().lower()
    if spec == "z":
        return SchwarzCoeffs(1, 0, 0, 0)
    if spec in ("z2", "z^2"):
        return SchwarzCoeffs(0, 1, 0, 0)

    parts = [part.strip() for part in spec.split(",")]
    if len(parts) != 4 or not all(parts):
        raise UsageError(f"malformed Schwarz coefficients {text!r}", example=W_EXAMPLE)
    if mode == "exact":
        return SchwarzCoeffs(*(parse_rational(part) for part in parts))
    try:
        return SchwarzCoeffs(*(complex(part) for part in parts))
    except ValueError as e:
        raise UsageError(f"malformed Schwarz coefficients {text!r}", example=W_EXAMPLE) from e


def configure_logging(level: str = DEFAULT_LOG_LEVEL) -> None:
    """Log to stderr so that reports on stdout stay byte-stable"""
    logging.basicConfig(level=getattr(logging, level), format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(getattr(logging, level))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sakaguchi",
        description="Coefficient-bound verification for the Sakaguchi classes SSe and SSL")
    parser.add_argument("--log-level", choices=LOG_LEVELS, default=DEFAULT_LOG_LEVEL)
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_output(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--output", choices=OUTPUT_FORMATS, default=None)
        sub.add_argument("--out", dest="out_path", default=None, help="report file (default stdout)")

    expand = subparsers.add_parser("expand", help="expand one class member")
    expand.add_argument("--class", dest="class_name", required=True)
    expand.add_argument("--w", dest="w_spec", required=True, help=W_EXAMPLE)
    expand.add_argument("--mode", choices=SCALAR_MODES, default=None)
    add_output(expand)

    evaluate = subparsers.add_parser("evaluate", help="evaluate one functional")
    evaluate.add_argument("--class", dest="class_name", required=True)
    evaluate.add_argument("--functional", required=True)
    evaluate.add_argument("--c", dest="w_spec", required=True, help="c1,c2,c3,c4")
    evaluate.add_argument("--mode", choices=SCALAR_MODES, default=None)
    add_output(evaluate)

    certify = subparsers.add_parser("certify", help="certify every claimed extremum")
    certify.add_argument("--grid", type=int, default=None)
    certify.add_argument("--refine-iters", dest="refine_iters", type=int, default=None)
    certify.add_argument("--tol", type=float, default=None)
    add_output(certify)

    sample = subparsers.add_parser("sample", help="run a sampling campaign")
    sample.add_argument("--class", dest="class_name", required=True)
    sample.add_argument("--functional", default=None, help="functional id or 'all'")
    sample.add_argument("--trials", type=int, default=None)
    sample.add_argument("--seed", type=int, default=None)
    sample.add_argument("--threads", type=int, default=None)
    sample.add_argument("--workers", choices=WORKER_BACKENDS, default=None)
    sample.add_argument("--sampler", default=None, help="blaschke_mix or herglotz_mix")
    sample.add_argument("--explore-true-h23", dest="explore_true_h23", action="store_true")
    add_output(sample)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides = {key: value for key, value in vars(args).items()
                 if key not in ("command", "class_name", "w_spec")}
    if getattr(args, "class_name", None) is not None:
        overrides["class_id"] = ClassId.parse(args.class_name)
    return build_run_config(**overrides)


# ============================================================================
# COMMANDS
# ============================================================================


def _member(config: RunConfig, w_spec: str):
    c = parse_w_spec(w_spec, config.mode)
    if config.mode == "float":
        c = SchwarzCoeffs(*(complex(v) for v in c.as_tuple()))
    verdict = validate_schwarz(c)
    if not verdict.passed:
        for name, slack in verdict.violations:
            logger.warning(f"w violates {name} (slack {slack:.3g}); not a Schwarz function")
    return c, coeffs_from_schwarz(config.class_id, c), verdict.passed


def cmd_expand(config: RunConfig, w_spec: str) -> Tuple[int, str]:
    c, a, feasible = _member(config, w_spec)
    A = inverse_coeffs(a)
    gamma = log_coeffs(a)
    Gamma = log_inverse_coeffs(A)

    values = [(key, definition.evaluate(a)) for key, definition in FUNCTIONALS.items()]
    values.append(("h23_residual", h23_inverse_residual(a)))

    header = {"class": config.class_id.value, "mode": config.mode, "w": w_spec,
              "schwarz_feasible": "yes" if feasible else "no"}
    sections: List[Tuple[str, Sequence[Tuple[str, Any]]]] = [
        ("schwarz", list(zip(("c1", "c2", "c3", "c4"), c.as_tuple()))),
        ("coefficients", list(zip(("a2", "a3", "a4", "a5"), a.as_tuple()))),
        ("inverse", list(zip(("A2", "A3", "A4", "A5"), A.as_tuple()))),
        ("log", list(zip(("gamma1", "gamma2", "gamma3"), gamma.as_tuple()))),
        ("log_inverse", list(zip(("Gamma1", "Gamma2", "Gamma3"), Gamma.as_tuple()))),
        ("functionals", values),
    ]
    text = ReportManager(config.output).render_expansion(header, sections)
    return EXIT_OK, text


def cmd_evaluate(config: RunConfig, w_spec: str) -> Tuple[int, str]:
    definition = get_functional(config.functional)
    _, a, feasible = _member(config, w_spec)
    header = {"class": config.class_id.value, "mode": config.mode, "c": w_spec,
              "schwarz_feasible": "yes" if feasible else "no"}
    sections = [("value", [(definition.key, definition.evaluate(a))])]
    return EXIT_OK, ReportManager(config.output).render_expansion(header, sections)


def cmd_certify(config: RunConfig) -> Tuple[int, str]:
    manager = PerformanceManager(config.threads, backend=config.workers)
    reports = certify_all(config.grid, config.refine_iters, config.tol, manager)
    with manager.timed("extremals"):
        reports.extend(check_extremals())
    reports.extend(discrepancy_ledger())
    manager.log_summary()

    text = ReportManager(config.output).render_bound_reports(reports)
    failed = any(report.status == STATUS_FAIL for report in reports)
    return (EXIT_FAILURE if failed else EXIT_OK), text


def cmd_sample(config: RunConfig) -> Tuple[int, str]:
    if config.functional == "all":
        functionals = bounded_functionals(config.class_id)
    else:
        functionals = [config.functional]

    manager = PerformanceManager(config.threads, backend=config.workers)
    stats = run_campaign(config.class_id, functionals, config.trials, config.seed,
                         config.sampler, manager)
    if config.explore_true_h23:
        stats.append(explore_true_h23(config.class_id, config.trials, config.seed, manager))
    manager.log_summary()

    text = ReportManager(config.output).render_trial_stats(stats)
    failed = any(entry.status == STATUS_FAIL for entry in stats)
    return (EXIT_FAILURE if failed else EXIT_OK), text


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    try:
        config = config_from_args(args)
        if args.command == "expand":
            code, text = cmd_expand(config, args.w_spec)
        elif args.command == "evaluate":
            code, text = cmd_evaluate(config, args.w_spec)
        elif args.command == "certify":
            code, text = cmd_certify(config)
        else:
            code, text = cmd_sample(config)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        if e.example:
            print(f"example: {e.example}", file=sys.stderr)
        return EXIT_USAGE

    if not ReportManager(config.output).write(text, config.out_path):
        return EXIT_FAILURE
    return code
