"""
Command-line front end.

    python app/main.py construct onb --M 5 --N 10 -o w.json
    python app/main.py check onb --windows w.json

Reports are canonical JSON on stdout (or in ``-o``); logs go to stderr.
Exit status: 0 affirmative, 1 negative, 2 bad input.
"""
import argparse
import logging
import sys
import os

# Add the project root to the path so imports work correctly
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.constructors import build_from_catalog, build_onb, build_parseval, onb_check
from models.duality import dual_check, reconstruction_check
from models.frame_analysis import (
    analyze_frame,
    bessel_report,
    parseval_check,
    parseval_necessary,
    row_diagnostics,
)
from models.gabor_ops import analysis_coefficients
from models.matrix_fn import aggregate_truncated
from models.stability import stability_verdict
from models.verification_suite import VerificationSuite
from utils.config import get_log_level, resolve_tolerance
from utils.errors import QGaborError, UsageError
from utils.report_helpers import coefficient_csv, diagnostics_summary
from utils.serialization import dump_json, family_to_dict, load_family, load_signal

logger = logging.getLogger(__name__)


def _pair(text: str):
    try:
        k1, k2 = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers like 0,1 got {text!r}")
    return k1, k2


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="absolute tolerance for every criterion (default: QGABOR_TOL or 1e-9)")
    common.add_argument("--seed", type=int, default=None, help="seed for every randomized check")
    common.add_argument("--trials", type=int, default=None, help="number of random trials")
    common.add_argument("-o", "--output", default=None, help="write the JSON result here instead of stdout")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="qgabor", description="Quaternionic multi-window Gabor frame analyzer")
    commands = parser.add_subparsers(dest="command", required=True)

    construct = commands.add_parser("construct", parents=[common], help="build a window family")
    construct.add_argument("kind", choices=["parseval", "onb", "catalog"])
    construct.add_argument("--L", type=int)
    construct.add_argument("--M", type=int)
    construct.add_argument("--N", type=int)
    construct.add_argument("--name", help="catalog entry (construct catalog)")

    check = commands.add_parser("check", parents=[common], help="decide a frame property")
    check.add_argument("property", choices=["frame", "bessel", "parseval", "onb", "dual"])
    check.add_argument("-w", "--windows", help="window family JSON")
    check.add_argument("--g", help="first family (check dual)")
    check.add_argument("--h", help="second family (check dual)")
    check.add_argument("--radius", type=int, default=None, help="starting truncation radius")

    analyze = commands.add_parser("analyze", parents=[common], help="analysis coefficients of a signal")
    analyze.add_argument("-w", "--windows", required=True)
    analyze.add_argument("--signal", required=True, help="signal JSON with an 'entries' list")
    analyze.add_argument("--format", choices=["json", "csv"], default="json")

    matrix = commands.add_parser("matrix", parents=[common], help="dump a truncated aggregate matrix")
    matrix.add_argument("-w", "--windows", required=True)
    matrix.add_argument("--k", type=_pair, default=(0, 0))
    matrix.add_argument("--radius", type=int, default=1)

    stability = commands.add_parser("stability", parents=[common], help="perturbation stability of G -> H")
    stability.add_argument("--g", required=True)
    stability.add_argument("--h", required=True)
    stability.add_argument("--A", type=float, default=None)
    stability.add_argument("--B", type=float, default=None)

    verify = commands.add_parser("verify", parents=[common], help="run the oracle battery")
    verify.add_argument("-w", "--windows", required=True)
    return parser


def _require(args, *names):
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError(f"{args.command} {getattr(args, 'kind', '') or getattr(args, 'property', '')} "
                         f"needs {', '.join('--' + n for n in missing)}")


def _construct(args):
    if args.kind == "parseval":
        _require(args, "L", "M", "N")
        family = build_parseval(args.L, args.M, args.N)
    elif args.kind == "onb":
        _require(args, "M", "N")
        family = build_onb(args.M, args.N)
    else:
        _require(args, "name")
        family = build_from_catalog(args.name)
    return family_to_dict(family), 0


def _check(args, tol):
    if args.property == "dual":
        _require(args, "g", "h")
        G, H = load_family(args.g), load_family(args.h)
        report = dual_check(G, H, tol)
        report["reconstruction"] = reconstruction_check(G, H, trials=args.trials, seed=args.seed, tol=tol)
        return report, 0 if report["holds"] else 1

    _require(args, "windows")
    W = load_family(args.windows)
    if args.property == "frame":
        report = analyze_frame(W, radius=args.radius, tol=tol).to_dict()
        if "rows" in report["diagnostics"]:
            report["diagnostics"]["summary"] = diagnostics_summary(report["diagnostics"]["rows"], W.M)
        return report, 0 if report["verdict"] == "frame" else 1
    if args.property == "bessel":
        report = bessel_report(W, tol).to_dict()
        report["diagnostics"]["summary"] = diagnostics_summary(row_diagnostics(W), W.M)
        return report, 0
    if args.property == "parseval":
        report = parseval_check(W, tol)
        report["necessary"] = parseval_necessary(W, tol)
        return report, 0 if report["holds"] else 1
    report = onb_check(W, tol, seed=args.seed)
    return report, 0 if report["holds"] else 1


def _analyze(args):
    W = load_family(args.windows)
    h = load_signal(args.signal)
    rows = list(analysis_coefficients(W, h))
    if args.format == "csv":
        return coefficient_csv(rows), 0
    return {"params": W.params.to_dict(), "coefficients": rows}, 0


def _matrix(args):
    W = load_family(args.windows)
    matrix = aggregate_truncated(W, args.k, args.radius)
    report = matrix.to_dict()
    low, high = matrix.eigenvalue_range()
    report["eigenvalue_range"] = [low, high]
    return report, 0


def _stability(args):
    G, H = load_family(args.g), load_family(args.h)
    report = stability_verdict(G, H, A=args.A, B=args.B)
    return report.to_dict(), 0 if report.applicable else 1


def _verify(args, tol):
    W = load_family(args.windows)
    report = VerificationSuite(W, trials=args.trials, seed=args.seed, tol=tol).run()
    return report, 0 if report["passed"] else 1


def _emit(result, output):
    text = result if isinstance(result, str) else dump_json(result)
    if output:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        logging.basicConfig(
            level=(args.log_level or get_log_level()).upper(),
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )
        tol = resolve_tolerance(args.tol)
        if args.command == "construct":
            result, code = _construct(args)
        elif args.command == "check":
            result, code = _check(args, tol)
        elif args.command == "analyze":
            result, code = _analyze(args)
        elif args.command == "matrix":
            result, code = _matrix(args)
        elif args.command == "stability":
            result, code = _stability(args)
        else:
            result, code = _verify(args, tol)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except QGaborError as exc:
        logger.error("internal consistency failure: %s", exc)
        return 1
    _emit(result, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
