"""Command-line front end for the Raman single-photon emission model.

Usage:
    python raman_cli.py compute --scheme rb85 --theta 19.604 --theta-c 19.604 --psi 90
    python raman_cli.py sweep --scheme cs133 --axis theta --min 0 --max 30 --step 0.1 --psi 90 --lock-areas
    python raman_cli.py sweep --scheme rb85 --axis psi --min 0 --max 180 --step 1 --theta 19.604 --theta-c 19.604
    python raman_cli.py optimize --scheme rb85 --psi 90 --min 10 --max 30
    python raman_cli.py compute --Fa 2 --Fpa 3 --I 5/2 --Ja 1/2 --Jb 3/2 --theta 5 --theta-c 5 --psi 60 --oracle

Exit codes: 0 ok, 2 bad arguments or inputs that cannot be evaluated, 3 bad level scheme,
4 oracle disagreement.
"""
from __future__ import annotations

import argparse
import io
import logging
import math
import sys

import numpy as np

import config
from raman.angular import HalfInt, HalfIntError
from raman.scheme import LevelScheme, SchemeError, validate
from raman.sweep import (
    OracleMismatchError,
    check_oracle,
    evaluate,
    optimize,
    sweep,
    write_csv,
    write_json,
    write_report,
)
from values_main import EXIT_ARGUMENT_ERROR, EXIT_OK, EXIT_ORACLE_MISMATCH, EXIT_SCHEME_ERROR, SCHEME_PRESETS

logger = logging.getLogger("raman_cli")


def half_int(text: str) -> HalfInt:
    try:
        return HalfInt.parse(text)
    except HalfIntError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return value


def _add_common(parser: argparse.ArgumentParser) -> None:
    scheme = parser.add_argument_group("level scheme")
    scheme.add_argument("--scheme", choices=sorted(SCHEME_PRESETS), help="Named preset")
    scheme.add_argument("--Fa", type=half_int, help="Laser-coupled ground component F_a")
    scheme.add_argument("--Fpa", type=half_int, help="Cavity-coupled ground component F'_a")
    scheme.add_argument("--I", type=half_int, help="Nuclear spin")
    scheme.add_argument("--Ja", type=half_int, help="Ground electronic momentum")
    scheme.add_argument("--Jb", type=half_int, help="Excited electronic momentum")

    parser.add_argument("--theta", type=finite_float, default=None, help="Vacuum Rabi angle")
    parser.add_argument("--theta-c", dest="theta_c", type=finite_float, default=None, help="Laser pulse area")
    parser.add_argument("--lock-areas", action="store_true", help="Hold theta_c equal to theta")
    parser.add_argument("--psi", type=finite_float, default=90.0, help="Angle between polarizations, degrees")
    parser.add_argument("--format", choices=("csv", "json"), default=None)
    parser.add_argument("--oracle", action="store_true", help="Cross-check every value against the Fock-space oracle")
    parser.add_argument("--out", default=None, help="Output file (default: standard output)")
    parser.add_argument("--log-level", default=None, help="Logging level (default from config)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Single-photon emission probability via cavity Raman scattering")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="Evaluate w at one point")
    _add_common(compute)
    compute.add_argument("--reverse", action="store_true",
                         help="Evaluate with F_a and F'_a exchanged (theta <-> theta_c, l <-> l_c)")

    sweep_p = sub.add_parser("sweep", help="Evaluate w along theta or psi")
    _add_common(sweep_p)
    sweep_p.add_argument("--axis", choices=("theta", "psi"), required=True)
    sweep_p.add_argument("--min", dest="lo", type=finite_float, required=True)
    sweep_p.add_argument("--max", dest="hi", type=finite_float, required=True)
    sweep_p.add_argument("--step", type=finite_float, required=True)
    sweep_p.add_argument("--workers", type=int, default=None, help="Thread pool size (default from config)")

    opt = sub.add_parser("optimize", help="Maximize w over theta (theta = theta_c) or psi")
    _add_common(opt)
    opt.add_argument("--axis", choices=("theta", "psi"), default="theta")
    opt.add_argument("--min", dest="lo", type=finite_float, required=True)
    opt.add_argument("--max", dest="hi", type=finite_float, required=True)
    opt.add_argument("--grid-step", type=finite_float, default=None)
    opt.add_argument("--tolerance", type=finite_float, default=None)
    return parser


def resolve_scheme(args: argparse.Namespace, parser: argparse.ArgumentParser) -> LevelScheme:
    explicit = [args.Fa, args.Fpa, args.I, args.Ja, args.Jb]
    if args.scheme and any(v is not None for v in explicit):
        parser.error("--scheme cannot be combined with --Fa/--Fpa/--I/--Ja/--Jb")
    if args.scheme:
        scheme = LevelScheme.preset(args.scheme)
    elif all(v is not None for v in explicit):
        scheme = LevelScheme(*explicit)
    else:
        parser.error("give --scheme or all of --Fa --Fpa --I --Ja --Jb")
    validate(scheme)
    return scheme


def _angles(args: argparse.Namespace, parser: argparse.ArgumentParser, need: bool) -> tuple[float, float]:
    theta, theta_c = args.theta, args.theta_c
    if args.lock_areas:
        theta_c = theta if theta is not None else theta_c
        theta = theta_c
    if need and (theta is None or theta_c is None):
        parser.error("--theta and --theta-c are required (or one of them with --lock-areas)")
    for name, value in (("--theta", theta), ("--theta-c", theta_c)):
        if value is not None and value < 0:
            parser.error(f"{name} must be non-negative")
    return theta, theta_c


def _emit(records, args, fmt: str, out) -> None:
    if args.oracle:
        records = check_oracle(records)
    if fmt == "json":
        write_json(records, out)
    else:
        write_csv(records, out)


def run(args: argparse.Namespace, parser: argparse.ArgumentParser, out) -> int:
    scheme = resolve_scheme(args, parser)
    fmt = args.format or config.OUTPUT_FORMAT

    if args.command == "compute":
        theta, theta_c = _angles(args, parser, need=True)
        record = evaluate(scheme, theta, theta_c, args.psi, oracle=args.oracle, reverse=args.reverse)
        _emit([record], args, fmt, out)
        if args.oracle and fmt == "csv":
            print(f"oracle_w={record.oracle_w:.10g} abs_diff={record.oracle_diff:.3e}", file=sys.stderr)
        return EXIT_OK

    if args.command == "sweep":
        if args.hi <= args.lo:
            parser.error("--max must exceed --min")
        if args.step <= 0:
            parser.error("--step must be positive")
        if args.axis == "theta":
            theta, theta_c = args.theta, args.theta_c
            if not args.lock_areas and theta_c is None:
                parser.error("theta sweeps need --theta-c or --lock-areas")
            theta_c = 0.0 if theta_c is None else theta_c
            records = sweep(scheme, "theta", args.lo, args.hi, args.step, theta_c=theta_c, psi_deg=args.psi,
                            lock_areas=args.lock_areas, oracle=args.oracle, workers=args.workers)
        else:
            theta, theta_c = _angles(args, parser, need=True)
            records = sweep(scheme, "psi", args.lo, args.hi, args.step, theta=theta, theta_c=theta_c,
                            oracle=args.oracle, workers=args.workers)
        _emit(records, args, fmt, out)
        return EXIT_OK

    if args.hi < args.lo:
        parser.error("--max must not be below --min")
    if args.axis == "theta":
        theta_c = None if args.lock_areas else args.theta_c
        report = optimize(scheme, args.lo, args.hi, axis="theta", psi_deg=args.psi, theta_c=theta_c,
                          grid_step=args.grid_step, tol=args.tolerance)
        if args.oracle:
            tc = report.theta_star if theta_c is None else theta_c
            check_oracle([evaluate(scheme, report.theta_star, tc, args.psi, oracle=True)])
    else:
        theta, theta_c = _angles(args, parser, need=True)
        report = optimize(scheme, args.lo, args.hi, axis="psi", theta=theta, theta_c=theta_c,
                          grid_step=args.grid_step, tol=args.tolerance)
        if args.oracle:
            check_oracle([evaluate(scheme, theta, theta_c, report.theta_star, oracle=True)])
    write_report(report, out, fmt)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or config.LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    # --out is written only after run() succeeds
    buffer = io.StringIO()
    try:
        code = run(args, parser, buffer)
    except SchemeError as e:
        print(f"scheme error: {e}", file=sys.stderr)
        return EXIT_SCHEME_ERROR
    except OracleMismatchError as e:
        print(f"oracle self-check failed: {e}", file=sys.stderr)
        return EXIT_ORACLE_MISMATCH
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as e:
        logger.debug("Evaluation failed", exc_info=True)
        print(f"cannot evaluate: {e}", file=sys.stderr)
        return EXIT_ARGUMENT_ERROR

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            f.write(buffer.getvalue())
    else:
        sys.stdout.write(buffer.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
