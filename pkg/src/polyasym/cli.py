"""Command line: ``polyasym {eval,compare,coeffs,report}``.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .dispatch import COEFF_KINDS, METHODS, coefficient_rows, evaluate, parse_family
from .numeric_core import DEFAULT_PRECISION, MIN_PRECISION, DomainError, format_value, parse_number
from .report import (
    ConfigError,
    compare_rows,
    default_config_text,
    parse_config,
    parse_n_range,
    render,
    run_report,
)
from .series import Flavor

EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 2, 3, 4
PRECISION_ENV = "POLYASYM_PRECISION"


class UsageError(Exception):
    pass


def resolve_precision(flag: int | None, environ=os.environ) -> int:
    """Flag, then $POLYASYM_PRECISION, then the library default."""
    if flag is not None:
        prec = flag
    elif environ.get(PRECISION_ENV):
        try:
            prec = int(environ[PRECISION_ENV])
        except ValueError:
            raise UsageError(f"{PRECISION_ENV} must be an integer number of bits") from None
    else:
        prec = DEFAULT_PRECISION
    if prec < MIN_PRECISION:
        raise UsageError(f"precision must be >= {MIN_PRECISION} bits (got {prec})")
    return prec


def _number(text: str, prec: int):
    try:
        return parse_number(text, prec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _common(p: argparse.ArgumentParser, n: bool = True) -> None:
    p.add_argument("--family", choices=("bernoulli", "euler"), default="bernoulli")
    if n:
        p.add_argument("--n", type=int)
    p.add_argument("--mu", default="1", help="order, e.g. 1/2, -2 or 1.5+0.25i")
    p.add_argument("--z", default="0", help="argument, e.g. 0.3 or 1/3")
    p.add_argument("--precision", type=int, help=f"bits (default ${PRECISION_ENV} or {DEFAULT_PRECISION})")
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")
    p.add_argument("--out", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyasym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one polynomial value")
    p.add_argument("family_pos", nargs="?", choices=("bernoulli", "euler"), metavar="FAMILY")
    _common(p)
    p.add_argument("--method", choices=METHODS, default="oracle")
    p.add_argument("--terms", type=int)

    p = sub.add_parser("compare", help="compare methods against the oracle over a range of n")
    p.add_argument("family_pos", nargs="?", choices=("bernoulli", "euler"), metavar="FAMILY")
    _common(p)
    p.add_argument("--n-range", help="A:B:step, inclusive")
    p.add_argument("--method", default="watson", help="comma separated method names")
    p.add_argument("--terms", type=int)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("coeffs", help="dump expansion coefficients")
    p.add_argument("kind", choices=COEFF_KINDS)
    _common(p, n=False)
    p.add_argument("--terms", type=int, default=3, help="largest k")
    p.add_argument("--flavor", choices=("standard", "tilde"), default="standard")
    p.add_argument("--m", type=int, help="integer order for the residue kinds")
    p.add_argument("--n", type=int, help="degree for the residue kinds")

    p = sub.add_parser("report", help="run a sweep config and write a CSV bundle")
    p.add_argument("config", nargs="?", help="config file (default: the shipped config)")
    p.add_argument("--out", help="output directory (overrides the config)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--print-default-config", action="store_true")
    return parser


def _family(args):
    return parse_family(args.family_pos or args.family)


def cmd_eval(args) -> int:
    prec = resolve_precision(args.precision)
    if args.n is None:
        raise UsageError("eval needs --n")
    mu, z = _number(args.mu, prec), _number(args.z, prec)
    result = evaluate(_family(args), args.n, mu, z, args.method, args.terms, prec)
    row = {k: v for k, v in result.describe().items()}
    row["value"] = format_value(result.value, prec)
    row["error_estimate"] = (str(result.error_estimate) if isinstance(result.error_estimate, int)
                             else format_value(result.error_estimate, prec))
    row["notes"] = "; ".join(result.notes)
    columns = ("value", "method", "terms_used", "error_estimate", "confidence", "notes")
    if args.format == "text":
        text = "".join(f"{c}: {row[c]}\n" for c in columns if row[c] != "" or c != "notes")
    else:
        text = render([row], args.format, columns)
    _emit(text, args.out)
    return 0


def cmd_compare(args) -> int:
    prec = resolve_precision(args.precision)
    if args.n_range:
        try:
            ns = parse_n_range(args.n_range)
        except ConfigError as exc:
            raise UsageError(str(exc)) from None
    elif args.n is not None:
        ns = [args.n]
    else:
        raise UsageError("compare needs --n or --n-range")
    methods = [m.strip() for m in args.method.split(",") if m.strip()]
    bad = [m for m in methods if m not in METHODS]
    if bad:
        raise UsageError(f"unknown methods {bad}; choose from {', '.join(METHODS)}")
    mu, z = _number(args.mu, prec), _number(args.z, prec)
    rows = compare_rows(_family(args), ns, mu, z, methods, args.terms, prec, args.jobs)
    _emit(render(rows, args.format), args.out)
    return 0


def cmd_coeffs(args) -> int:
    prec = resolve_precision(args.precision)
    mu, z = _number(args.mu, prec), _number(args.z, prec)
    flavor = Flavor.STANDARD if args.flavor == "standard" else Flavor.TILDE
    rows = coefficient_rows(args.kind, mu, z, args.terms, prec, flavor, args.m, args.n)
    out_rows = []
    for r in rows:
        v = r["value"]
        out_rows.append({
            "k": str(r["k"]),
            "re": format_value(v.real, prec),
            "im": format_value(v.imag, prec),
            "residual": "" if r["residual"] is None else format_value(r["residual"], prec),
        })
    _emit(render(out_rows, args.format, ("k", "re", "im", "residual")), args.out)
    return 0


def cmd_report(args) -> int:
    if args.print_default_config:
        sys.stdout.write(default_config_text())
        return 0
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise OSError(f"cannot read config {args.config}: {exc.strerror}") from None
    else:
        text = default_config_text()
    try:
        config = parse_config(text)
    except ConfigError as exc:
        raise UsageError(f"malformed config: {exc}") from None
    out = args.out or config.output
    summary = run_report(config, out, jobs=args.jobs, config_text=text)
    print(f"wrote {out}: {summary['sweeps']} sweeps, {summary['rows']} rows, {summary['errors']} error rows")
    return 0


COMMANDS = {"eval": cmd_eval, "compare": cmd_compare, "coeffs": cmd_coeffs, "report": cmd_report}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"polyasym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"polyasym: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"polyasym: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
