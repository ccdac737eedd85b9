"""Command-line front end.

Exit codes: 0 success, 1 a verification check FAILed, 2 usage error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

from . import series as ser
from .linalg import format_rational
from .ihara import evaluate_bracket, generator_product, left_normed
from .poly import composition_label, enumerate_compositions, format_poly
from .period import period_space
from .tasaka import build_C, build_E, build_E_power, w_space
from .verifier import (
    CONJECTURE_VIOLATED,
    SUITES,
    bk_table,
    bk_table_csv,
    has_failures,
    run_suites,
    status_counts,
    to_csv,
    to_json,
    violations,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    max_weight: int | None = None
    max_depth: int = 4
    output_format: str = "json"
    output_path: str | None = None
    suites: tuple[str, ...] = SUITES

    def validate(self) -> "Config":
        if self.max_weight is not None and self.max_weight < 3:
            raise UsageError("max_weight must be >= 3")
        if self.max_depth < 1:
            raise UsageError("max_depth must be >= 1")
        if self.output_format not in ("json", "csv"):
            raise UsageError(f"output format must be json or csv, got {self.output_format!r}")
        for s in self.suites:
            if s not in SUITES:
                raise UsageError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
        return self


_CONFIG_KEYS = {"max_weight", "max_depth", "output_format", "output_path", "suites"}


def _parse_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{key} must be an integer, got {raw!r}") from None


def _split_suites(raw: str) -> tuple[str, ...]:
    return tuple(s.strip() for s in raw.split(",") if s.strip())


def read_config(path: str) -> dict:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    text = Path(path).read_text(encoding="utf-8")
    out: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        if key in ("max_weight", "max_depth"):
            out[key] = _parse_int(key, value)
        elif key == "suites":
            out[key] = _split_suites(value)
        else:
            out[key] = value
    return out


def build_config(args: argparse.Namespace) -> Config:
    cfg = Config()
    if args.config:
        cfg = replace(cfg, **read_config(args.config))
    flags = {
        "max_weight": args.max_weight,
        "max_depth": args.max_depth,
        "output_format": args.format,
        "output_path": args.out,
        "suites": tuple(s for group in args.suite for s in _split_suites(group)) if args.suite else None,
    }
    cfg = replace(cfg, **{k: v for k, v in flags.items() if v is not None})
    return cfg.validate()


def emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")


# --- subcommands ------------------------------------------------------------------

def cmd_period(args) -> int:
    if args.weight < 1:
        raise UsageError("weight must be positive")
    basis = period_space(args.weight)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "s", "t", "coefficient"])
    for k, p in enumerate(basis):
        for (s, t), c in p.coefficients.items():
            w.writerow([k, s, t, format_rational(c)])
    emit(buf.getvalue(), args.out)
    return EXIT_OK


def _matrix_for(kind: str, weight: int, depth: int):
    if weight < 1 or depth < 1:
        raise UsageError("weight and depth must be positive")
    if kind == "E":
        return build_E(weight, depth)
    if kind == "C":
        return build_C(weight, depth)
    if kind.startswith("E") and kind[1:].isdigit():
        k = int(kind[1:])
        if not 2 <= k <= depth:
            raise UsageError(f"E<k> needs 2 <= k <= depth, got k={k}, depth={depth}")
        return build_E_power(weight, depth, k)
    raise UsageError(f"unknown matrix kind {kind!r}; expected E, E<k> or C")


def cmd_matrix(args) -> int:
    tm = _matrix_for(args.kind, args.weight, args.depth)
    labels = [composition_label(c) for c in tm.ordering]
    emit(tm.matrix.to_csv(labels), args.out)
    return EXIT_OK


def cmd_wspace(args) -> int:
    if args.depth < 2:
        raise UsageError("wspace needs depth >= 2")
    if args.weight < 1:
        raise UsageError("weight must be positive")
    ws = w_space(args.weight, args.depth)
    labels = [composition_label(c) for c in enumerate_compositions(args.weight, args.depth)]
    emit(ws.subspace.basis.to_csv(labels), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = build_config(args)
    results = run_suites(cfg.suites, cfg.max_weight, cfg.max_depth, args.workers)
    text = to_json(results) if cfg.output_format == "json" else to_csv(results)
    emit(text, cfg.output_path)
    counts = status_counts(results)
    print(" ".join(f"{k}={v}" for k, v in counts.items()), file=sys.stderr)
    for r in violations(results):
        print(f"!! {CONJECTURE_VIOLATED}: {r.check_id} N={r.weight} r={r.depth} lhs={r.lhs} rhs={r.rhs}",
              file=sys.stderr)
    return EXIT_FAIL if has_failures(results) else EXIT_OK


def cmd_bk(args) -> int:
    if args.max_weight < 1 or args.max_depth < 1:
        raise UsageError("max weight and max depth must be positive")
    rows, _ = bk_table(args.max_weight, args.max_depth)
    emit(bk_table_csv(rows), args.out)
    return EXIT_OK


_BIVARIATE = {"A": ser.a_series, "BK": ser.bk_series, "UBK": ser.uneven_bk_series}
_UNIVARIATE = {"O": ser.os, "E": ser.es, "S": ser.ss, "TOTAL": ser.total_dimension_series}


def cmd_series(args) -> int:
    name = args.name.upper()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "r", "coefficient"])
    if name in _BIVARIATE:
        s = _BIVARIATE[name](args.max_weight, args.max_depth)
        for n in range(args.max_weight + 1):
            for r in range(args.max_depth + 1):
                w.writerow([n, r, format_rational(s.coefficient(n, r))])
    elif name in _UNIVARIATE:
        s = _UNIVARIATE[name](args.max_weight)
        for n in range(args.max_weight + 1):
            w.writerow([n, "", format_rational(s[n])])
    else:
        raise UsageError(f"unknown series {args.name!r}; choose from {', '.join([*_BIVARIATE, *_UNIVARIATE])}")
    emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_product(args) -> int:
    parts = tuple(args.parts)
    for n in parts:
        if n < 3 or n % 2 == 0:
            raise UsageError(f"generators are odd integers >= 3, got {n}")
    if args.bracket:
        if len(parts) < 2:
            raise UsageError("a bracket needs at least two generators")
        poly = evaluate_bracket(left_normed(parts)).poly
    else:
        poly = generator_product(parts).poly
    emit(format_poly(poly) + "\n", args.out)
    return EXIT_OK


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dgmzv", description="Depth-graded motivic MZV computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def out_flag(sp):
        sp.add_argument("--out", help="write output to this file instead of stdout")

    sp = sub.add_parser("period", help="basis of restricted even period polynomials")
    sp.add_argument("--weight", type=int, required=True)
    out_flag(sp)
    sp.set_defaults(func=cmd_period)

    sp = sub.add_parser("matrix", help="dump a coaction matrix as CSV")
    sp.add_argument("--kind", required=True, help="E, E<k> (2 <= k <= depth) or C")
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--depth", type=int, required=True)
    out_flag(sp)
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("wspace", help="basis of the functional-equation space W")
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--depth", type=int, required=True)
    out_flag(sp)
    sp.set_defaults(func=cmd_wspace)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", action="append", help=f"suite name or comma list ({', '.join(SUITES)}); repeatable")
    sp.add_argument("--max-weight", type=int)
    sp.add_argument("--max-depth", type=int, help="depth range of the bk suite")
    sp.add_argument("--format", choices=["json", "csv"])
    sp.add_argument("--config", help="key=value file; command-line flags take precedence")
    sp.add_argument("--workers", type=int, help="worker processes (default: MZV_MAX_THREADS or CPU count)")
    out_flag(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bk", help="predicted vs computed dimension table")
    sp.add_argument("--max-weight", type=int, default=30)
    sp.add_argument("--max-depth", type=int, default=4)
    out_flag(sp)
    sp.set_defaults(func=cmd_bk)

    sp = sub.add_parser("series", help="coefficient table of a generating series")
    sp.add_argument("--name", required=True, help="A, BK, UBK, O, E, S or TOTAL")
    sp.add_argument("--max-weight", type=int, default=ser.DEFAULT_ORDER_X)
    sp.add_argument("--max-depth", type=int, default=ser.DEFAULT_ORDER_Y)
    out_flag(sp)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("product", help="dump sigma products or brackets as polynomials")
    sp.add_argument("parts", type=int, nargs="+", help="odd generators, e.g. 3 5 7")
    sp.add_argument("--bracket", action="store_true", help="left-nested Ihara bracket instead of the product")
    out_flag(sp)
    sp.set_defaults(func=cmd_product)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"io error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
