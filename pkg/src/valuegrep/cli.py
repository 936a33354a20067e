"""``valuegrep`` command line.

Exit codes: 0 success, 1 nothing found (search/collide), 2 usage or config
error, 3 runtime error (I/O, unmapped symbols, bad table files).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .errors import CapExceededError, ConfigError, UnmappedSymbolError, ValueGrepError
from .harness import (
    default_config,
    format_bench_table,
    parse_config,
    run_benchmarks,
    run_experiment,
)
from .matcher import DEFAULT_ENUMERATION_CAP, DEFAULT_MAX_RESULTS, DEFAULT_TOLERANCE, find_collisions, search
from .scoring import FormulaSpec, pattern_value
from .value_table import ValueTable, default_table, dump_table, load_table

EXIT_OK, EXIT_NO_MATCH, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3
TABLE_ENV = "VALUEGREP_TABLE"


class _Fail(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _formula(text: str) -> str:
    try:
        FormulaSpec.from_equation(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text.lower()


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _tolerance(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value >= 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"tolerance must be finite and >= 0, got {text}")
    return value


def _add_table(p: argparse.ArgumentParser) -> None:
    p.add_argument("--table", help=f"letter-value table file (default: ${TABLE_ENV} or the built-in table)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="valuegrep", description="Letter-value exact pattern search.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{search,collide,experiment,bench,table}")

    p = sub.add_parser("search", help="search a pattern in a file, one text per line")
    p.add_argument("--pattern", required=True)
    p.add_argument("--input", default="-", help="input path, '-' for stdin")
    p.add_argument("--formula", type=_formula, default="eq1", help="eq1..eq8")
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--tolerance", type=_tolerance, default=DEFAULT_TOLERANCE)
    _add_table(p)
    p.add_argument("--no-verify", action="store_true", help="report raw score matches without literal checks")
    p.add_argument("--ignore-case", action="store_true", help="uppercase pattern and input before lookup")
    p.add_argument("--whole-file", action="store_true", help="treat the input as a single text")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("collide", help="find sequences sharing a score")
    p.add_argument("--formula", type=_formula, required=True)
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--alphabet", required=True)
    p.add_argument("--length", type=_positive_int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--budget", type=_positive_int, default=100_000, help="random pairs to draw")
    p.add_argument("--cap", type=_positive_int, default=DEFAULT_ENUMERATION_CAP)
    p.add_argument("--max-results", type=_positive_int, default=DEFAULT_MAX_RESULTS)
    p.add_argument("--tolerance", type=_tolerance, default=DEFAULT_TOLERANCE)
    p.add_argument("--seed", type=int, default=0)
    _add_table(p)

    p = sub.add_parser("experiment", help="run the nested-corpus mismatch experiment")
    p.add_argument("--config", help="key=value config file (default: the shipped config)")
    p.add_argument("--out-csv", required=True)
    p.add_argument("--out-svg", required=True)
    _add_table(p)

    p = sub.add_parser("bench", help="benchmark all algorithms on one text")
    p.add_argument("--text", required=True, help="text path, '-' for stdin; line breaks are removed")
    p.add_argument("--pattern", required=True, action="append")
    p.add_argument("--formula", type=_formula, action="append", help="scoring formula(s), default eq1 and eq5")
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--repeat", type=_positive_int, default=1)
    p.add_argument("--ignore-case", action="store_true")
    _add_table(p)

    p = sub.add_parser("table", help="print or validate a letter-value table")
    _add_table(p)
    p.add_argument("--validate", action="store_true")
    return parser


def _resolve_table(path: str | None) -> ValueTable:
    path = path or os.environ.get(TABLE_ENV)
    if not path:
        return default_table()
    try:
        with open(path, encoding="utf-8") as fh:
            return load_table(fh)
    except OSError as exc:
        raise _Fail(EXIT_RUNTIME, f"cannot read table {path}: {exc.strerror}") from None
    except ValueGrepError as exc:
        raise _Fail(EXIT_RUNTIME, f"invalid table {path}: {exc}") from None


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Fail(EXIT_RUNTIME, f"cannot read {path}: {exc.strerror}") from None


def _cmd_search(args, out) -> int:
    table = _resolve_table(args.table)
    spec = FormulaSpec.from_equation(args.formula, args.k)
    pattern = args.pattern.upper() if args.ignore_case else args.pattern
    text = _read_input(args.input)
    if args.ignore_case:
        text = text.upper()
    try:
        pattern_value(spec, table, pattern)
    except UnmappedSymbolError as exc:
        raise _Fail(EXIT_RUNTIME, f"pattern: {exc}") from None

    if args.whole_file:
        texts = [(None, text)]
    else:
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        texts = [(i, line.rstrip("\r")) for i, line in enumerate(lines, start=1)]

    verify = not args.no_verify
    found: dict[str, list] = {"candidates": [], "confirmed": [], "spurious": []}
    comparisons = 0
    for line_no, chunk in texts:
        if len(chunk) < len(pattern):
            continue
        try:
            report = search(spec, table, chunk, pattern, args.tolerance, verify=verify)
        except UnmappedSymbolError as exc:
            where = f"line {line_no} " if line_no is not None else ""
            raise _Fail(EXIT_RUNTIME, f"unmapped symbol {exc.symbol!r} at {where}offset {exc.offset}") from None
        comparisons += report.comparisons
        for key in found:
            pos = getattr(report, key)
            found[key].extend(pos if line_no is None else [[line_no, j] for j in pos])

    hits = found["confirmed"] if verify else found["candidates"]
    if args.json:
        payload = dict(found)
        payload.update(
            tolerance_used=args.tolerance,
            pattern_value=pattern_value(spec, table, pattern),
            comparisons=comparisons,
            verified=verify,
        )
        out.write(json.dumps(payload) + "\n")
    else:
        for h in hits:
            out.write(f"{h[0]}:{h[1]}\n" if isinstance(h, list) else f"{h}\n")
    return EXIT_OK if hits else EXIT_NO_MATCH


def format_value(value: float) -> str:
    # float noise (e.g. A+2A-3A ~ 4e-15) is printed as the clean decimal
    return f"{round(value, 9) + 0.0:.12g}"


def _cmd_collide(args, out) -> int:
    table = _resolve_table(args.table)
    spec = FormulaSpec.from_equation(args.formula, args.k)
    try:
        witnesses = find_collisions(
            spec,
            table,
            list(args.alphabet),
            args.length,
            mode=args.mode,
            budget=args.budget,
            tolerance=args.tolerance,
            cap=args.cap,
            max_results=args.max_results,
            seed=args.seed,
        )
    except CapExceededError as exc:
        raise _Fail(EXIT_USAGE, f"{exc}; lower --length or raise --cap") from None
    for w in witnesses:
        out.write(f"{w.a} {w.b} {format_value(w.value)}\n")
    return EXIT_OK if witnesses else EXIT_NO_MATCH


def _cmd_experiment(args, out) -> int:
    table = _resolve_table(args.table)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = parse_config(fh)
        except OSError as exc:
            raise _Fail(EXIT_RUNTIME, f"cannot read config {args.config}: {exc.strerror}") from None
        except ConfigError as exc:
            raise _Fail(EXIT_USAGE, f"{args.config}: {exc}") from None
    else:
        config = default_config()
    try:
        rows = run_experiment(config, table, args.out_csv, args.out_svg)
    except ConfigError as exc:
        raise _Fail(EXIT_USAGE, str(exc)) from None
    except OSError as exc:
        raise _Fail(EXIT_RUNTIME, f"cannot write {exc.filename or ''}: {exc.strerror}") from None
    out.write(f"{'num_strings':>12} {'candidates':>12} {'confirmed':>10} {'spurious':>10} {'wall_time_s':>12}\n")
    for r in rows:
        out.write(f"{r.num_strings:>12} {r.candidates:>12} {r.confirmed:>10} {r.spurious:>10} {r.wall_time:>12.6f}\n")
    return EXIT_OK


def _cmd_bench(args, out) -> int:
    table = _resolve_table(args.table)
    text = "".join(_read_input(args.text).splitlines())
    patterns = args.pattern
    if args.ignore_case:
        text, patterns = text.upper(), [p.upper() for p in patterns]
    if not text:
        raise _Fail(EXIT_USAGE, "bench text is empty")
    if any(not p for p in patterns):
        raise _Fail(EXIT_USAGE, "pattern must be non-empty")
    formulas = args.formula or ["eq1", "eq5"]
    specs = [FormulaSpec.from_equation(f, args.k) for f in formulas]
    results = run_benchmarks(text, patterns, specs, table, repeat=args.repeat)
    out.write(format_bench_table(results) + "\n")
    return EXIT_OK


def _cmd_table(args, out) -> int:
    table = _resolve_table(args.table)
    if args.validate:
        out.write(f"ok: {table.alphabet_size} entries\n")
    else:
        out.write(dump_table(table))
    return EXIT_OK


_COMMANDS = {
    "search": _cmd_search,
    "collide": _cmd_collide,
    "experiment": _cmd_experiment,
    "bench": _cmd_bench,
    "table": _cmd_table,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "search" and not args.pattern:
        parser.print_usage(sys.stderr)
        sys.stderr.write("valuegrep search: error: --pattern must be non-empty\n")
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, sys.stdout)
    except _Fail as exc:
        sys.stderr.write(f"valuegrep {args.command}: {exc}\n")
        return exc.code
    except ValueGrepError as exc:
        sys.stderr.write(f"valuegrep {args.command}: {exc}\n")
        return EXIT_RUNTIME
    except OSError as exc:
        sys.stderr.write(f"valuegrep {args.command}: {exc}\n")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
