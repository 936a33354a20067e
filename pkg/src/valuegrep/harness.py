"""Synthetic-corpus mismatch experiment and algorithm benchmarks.

The experiment grows one seeded corpus and evaluates it at a series of
nested sizes, so every larger corpus is a superset of the smaller ones and
the cumulative spurious-hit count can only go up.
"""

from __future__ import annotations

import csv
import io
import math
import os
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, fields
from importlib import resources
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import baselines
from .errors import BenchmarkMismatchError, ConfigError, ValueGrepError, WindowError
from .matcher import DEFAULT_TOLERANCE, candidates_from_scores, text_codes, verify_candidates
from .scoring import FormulaSpec, pattern_value, window_values_naive, window_values_rolling
from .value_table import ValueTable

__all__ = [
    "CSV_HEADER",
    "BenchResult",
    "ExperimentConfig",
    "ExperimentRow",
    "default_config",
    "format_config",
    "generate_corpus",
    "parse_config",
    "read_corpus",
    "read_results_csv",
    "run_benchmarks",
    "run_experiment",
    "write_chart",
    "write_corpus",
    "write_results_csv",
    "SCORING_ALGORITHMS",
    "SEARCH_ALGORITHMS",
    "format_bench_table",
    "speedup",
]

CSV_HEADER = ["num_strings", "candidates", "confirmed", "spurious", "wall_time_s"]


@dataclass(frozen=True)
class ExperimentConfig:
    alphabet: str = "ACGT"
    record_length: tuple[int, int] = (64, 256)
    corpus_sizes: tuple[int, ...] = tuple(range(10_000, 100_001, 10_000))
    patterns_per_size: int = 8
    pattern_length: tuple[int, int] = (8, 16)
    spec: FormulaSpec = field(default_factory=lambda: FormulaSpec.from_equation(1, 1))
    tolerance: float = DEFAULT_TOLERANCE
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.alphabet:
            raise ConfigError("alphabet must be non-empty")
        for name in ("record_length", "pattern_length"):
            lo, hi = getattr(self, name)
            if lo < 1 or hi < lo:
                raise ConfigError(f"{name} must be a non-empty range of positive lengths, got {lo}-{hi}")
        sizes = self.corpus_sizes
        if not sizes or sizes[0] < 1 or any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ConfigError("corpus_sizes must be a strictly ascending list of positive counts")
        if self.patterns_per_size < 1:
            raise ConfigError("patterns_per_size must be >= 1")
        if not self.tolerance >= 0 or not math.isfinite(self.tolerance):
            raise ConfigError("tolerance must be a finite number >= 0")


@dataclass(frozen=True)
class ExperimentRow:
    num_strings: int
    candidates: int
    confirmed: int
    spurious: int
    wall_time: float

    def __post_init__(self) -> None:
        if min(self.candidates, self.confirmed, self.spurious) < 0:
            raise ValueError("counts must be >= 0")
        if self.spurious != self.candidates - self.confirmed:
            raise ValueError("spurious must equal candidates - confirmed")
        # the CSV carries 6 decimals; keep the in-memory row identical to it
        object.__setattr__(self, "wall_time", round(float(self.wall_time), 6))


@dataclass(frozen=True)
class BenchResult:
    algorithm: str
    text_bytes: int
    pattern_length: int
    throughput: float
    positions_found: int
    seconds: float = 0.0


# --- config file -----------------------------------------------------------


def _parse_range(text: str) -> tuple[int, int]:
    parts = text.replace(" ", "").split("-")
    if len(parts) == 1:
        lo = hi = int(parts[0])
    elif len(parts) == 2:
        lo, hi = int(parts[0]), int(parts[1])
    else:
        raise ValueError(f"bad range {text!r}")
    return lo, hi


def _parse_spec(text: str) -> FormulaSpec:
    name, _, rest = text.replace(" ", "").partition(",")
    k = 1
    if rest:
        key, _, val = rest.partition("=")
        if key != "k":
            raise ValueError(f"bad formula {text!r}; expected e.g. 'eq1,k=1'")
        k = int(val)
    return FormulaSpec.from_equation(name, k)


_PARSERS = {
    "alphabet": lambda s: s.replace(" ", ""),
    "record_length": _parse_range,
    "corpus_sizes": lambda s: tuple(int(x) for x in s.replace(" ", "").split(",") if x),
    "patterns_per_size": int,
    "pattern_length": _parse_range,
    "spec": _parse_spec,
    "tolerance": float,
    "seed": int,
}


def parse_config(source: TextIO | str) -> ExperimentConfig:
    """Parse flat ``key = value`` text; ``#`` comments and blank lines are skipped.

    Keys are the ExperimentConfig field names; missing keys keep their defaults.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    values: dict[str, object] = {}
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"expected 'key = value', got {raw.rstrip()!r}", lineno)
        if key not in _PARSERS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        try:
            values[key] = _PARSERS[key](val.strip())
        except (ValueError, ValueGrepError) as exc:
            raise ConfigError(f"bad value for {key}: {exc}", lineno) from None
    return ExperimentConfig(**values)


def format_config(config: ExperimentConfig, prefix: str = "") -> str:
    lines = []
    for f in fields(config):
        v = getattr(config, f.name)
        if f.name in ("record_length", "pattern_length"):
            text = f"{v[0]}-{v[1]}"
        elif f.name == "corpus_sizes":
            text = ",".join(str(x) for x in v)
        elif f.name == "tolerance":
            text = repr(float(v))
        else:
            text = str(v)
        lines.append(f"{prefix}{f.name}={text}\n")
    return "".join(lines)


def default_config() -> ExperimentConfig:
    ref = resources.files("valuegrep") / "data" / "experiment_default.cfg"
    with ref.open("r", encoding="utf-8") as fh:
        return parse_config(fh)


# --- corpora ---------------------------------------------------------------


def generate_corpus(
    alphabet: Sequence[str], num_records: int, length_range: tuple[int, int], seed: int | None
) -> list[str]:
    """Uniform random records; deterministic for a fixed seed."""
    symbols = list(alphabet)
    if not symbols:
        raise ValueError("alphabet must be non-empty")
    if num_records < 1:
        raise ValueError("num_records must be >= 1")
    lo, hi = length_range
    if lo < 0 or hi < lo:
        raise ValueError(f"bad length range {length_range!r}")
    rng = np.random.default_rng(seed)
    lengths = rng.integers(lo, hi + 1, size=num_records)
    codes = np.array([ord(s) for s in symbols], dtype="<u4")
    flat = codes[rng.integers(0, len(symbols), size=int(lengths.sum()))]
    text = flat.tobytes().decode("utf-32-le")
    ends = np.cumsum(lengths).tolist()
    starts = [0] + ends[:-1]
    return [text[a:b] for a, b in zip(starts, ends)]


def write_corpus(records: Iterable[str], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(r + "\n")


def read_corpus(path: str | os.PathLike) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.rstrip("\r\n") for line in fh]


# --- experiment ------------------------------------------------------------


def _sample_patterns(config: ExperimentConfig, records: list[str], rng: np.random.Generator) -> list[str]:
    lo, hi = config.pattern_length
    symbols = list(config.alphabet)
    patterns = []
    n_planted = config.patterns_per_size // 2 + config.patterns_per_size % 2
    for i in range(config.patterns_per_size):
        m = int(rng.integers(lo, hi + 1))
        long_enough = [r for r in records if len(r) >= m]
        if i < n_planted and long_enough:
            rec = long_enough[int(rng.integers(0, len(long_enough)))]
            j = int(rng.integers(0, len(rec) - m + 1))
            patterns.append(rec[j : j + m])
        else:
            patterns.append("".join(symbols[c] for c in rng.integers(0, len(symbols), size=m)))
    return patterns


def _count_block(
    records: list[str], patterns: list[str], config: ExperimentConfig, table: ValueTable
) -> tuple[int, int]:
    """(candidates, confirmed) summed over patterns for one batch of records."""
    if not records:
        return 0, 0
    text = "".join(records)
    lengths = np.fromiter((len(r) for r in records), dtype=np.int64, count=len(records))
    ends = np.cumsum(lengths)
    starts = ends - lengths
    vals = table.encode(text)
    codes = text_codes(text)
    cand_total = conf_total = 0
    for pattern in patterns:
        m = len(pattern)
        if m > vals.size:
            continue
        target = pattern_value(config.spec, table, pattern)
        series = window_values_rolling(config.spec, table, vals, m)
        cands = candidates_from_scores(series.values, target, config.tolerance)
        # drop windows that straddle a record boundary
        rec = np.searchsorted(starts, cands, side="right") - 1
        cands = cands[cands + m <= ends[rec]]
        ok, _ = verify_candidates(codes, text_codes(pattern), cands)
        cand_total += int(cands.size)
        conf_total += int(ok.size)
    return cand_total, conf_total


def run_experiment(
    config: ExperimentConfig,
    table: ValueTable,
    out_csv: str | os.PathLike | None = None,
    out_svg: str | os.PathLike | None = None,
) -> list[ExperimentRow]:
    """One row per corpus size with cumulative candidate/confirmed/spurious counts.

    The same pattern set (half cut from the first corpus slice, half random)
    is searched at every size. ``wall_time`` is the elapsed search time up to
    and including that size.
    """
    missing = [s for s in config.alphabet if s not in table]
    if missing:
        raise ConfigError(f"alphabet symbols not in table: {''.join(missing)}")
    rng = np.random.default_rng(config.seed)
    corpus_seed = int(rng.integers(0, 2**63 - 1))
    records = generate_corpus(config.alphabet, config.corpus_sizes[-1], config.record_length, corpus_seed)
    patterns = _sample_patterns(config, records[: config.corpus_sizes[0]], rng)

    rows = []
    cand = conf = 0
    elapsed = 0.0
    done = 0
    for size in config.corpus_sizes:
        t0 = time.perf_counter()
        c, f = _count_block(records[done:size], patterns, config, table)
        elapsed += time.perf_counter() - t0
        cand += c
        conf += f
        done = size
        rows.append(ExperimentRow(size, cand, conf, cand - conf, elapsed))

    if out_csv is not None:
        write_results_csv(rows, out_csv, config)
    if out_svg is not None:
        write_chart(rows, out_svg)
    return rows


def write_results_csv(
    rows: Sequence[ExperimentRow], path: str | os.PathLike, config: ExperimentConfig | None = None
) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            if config is not None:
                fh.write(format_config(config, prefix="# "))
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for r in rows:
                w.writerow([r.num_strings, r.candidates, r.confirmed, r.spurious, f"{r.wall_time:.6f}"])
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write results CSV: {exc.strerror}", str(path)) from exc


def read_results_csv(path: str | os.PathLike) -> tuple[ExperimentConfig | None, list[ExperimentRow]]:
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    # the config is echoed as "# key=value" lines above the header
    echoed = [ln[1:].strip() for ln in text.splitlines() if ln.startswith("#")]
    config = parse_config("\n".join(echoed)) if echoed else None
    body = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    reader = csv.reader(body)
    header = next(reader)
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    rows = [
        ExperimentRow(int(a), int(b), int(c), int(d), float(e))
        for a, b, c, d, e in reader
    ]
    return config, rows


def write_chart(rows: Sequence[ExperimentRow], path: str | os.PathLike, width: int = 800, height: int = 600) -> None:
    """Static SVG line chart of spurious hits against corpus size."""
    left, right, top, bottom = 90, 30, 40, 70
    pw, ph = width - left - right, height - top - bottom
    xs = [r.num_strings for r in rows]
    ys = [r.spurious for r in rows]
    x_hi = max(xs) if xs else 1
    y_hi = max(max(ys, default=0), 1)

    def px(x: float) -> float:
        return left + pw * x / x_hi

    def py(y: float) -> float:
        return top + ph * (1 - y / y_hi)

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )
    ET.SubElement(svg, "rect", x="0", y="0", width=str(width), height=str(height), fill="white")
    axis = {"stroke": "black", "stroke-width": "1"}
    ET.SubElement(svg, "line", x1=str(left), y1=str(top + ph), x2=str(left + pw), y2=str(top + ph), **axis)
    ET.SubElement(svg, "line", x1=str(left), y1=str(top), x2=str(left), y2=str(top + ph), **axis)
    for i in range(6):
        xv, yv = x_hi * i / 5, y_hi * i / 5
        t = ET.SubElement(svg, "text", x=f"{px(xv):.1f}", y=str(top + ph + 20), **{"text-anchor": "middle", "font-size": "12"})
        t.text = f"{xv:g}"
        t = ET.SubElement(svg, "text", x=str(left - 8), y=f"{py(yv) + 4:.1f}", **{"text-anchor": "end", "font-size": "12"})
        t.text = f"{yv:g}"
    xl = ET.SubElement(svg, "text", x=str(left + pw / 2), y=str(height - 20), **{"text-anchor": "middle", "font-size": "14"})
    xl.text = "number of strings"
    yl = ET.SubElement(
        svg, "text", x="20", y=str(top + ph / 2),
        transform=f"rotate(-90 20 {top + ph / 2})", **{"text-anchor": "middle", "font-size": "14"},
    )
    yl.text = "mismatches"
    points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    ET.SubElement(svg, "polyline", points=points, fill="none", stroke="steelblue", **{"stroke-width": "2"})
    for x, y in zip(xs, ys):
        ET.SubElement(svg, "circle", cx=f"{px(x):.2f}", cy=f"{py(y):.2f}", r="3", fill="steelblue")
    ET.ElementTree(svg).write(path, encoding="utf-8", xml_declaration=True)


# --- benchmarks ------------------------------------------------------------

SEARCH_ALGORITHMS = ("naive", "kmp", "rabin_karp", "boyer_moore")
SCORING_ALGORITHMS = ("naive_scoring", "rolling_scoring")


def _best_time(fn, repeat: int):
    best = math.inf
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def run_benchmarks(
    text: str,
    patterns: Sequence[str],
    specs: Sequence[FormulaSpec],
    table: ValueTable,
    repeat: int = 1,
    algorithms: Sequence[str] = SEARCH_ALGORITHMS + SCORING_ALGORITHMS,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[BenchResult]:
    """Time every algorithm on identical inputs and check they agree.

    Scoring rows time window scoring, candidate selection and verification
    on a pre-encoded text; encoding is shared setup and left out. Raises
    BenchmarkMismatchError if any two algorithms report different positions.
    """
    if not text or not patterns:
        raise ValueError("text and patterns must be non-empty")
    unknown = set(algorithms) - set(SEARCH_ALGORITHMS + SCORING_ALGORITHMS)
    if unknown:
        raise ValueError(f"unknown algorithms: {sorted(unknown)}")
    if any(a in SCORING_ALGORITHMS for a in algorithms) and not specs:
        raise ValueError("scoring algorithms need at least one formula spec")
    nbytes = len(text.encode("utf-8"))
    needs_scores = any(a in SCORING_ALGORITHMS for a in algorithms)
    vals = table.encode(text) if needs_scores else None
    codes = text_codes(text)
    results = []
    for pattern in patterns:
        if not pattern:
            raise WindowError("pattern must be non-empty")
        m = len(pattern)
        runs: list[tuple[str, float, list[int]]] = []
        for name in algorithms:
            if name == "naive":
                fn = (lambda: baselines.naive_search(text, pattern)) if m <= len(text) else (lambda: [])
            elif name == "kmp":
                fn = lambda: baselines.kmp_search(text, pattern)
            elif name == "rabin_karp":
                fn = lambda: baselines.rabin_karp_search(text, pattern)[0]
            elif name == "boyer_moore":
                fn = lambda: baselines.boyer_moore_search(text, pattern)[0]
            else:
                continue
            secs, pos = _best_time(fn, repeat)
            runs.append((name, secs, pos))
        for spec in specs if needs_scores else ():
            target = pattern_value(spec, table, pattern)
            pcodes = text_codes(pattern)
            for name in SCORING_ALGORITHMS:
                if name not in algorithms:
                    continue
                scorer = window_values_naive if name == "naive_scoring" else window_values_rolling

                def fn(scorer=scorer, spec=spec, target=target, pcodes=pcodes):
                    if m > vals.size:
                        return []
                    series = scorer(spec, table, vals, m)
                    cands = candidates_from_scores(series.values, target, tolerance)
                    return verify_candidates(codes, pcodes, cands)[0].tolist()

                secs, pos = _best_time(fn, repeat)
                runs.append((f"{name}[{spec}]", secs, pos))
        reference = runs[0][2]
        for name, secs, pos in runs:
            if pos != reference:
                raise BenchmarkMismatchError(
                    f"{name} found {len(pos)} positions, {runs[0][0]} found {len(reference)} for pattern {pattern!r}"
                )
            results.append(
                BenchResult(name, nbytes, m, nbytes / secs if secs > 0 else math.inf, len(pos), secs)
            )
    return results


def format_bench_table(results: Sequence[BenchResult]) -> str:
    head = f"{'algorithm':<32} {'bytes':>12} {'m':>5} {'MB/s':>10} {'found':>8}"
    lines = [head, "-" * len(head)]
    for r in results:
        lines.append(
            f"{r.algorithm:<32} {r.text_bytes:>12} {r.pattern_length:>5} {r.throughput / 1e6:>10.3f} {r.positions_found:>8}"
        )
    return "\n".join(lines)


def speedup(results: Sequence[BenchResult], fast: str, slow: str) -> float:
    """Throughput ratio between two named rows of a benchmark run."""
    by_name = {r.algorithm: r for r in results}
    return by_name[fast].throughput / by_name[slow].throughput

