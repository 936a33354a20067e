import xml.etree.ElementTree as ET
from collections import Counter

import pytest

from valuegrep import baselines
from valuegrep.errors import BenchmarkMismatchError, ConfigError
from valuegrep.harness import (
    ExperimentConfig,
    ExperimentRow,
    default_config,
    format_bench_table,
    format_config,
    generate_corpus,
    parse_config,
    read_corpus,
    read_results_csv,
    run_benchmarks,
    run_experiment,
    write_chart,
    write_corpus,
    write_results_csv,
)
from valuegrep.scoring import FormulaSpec

SVG = "{http://www.w3.org/2000/svg}"
SMALL = ExperimentConfig(
    corpus_sizes=(200, 400, 600, 800),
    patterns_per_size=6,
    pattern_length=(3, 6),
    record_length=(20, 60),
    seed=11,
)


def test_unary_corpus():
    assert generate_corpus("A", 3, (2, 2), seed=123) == ["AA", "AA", "AA"]


def test_corpus_is_deterministic():
    a = generate_corpus("ACGT", 50, (5, 30), seed=9)
    assert a == generate_corpus("ACGT", 50, (5, 30), seed=9)
    assert a != generate_corpus("ACGT", 50, (5, 30), seed=10)
    assert all(5 <= len(r) <= 30 for r in a)


def test_corpus_symbol_frequencies():
    records = generate_corpus("ACGT", 10**4, (64, 256), seed=42)
    counts = Counter("".join(records))
    total = sum(counts.values())
    assert set(counts) == set("ACGT")
    for c in "ACGT":
        assert abs(counts[c] / total - 0.25) <= 0.01 * 0.25


def test_corpus_errors():
    with pytest.raises(ValueError):
        generate_corpus("", 3, (1, 2), seed=0)
    with pytest.raises(ValueError):
        generate_corpus("A", 0, (1, 2), seed=0)


def test_corpus_file_round_trip(tmp_path):
    records = generate_corpus("ACGT", 20, (1, 10), seed=1)
    write_corpus(records, tmp_path / "c.txt")
    assert read_corpus(tmp_path / "c.txt") == records


def test_unary_experiment_has_no_spurious_hits(table):
    cfg = ExperimentConfig(alphabet="A", corpus_sizes=(10,), pattern_length=(2, 2), record_length=(2, 9))
    (row,) = run_experiment(cfg, table)
    assert row.num_strings == 10
    assert row.spurious == 0
    assert row.candidates == row.confirmed > 0


def test_nested_counts_are_monotone(table):
    rows = run_experiment(SMALL, table)
    assert [r.num_strings for r in rows] == list(SMALL.corpus_sizes)
    for a, b in zip(rows, rows[1:]):
        assert b.candidates >= a.candidates
        assert b.confirmed >= a.confirmed
        assert b.spurious >= a.spurious
        assert b.wall_time >= a.wall_time
    assert rows[-1].confirmed > 0  # planted patterns are found


def test_experiment_matches_per_record_search(table):
    from valuegrep.harness import _sample_patterns
    import numpy as np

    cfg = ExperimentConfig(corpus_sizes=(30, 60), patterns_per_size=4, pattern_length=(3, 5), record_length=(4, 20), seed=2)
    rows = run_experiment(cfg, table)
    # rebuild the same corpus and patterns, then count record by record
    rng = np.random.default_rng(cfg.seed)
    corpus_seed = int(rng.integers(0, 2**63 - 1))
    records = generate_corpus(cfg.alphabet, 60, cfg.record_length, corpus_seed)
    patterns = _sample_patterns(cfg, records[:30], rng)
    from valuegrep.matcher import search

    cand = conf = 0
    for i, rec in enumerate(records):
        for p in patterns:
            if len(p) <= len(rec):
                r = search(cfg.spec, table, rec, p, cfg.tolerance)
                cand += len(r.candidates)
                conf += len(r.confirmed)
        if i + 1 == 30:
            assert (rows[0].candidates, rows[0].confirmed) == (cand, conf)
    assert (rows[1].candidates, rows[1].confirmed) == (cand, conf)


def test_csv_round_trip(tmp_path, table):
    rows = run_experiment(SMALL, table, out_csv=tmp_path / "r.csv")
    config, back = read_results_csv(tmp_path / "r.csv")
    assert back == rows
    assert config == SMALL
    lines = (tmp_path / "r.csv").read_text().splitlines()
    header = [ln for ln in lines if not ln.startswith("#")][0]
    assert header == "num_strings,candidates,confirmed,spurious,wall_time_s"
    assert all(len(ln.rsplit(",", 1)[1].split(".")[1]) == 6 for ln in lines if ln[0].isdigit())


def test_svg_chart(tmp_path, table):
    rows = run_experiment(SMALL, table, out_svg=tmp_path / "c.svg")
    root = ET.parse(tmp_path / "c.svg").getroot()
    assert root.tag == f"{SVG}svg"
    assert (root.get("width"), root.get("height")) == ("800", "600")
    polylines = root.findall(f".//{SVG}polyline")
    assert len(polylines) == 1
    assert len(polylines[0].get("points").split()) == len(rows)
    labels = {t.text for t in root.iter(f"{SVG}text")}
    assert {"number of strings", "mismatches"} <= labels


def test_chart_of_all_zero_rows(tmp_path):
    rows = [ExperimentRow(10, 0, 0, 0, 0.0), ExperimentRow(20, 0, 0, 0, 0.0)]
    write_chart(rows, tmp_path / "z.svg")
    ET.parse(tmp_path / "z.svg")


def test_write_csv_io_error(tmp_path):
    with pytest.raises(OSError):
        write_results_csv([], tmp_path / "missing" / "r.csv")


def test_row_invariants():
    with pytest.raises(ValueError):
        ExperimentRow(10, 5, 2, 2, 0.0)
    with pytest.raises(ValueError):
        ExperimentRow(10, -1, -1, 0, 0.0)
    assert ExperimentRow(1, 1, 1, 0, 0.1234567).wall_time == 0.123457


def test_default_config_mirrors_ten_sizes():
    cfg = default_config()
    assert cfg.corpus_sizes == tuple(range(10_000, 100_001, 10_000))
    assert cfg.alphabet == "ACGT"
    assert cfg.spec == FormulaSpec.from_equation(1, 1)


def test_config_text_round_trip():
    cfg = ExperimentConfig(alphabet="AC", spec=FormulaSpec.from_equation(6, 3), tolerance=2.5e-7, seed=99)
    assert parse_config(format_config(cfg)) == cfg


@pytest.mark.parametrize(
    "text, line",
    [
        ("seed = 1\nbogus = 2\n", 2),
        ("seed = 1\nseed = 2\n", 2),
        ("# c\n\nseed = x\n", 3),
        ("spec = eq9\n", 1),
        ("record_length = 5-4-3\n", 1),
        ("patterns_per_size\n", 1),
    ],
)
def test_config_errors_carry_line_numbers(text, line):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.line == line


@pytest.mark.parametrize(
    "kwargs",
    [
        {"corpus_sizes": (20, 10)},
        {"corpus_sizes": ()},
        {"record_length": (5, 4)},
        {"pattern_length": (0, 3)},
        {"alphabet": ""},
        {"patterns_per_size": 0},
        {"tolerance": -1.0},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        ExperimentConfig(**kwargs)


def test_alphabet_outside_table(table):
    with pytest.raises(ConfigError):
        run_experiment(ExperimentConfig(alphabet="acgt", corpus_sizes=(5,)), table)


def test_benchmarks_agree(table):
    specs = [FormulaSpec.from_equation(1), FormulaSpec.from_equation(5)]
    results = run_benchmarks("CABACBCBABCABAC", ["ABC"], specs, table)
    assert len(results) == 4 + 2 * 2
    assert {r.positions_found for r in results} == {1}
    assert all(r.throughput > 0 for r in results)
    assert "rolling_scoring[eq5,k=1]" in format_bench_table(results)


def test_benchmark_single_window(table):
    specs = [FormulaSpec.from_equation(7, 2)]
    found = run_benchmarks("GATTACA", ["GATTACA", "GATTACC"], specs, table)
    assert {r.positions_found for r in found if r.pattern_length == 7} == {0, 1}
    by_pattern = {}
    for r in found:
        by_pattern.setdefault(r.algorithm, []).append(r.positions_found)
    assert all(v == [1, 0] for v in by_pattern.values())


def test_benchmark_detects_disagreement(table, monkeypatch):
    monkeypatch.setattr(baselines, "kmp_search", lambda text, pattern: [])
    with pytest.raises(BenchmarkMismatchError):
        run_benchmarks("CABACBCBABCABAC", ["ABC"], [FormulaSpec.from_equation(1)], table)


def test_benchmark_input_validation(table):
    with pytest.raises(ValueError):
        run_benchmarks("", ["A"], [], table)
    with pytest.raises(ValueError):
        run_benchmarks("AB", ["A"], [], table, algorithms=["naive", "quick"])
