"""
Throughput of every search method
=================================

All matchers run on the same synthetic text and must report the same
positions. Rolling window scoring is then timed against recomputing each
window from scratch.
"""

import time

import numpy as np

from valuegrep import FormulaSpec, default_table, run_benchmarks, window_values_naive, window_values_rolling
from valuegrep.harness import format_bench_table

table = default_table()
rng = np.random.default_rng(0)
letters = np.array(list("ABCDEFGHIJKLMNOPQRSTUVWXYZ"))
text = "".join(letters[rng.integers(0, 26, 200_000)])
patterns = [text[5000:5016], "QQQQQQQQ"]

results = run_benchmarks(text, patterns, [FormulaSpec.from_equation(1), FormulaSpec.from_equation(5)], table)
print(format_bench_table(results))

# window scoring alone, on a longer pre-encoded text
values = table.encode("".join(letters[rng.integers(0, 26, 2_000_000)]))
spec = FormulaSpec.from_equation(5)
for m in (8, 32, 64):
    t0 = time.perf_counter()
    window_values_naive(spec, table, values, m)
    naive_s = time.perf_counter() - t0
    t0 = time.perf_counter()
    window_values_rolling(spec, table, values, m)
    rolling_s = time.perf_counter() - t0
    print(f"m={m:3d}: naive {naive_s:.3f}s, rolling {rolling_s:.3f}s, {naive_s / rolling_s:.1f}x")
