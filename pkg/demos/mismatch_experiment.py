"""
Spurious hits on growing DNA corpora
====================================

Random ACGT records are searched in nested prefixes of one corpus, so the
spurious-hit count can only grow with the number of strings. Results go
to a CSV table and an SVG line chart.
"""

import sys
from pathlib import Path

from valuegrep import ExperimentConfig, FormulaSpec, default_table, run_experiment

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo_output")
out.mkdir(exist_ok=True)
table = default_table()

config = ExperimentConfig(corpus_sizes=tuple(range(1000, 10_001, 1000)), seed=3)
rows = run_experiment(config, table, out / "eq1.csv", out / "eq1.svg")
for r in rows:
    print(f"{r.num_strings:6d} strings: {r.candidates:7d} candidates, {r.spurious:7d} spurious")

# the same corpus under a position-weighted score
weighted = ExperimentConfig(corpus_sizes=config.corpus_sizes, seed=3, spec=FormulaSpec.from_equation(5, 2))
last = run_experiment(weighted, table)[-1]
print(f"{weighted.spec} at {last.num_strings} strings: {last.spurious} spurious")
print("wrote", out / "eq1.csv", "and", out / "eq1.svg")
