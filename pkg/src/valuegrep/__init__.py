"""Exact pattern search by letter-value window scores.

Each symbol maps to a fixed real value; a pattern and every same-length
window of a text are reduced to signed, weighted sums of those values and
compared. Equal scores mark candidate positions, which are then verified
literally; candidates that fail verification are spurious hits.
"""

from .baselines import (
    RkParams,
    boyer_moore_search,
    build_lps,
    kmp_search,
    naive_search,
    rabin_karp_search,
)
from .errors import (
    CapExceededError,
    ConfigError,
    ScoringError,
    TableError,
    UnmappedSymbolError,
    ValueGrepError,
    WindowError,
)
from .harness import (
    ExperimentConfig,
    ExperimentRow,
    generate_corpus,
    run_benchmarks,
    run_experiment,
)
from .matcher import (
    CollisionMode,
    CollisionWitness,
    MatchReport,
    collision_rate,
    find_collisions,
    search,
)
from .scoring import (
    FormulaSpec,
    ScoreSeries,
    SignScheme,
    WeightScheme,
    pattern_value,
    window_values_naive,
    window_values_rolling,
)
from .value_table import ValueTable, default_table, load_table, lookup

__version__ = "0.1.0"
