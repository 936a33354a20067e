"""Score-equality search, literal verification and collision hunting."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CapExceededError, WindowError
from .scoring import (
    FormulaSpec,
    coefficients,
    pattern_value,
    window_values_naive,
    window_values_rolling,
)
from .value_table import ValueTable

__all__ = [
    "DEFAULT_TOLERANCE",
    "CollisionMode",
    "CollisionWitness",
    "MatchReport",
    "candidates_from_scores",
    "collision_rate",
    "find_collisions",
    "search",
    "text_codes",
    "verify_candidates",
]

DEFAULT_TOLERANCE = 1e-9
DEFAULT_ENUMERATION_CAP = 10**7
DEFAULT_MAX_RESULTS = 100_000


@dataclass
class MatchReport:
    candidates: list[int]
    confirmed: list[int]
    spurious: list[int]
    tolerance_used: float
    comparisons: int = 0
    pattern_value: float = math.nan

    @property
    def spurious_count(self) -> int:
        return len(self.spurious)

    def to_dict(self) -> dict:
        return {
            "candidates": list(self.candidates),
            "confirmed": list(self.confirmed),
            "spurious": list(self.spurious),
            "tolerance_used": self.tolerance_used,
            "comparisons": self.comparisons,
        }


@dataclass(frozen=True)
class CollisionWitness:
    spec: FormulaSpec
    a: str
    b: str
    value: float = field(compare=False)


class CollisionMode(enum.Enum):
    EXHAUSTIVE = "exhaustive"
    RANDOM = "random"


def text_codes(text: str) -> np.ndarray:
    """Code points of ``text`` as a uint32 array (for vectorized comparison)."""
    return np.frombuffer(text.encode("utf-32-le"), dtype="<u4")


def candidates_from_scores(values: np.ndarray, target: float, tolerance: float) -> np.ndarray:
    """Positions j with ``|values[j] - target| <= tolerance * max(1, |target|)``."""
    if tolerance < 0:
        raise ValueError("tolerance must be >= 0")
    limit = tolerance * max(1.0, abs(target))
    return np.flatnonzero(np.abs(values - target) <= limit)


def verify_candidates(
    codes: np.ndarray, pattern: np.ndarray, positions: np.ndarray
) -> tuple[np.ndarray, int]:
    """Keep the positions whose window literally equals ``pattern``.

    Returns the surviving positions and the number of symbol comparisons a
    left-to-right check stopping at the first mismatch would make.
    """
    m = pattern.size
    positions = np.asarray(positions, dtype=np.int64)
    if positions.size == 0:
        return positions, 0
    keep = []
    comparisons = 0
    offsets = np.arange(m)
    step = max(1, (1 << 22) // max(m, 1))
    for lo in range(0, positions.size, step):
        pos = positions[lo : lo + step]
        eq = codes[pos[:, None] + offsets] == pattern
        full = eq.all(axis=1)
        first_bad = np.argmin(eq, axis=1)
        comparisons += int(np.where(full, m, first_bad + 1).sum())
        keep.append(pos[full])
    return np.concatenate(keep), comparisons


def _validated(text: str, pattern: str, tolerance: float) -> None:
    if len(pattern) == 0:
        raise WindowError("pattern must be non-empty")
    if len(pattern) > len(text):
        raise WindowError(f"pattern length {len(pattern)} exceeds text length {len(text)}")
    if tolerance < 0 or not math.isfinite(tolerance):
        raise ValueError(f"tolerance must be a finite number >= 0, got {tolerance!r}")


def search(
    spec: FormulaSpec,
    table: ValueTable,
    text: str,
    pattern: str,
    tolerance: float = DEFAULT_TOLERANCE,
    verify: bool = True,
    scorer: str = "rolling",
) -> MatchReport:
    """Find windows of ``text`` whose score equals the pattern's score.

    With ``verify`` set, candidates are checked literally and split into
    confirmed and spurious positions. Without it only the candidate list is
    filled, which is how raw score-match counts are gathered.
    """
    _validated(text, pattern, tolerance)
    target = pattern_value(spec, table, pattern)
    vals = table.encode(text)
    if scorer == "rolling":
        series = window_values_rolling(spec, table, vals, len(pattern))
    elif scorer == "naive":
        series = window_values_naive(spec, table, vals, len(pattern))
    else:
        raise ValueError(f"unknown scorer {scorer!r}")
    cands = candidates_from_scores(series.values, target, tolerance)
    confirmed: list[int] = []
    spurious: list[int] = []
    comparisons = 0
    if verify:
        ok, comparisons = verify_candidates(text_codes(text), text_codes(pattern), cands)
        confirmed = ok.tolist()
        spurious = np.setdiff1d(cands, ok, assume_unique=True).tolist()
    return MatchReport(
        candidates=cands.tolist(),
        confirmed=confirmed,
        spurious=spurious,
        tolerance_used=tolerance,
        comparisons=comparisons,
        pattern_value=target,
    )


def _alphabet_values(table: ValueTable, alphabet: Sequence[str]) -> tuple[list[str], np.ndarray]:
    symbols = sorted(set(alphabet))
    if not symbols:
        raise ValueError("alphabet must be non-empty")
    return symbols, np.array([table.lookup(s) for s in symbols])


def _scores_of_indices(coef: np.ndarray, vals: np.ndarray, idx: np.ndarray) -> np.ndarray:
    # column-by-column in index order, matching pattern_value's summation
    acc = np.zeros(idx.shape[0])
    for i in range(idx.shape[1]):
        acc += coef[i] * vals[idx[:, i]]
    return acc


def _close(x: np.ndarray, y: np.ndarray, tolerance: float) -> np.ndarray:
    return np.abs(x - y) <= tolerance * np.maximum(1.0, np.maximum(np.abs(x), np.abs(y)))


def _decode(index: int, symbols: list[str], length: int) -> str:
    a = len(symbols)
    out = []
    for _ in range(length):
        index, r = divmod(index, a)
        out.append(symbols[r])
    return "".join(reversed(out))


def _exhaustive_pairs(
    scores: np.ndarray, tolerance: float, max_results: int
) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(scores, kind="stable")
    s = scores[order]
    linked = _close(s[:-1], s[1:], tolerance)
    # clusters = maximal runs of sorted scores chained by the tolerance
    starts = np.flatnonzero(np.concatenate(([True], ~linked)))
    ends = np.concatenate((starts[1:], [s.size]))
    sizes = ends - starts

    firsts, seconds = [], []
    pairs = starts[sizes == 2]
    if pairs.size:
        p, q = order[pairs], order[pairs + 1]
        firsts.append(np.minimum(p, q))
        seconds.append(np.maximum(p, q))
    for lo, hi in zip(starts[sizes > 2], ends[sizes > 2]):
        members = np.sort(order[lo:hi])
        mscores = scores[members]
        taken = 0
        for r in range(members.size - 1):
            hit = _close(mscores[r + 1 :], mscores[r], tolerance)
            partners = members[r + 1 :][hit]
            if partners.size:
                firsts.append(np.full(partners.size, members[r]))
                seconds.append(partners)
                taken += partners.size
            if taken >= max_results:
                break  # rows come in lexicographic order, later ones cannot make the cut
    if not firsts:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    a = np.concatenate(firsts)
    b = np.concatenate(seconds)
    keep = np.lexsort((b, a))[:max_results]
    return a[keep], b[keep]


def find_collisions(
    spec: FormulaSpec,
    table: ValueTable,
    alphabet: Sequence[str],
    length: int,
    mode: CollisionMode | str = CollisionMode.EXHAUSTIVE,
    budget: int = 100_000,
    tolerance: float = DEFAULT_TOLERANCE,
    cap: int = DEFAULT_ENUMERATION_CAP,
    max_results: int = DEFAULT_MAX_RESULTS,
    seed: int | None = 0,
) -> list[CollisionWitness]:
    """Pairs of distinct equal-length sequences sharing a score.

    EXHAUSTIVE scores all ``len(alphabet)**length`` sequences, sorts them and
    pairs up neighbours within tolerance; RANDOM draws ``budget`` random
    pairs. Results are sorted by ``(a, b)`` with ``a < b`` and truncated to
    ``max_results``.
    """
    mode = CollisionMode(mode)
    if length < 1:
        raise WindowError("length must be >= 1")
    symbols, vals = _alphabet_values(table, alphabet)
    coef = coefficients(spec, length)
    a = len(symbols)

    if mode is CollisionMode.EXHAUSTIVE:
        total = a**length
        if total > cap:
            raise CapExceededError(
                f"exhaustive enumeration of {a}**{length} = {total} sequences exceeds cap {cap}"
            )
        ids = np.arange(total, dtype=np.int64)
        scores = np.zeros(total)
        for i in range(length):
            digit = (ids // a ** (length - 1 - i)) % a
            scores += coef[i] * vals[digit]
        ia, ib = _exhaustive_pairs(scores, tolerance, max_results)
        return [
            CollisionWitness(spec, _decode(int(x), symbols, length), _decode(int(y), symbols, length), float(scores[x]))
            for x, y in zip(ia, ib)
        ]

    rng = np.random.default_rng(seed)
    left = rng.integers(0, a, size=(budget, length))
    right = rng.integers(0, a, size=(budget, length))
    distinct = np.any(left != right, axis=1)
    left, right = left[distinct], right[distinct]
    sl = _scores_of_indices(coef, vals, left)
    sr = _scores_of_indices(coef, vals, right)
    hit = np.flatnonzero(_close(sl, sr, tolerance))
    found: dict[tuple[str, str], float] = {}
    for h in hit:
        x = "".join(symbols[c] for c in left[h])
        y = "".join(symbols[c] for c in right[h])
        pair = (x, y) if x < y else (y, x)
        found.setdefault(pair, float(sl[h] if x < y else sr[h]))
    return [CollisionWitness(spec, x, y, v) for (x, y), v in sorted(found.items())][:max_results]


def collision_rate(
    spec: FormulaSpec,
    table: ValueTable,
    alphabet: Sequence[str],
    m: int,
    samples: int,
    seed: int | None = 0,
    tolerance: float = DEFAULT_TOLERANCE,
) -> float:
    """Fraction of uniformly drawn unequal pairs of length-``m`` sequences that collide.

    Defined as 0.0 when no unequal pair exists (a one-symbol alphabet).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if m < 1:
        raise WindowError("length must be >= 1")
    symbols, vals = _alphabet_values(table, alphabet)
    if len(symbols) == 1:
        return 0.0
    coef = coefficients(spec, m)
    rng = np.random.default_rng(seed)
    a = len(symbols)
    hits = 0
    drawn = 0
    while drawn < samples:
        want = samples - drawn
        left = rng.integers(0, a, size=(want, m))
        right = rng.integers(0, a, size=(want, m))
        distinct = np.any(left != right, axis=1)
        left, right = left[distinct], right[distinct]
        hits += int(_close(_scores_of_indices(coef, vals, left), _scores_of_indices(coef, vals, right), tolerance).sum())
        drawn += left.shape[0]
    return hits / drawn
