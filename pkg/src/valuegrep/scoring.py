"""Pattern and window scores for the eight-member letter-value formula family.

A score is a signed, weighted sum of letter values::

    V(s) = sum_i sign(i) * weight(i) * value(s_i)

with ``weight(i) = k**(i+1)`` (geometric) or ``(i+1)**k`` (polynomial) and
one of four sign patterns. The eight (weight, sign) combinations are
addressed as ``eq1`` .. ``eq8``:

======  ==========  =========================================
name    weights     signs by index 0, 1, 2, 3, ...
======  ==========  =========================================
eq1     k**(i+1)    + + + + ...
eq2     k**(i+1)    + - - - ...
eq3     k**(i+1)    + + - + - ...   (odd +, even >= 2 -)
eq4     k**(i+1)    + - + - + ...   (odd -, even >= 2 +)
eq5     (i+1)**k    + + + + ...
eq6     (i+1)**k    + - - - ...
eq7     (i+1)**k    + + - + - ...
eq8     (i+1)**k    + - + - + ...
======  ==========  =========================================

``window_values_naive`` recomputes every window from scratch in O(n*m).
``window_values_rolling`` produces the same series in O(n*(k+1)) from
block-local prefix moments.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import ScoringError, WindowError
from .value_table import ValueTable

__all__ = [
    "FormulaSpec",
    "ScoreSeries",
    "ScoredPattern",
    "SignScheme",
    "WeightScheme",
    "coefficients",
    "max_relative_deviation",
    "pattern_value",
    "score_pattern",
    "sign",
    "weight",
    "window_values_naive",
    "window_values_rolling",
]


class WeightScheme(enum.Enum):
    GEOMETRIC = "geometric"
    POLYNOMIAL = "polynomial"


class SignScheme(enum.Enum):
    UNIFORM_PLUS = "uniform_plus"
    HEAD_PLUS_REST_MINUS = "head_plus_rest_minus"
    HEAD_PLUS_ODD_PLUS_EVEN_MINUS = "head_plus_odd_plus_even_minus"
    HEAD_PLUS_ODD_MINUS_EVEN_PLUS = "head_plus_odd_minus_even_plus"


_SIGN_ORDER = list(SignScheme)
_WEIGHT_ORDER = list(WeightScheme)


@dataclass(frozen=True)
class FormulaSpec:
    weight_scheme: WeightScheme
    sign_scheme: SignScheme
    k: int = 1

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, (int, np.integer)) or self.k < 1:
            raise ValueError(f"k must be a natural number >= 1, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))

    @classmethod
    def from_equation(cls, equation: int | str, k: int = 1) -> "FormulaSpec":
        """Build from an equation number 1..8 or a name like ``"eq3"``."""
        if isinstance(equation, str):
            name = equation.strip().lower()
            if not name.startswith("eq") or not name[2:].isdigit():
                raise ValueError(f"unknown formula {equation!r}; expected eq1..eq8")
            equation = int(name[2:])
        if not 1 <= equation <= 8:
            raise ValueError(f"unknown formula eq{equation}; expected eq1..eq8")
        idx = equation - 1
        return cls(_WEIGHT_ORDER[idx // 4], _SIGN_ORDER[idx % 4], k)

    @property
    def equation(self) -> int:
        return _WEIGHT_ORDER.index(self.weight_scheme) * 4 + _SIGN_ORDER.index(self.sign_scheme) + 1

    @property
    def name(self) -> str:
        return f"eq{self.equation}"

    def __str__(self) -> str:
        return f"{self.name},k={self.k}"


@dataclass(frozen=True)
class ScoredPattern:
    text: str
    value: float

    @property
    def m(self) -> int:
        return len(self.text)


@dataclass(frozen=True, eq=False)
class ScoreSeries:
    """Window values ``values[j] = V(text[j:j+m])`` for j in 0..n-m."""

    values: np.ndarray
    m: int
    n: int

    def __post_init__(self) -> None:
        if len(self.values) != self.n - self.m + 1:
            raise ValueError("series length must be n - m + 1")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, j):
        return self.values[j]

    def tolist(self) -> list[float]:
        return self.values.tolist()


def weight(spec: FormulaSpec, i: int) -> float:
    """``k**(i+1)`` or ``(i+1)**k``; overflow saturates to +inf."""
    if i < 0:
        raise ValueError("index must be >= 0")
    try:
        if spec.weight_scheme is WeightScheme.GEOMETRIC:
            return float(spec.k) ** (i + 1)
        return float((i + 1) ** spec.k)
    except OverflowError:
        return math.inf


def sign(spec: FormulaSpec, i: int) -> int:
    if i < 0:
        raise ValueError("index must be >= 0")
    scheme = spec.sign_scheme
    if i == 0 or scheme is SignScheme.UNIFORM_PLUS:
        return 1
    if scheme is SignScheme.HEAD_PLUS_REST_MINUS:
        return -1
    odd = i % 2 == 1
    if scheme is SignScheme.HEAD_PLUS_ODD_PLUS_EVEN_MINUS:
        return 1 if odd else -1
    return -1 if odd else 1


def coefficients(spec: FormulaSpec, m: int) -> np.ndarray:
    """Signed weights ``sign(i) * weight(i)`` for i in 0..m-1.

    Raises ScoringError if any weight overflows.
    """
    coef = np.array([sign(spec, i) * weight(spec, i) for i in range(m)], dtype=float)
    if not np.all(np.isfinite(coef)):
        raise ScoringError(
            f"weights overflow for {spec} at pattern length {m}; use a smaller k or a shorter pattern"
        )
    return coef


def _check_finite(values: np.ndarray, spec: FormulaSpec) -> None:
    if not np.all(np.isfinite(values)):
        raise ScoringError(f"non-finite score under {spec}")


def pattern_value(spec: FormulaSpec, table: ValueTable, s: str | Sequence[str]) -> float:
    """V_P: the score of a whole symbol sequence."""
    if len(s) == 0:
        raise WindowError("pattern must be non-empty")
    coef = coefficients(spec, len(s))
    total = 0.0
    # same accumulation order as window_values_naive, so equal windows score bit-identically
    for i, symbol in enumerate(s):
        total += float(coef[i]) * table.lookup(symbol, i)
    if not math.isfinite(total):
        raise ScoringError(f"non-finite score under {spec}")
    return total


def score_pattern(spec: FormulaSpec, table: ValueTable, s: str) -> ScoredPattern:
    return ScoredPattern(str(s), pattern_value(spec, table, s))


def _as_values(table: ValueTable, text: str | np.ndarray) -> np.ndarray:
    if isinstance(text, np.ndarray):
        return np.asarray(text, dtype=float)
    return table.encode("".join(text) if not isinstance(text, str) else text)


def _check_window(n: int, m: int) -> None:
    if m < 1:
        raise WindowError(f"window length must be >= 1, got {m}")
    if m > n:
        raise WindowError(f"window length {m} exceeds text length {n}")


def window_values_naive(
    spec: FormulaSpec, table: ValueTable, text: str | np.ndarray, m: int
) -> ScoreSeries:
    """Every window recomputed directly: m vectorized passes over the text.

    ``text`` may be a string or an already-encoded float array.
    """
    vals = _as_values(table, text)
    n = vals.size
    _check_window(n, m)
    coef = coefficients(spec, m)
    count = n - m + 1
    acc = np.zeros(count)
    for i in range(m):
        acc += coef[i] * vals[i : i + count]
    _check_finite(acc, spec)
    return ScoreSeries(acc, m, n)


_CHUNK_ELEMENTS = 1 << 20


def _block_sums(vals: np.ndarray, m: int, spec: FormulaSpec, alternating: bool, block: int) -> np.ndarray:
    """Uniform-sign (or strictly alternating) window sums of the weighted values.

    Windows are grouped into blocks of ``block`` consecutive starts. Each block
    gets its own prefix moments over the ``block + m - 1`` symbols it touches,
    with positions measured from the block origin, so that the binomial
    re-centering never mixes magnitudes larger than ``(block + m)**k``.
    """
    n = vals.size
    count = n - m + 1
    R = block
    width = R + m - 1
    nblocks = -(-count // R)
    padded = np.zeros(nblocks * R + m - 1)
    padded[:n] = vals
    rows = sliding_window_view(padded, width)[::R]

    u = np.arange(1, width + 1, dtype=float)  # 1-based position inside the block
    d = np.arange(R, dtype=float)  # window start inside the block
    k = spec.k
    geometric = spec.weight_scheme is WeightScheme.GEOMETRIC
    if geometric and k == 1:
        geometric, k = False, 0  # k**(i+1) == 1 == (i+1)**0

    # polynomial moments of order >= 2 cancel heavily under alternating signs
    dtype = np.longdouble if k >= 2 and not geometric else np.float64
    u = u.astype(dtype)
    d = d.astype(dtype)

    usign = np.where(np.arange(width) % 2 == 0, 1.0, -1.0) if alternating else None
    dsign = np.where(np.arange(R) % 2 == 0, 1.0, -1.0) if alternating else None

    if geometric:
        # k**(i+1) = k**(u-m) * k**(m-d); both factors stay finite whenever k**m is
        kf = float(k)
        col_weights = [kf ** (u - m)]
        row_factors = [kf ** (m - d)]
    else:
        # (i+1)**k = (u-d)**k = sum_s C(k,s) u**s (-d)**(k-s)
        col_weights = [None] + [u**s for s in range(1, k + 1)]
        row_factors = [math.comb(k, s) * (-d) ** (k - s) for s in range(k + 1)]
    if alternating:
        col_weights = [usign if w is None else w * usign for w in col_weights]
        row_factors = [f * dsign for f in row_factors]
    # a row factor of all ones needs no multiply
    row_factors = [None if np.all(f == 1.0) else f for f in row_factors]

    out = np.empty(nblocks * R)
    step = max(1, _CHUNK_ELEMENTS // width)
    for b0 in range(0, nblocks, step):
        chunk = rows[b0 : b0 + step]
        prefix = np.zeros((chunk.shape[0], width + 1), dtype=dtype)
        acc = None
        for cw, rf in zip(col_weights, row_factors):
            np.cumsum(chunk if cw is None else chunk * cw, axis=1, dtype=dtype, out=prefix[:, 1:])
            part = prefix[:, m : m + R] - prefix[:, :R]
            if rf is not None:
                part *= rf
            if acc is None:
                acc = part
            else:
                acc += part
        out[b0 * R : b0 * R + acc.size] = acc.ravel()  # rounds back to float64
    return out[:count]


def window_values_rolling(
    spec: FormulaSpec,
    table: ValueTable,
    text: str | np.ndarray,
    m: int,
    block: int | None = None,
) -> ScoreSeries:
    """Window values in O(n*(k+1)) time.

    Each run of ``block`` consecutive windows (default ``4*m``) is evaluated
    from prefix moments anchored at the run's first symbol, which doubles as
    a periodic resynchronization: rounding error never carries across runs.
    The head-term sign schemes are reduced to the uniform or strictly
    alternating sums with

        head+rest-  = 2*w0*v0 - uniform
        odd+even-   = 2*w0*v0 - alternating
        odd-even+   = alternating
    """
    vals = _as_values(table, text)
    n = vals.size
    _check_window(n, m)
    coefficients(spec, m)  # overflow check, same error as the naive path
    if block is None:
        block = 4 * m
    if block < 1:
        raise ValueError("block must be >= 1")
    if spec.weight_scheme is WeightScheme.GEOMETRIC and spec.k > 1:
        # block-local weights reach k**(block-1); keep them inside double range
        block = min(block, m)

    scheme = spec.sign_scheme
    alternating = scheme in (
        SignScheme.HEAD_PLUS_ODD_PLUS_EVEN_MINUS,
        SignScheme.HEAD_PLUS_ODD_MINUS_EVEN_PLUS,
    )
    base = _block_sums(vals, m, spec, alternating, block)
    count = base.size
    if scheme in (SignScheme.UNIFORM_PLUS, SignScheme.HEAD_PLUS_ODD_MINUS_EVEN_PLUS):
        result = base
    else:
        w0 = weight(spec, 0)
        result = 2.0 * w0 * vals[:count] - base
    _check_finite(result, spec)
    return ScoreSeries(result, m, n)


def max_relative_deviation(approx: np.ndarray | ScoreSeries, exact: np.ndarray | ScoreSeries) -> float:
    """max_j |approx_j - exact_j| / max(1, |exact_j|)."""
    a = approx.values if isinstance(approx, ScoreSeries) else np.asarray(approx)
    e = exact.values if isinstance(exact, ScoreSeries) else np.asarray(exact)
    if a.shape != e.shape:
        raise ValueError("series lengths differ")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - e) / np.maximum(1.0, np.abs(e))))
