"""Classical single-pattern exact matchers used as oracles and benchmark opponents.

All of them report overlapping occurrences in ascending order.
``naive_search`` is the reference every other search is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import WindowError

__all__ = [
    "BmTables",
    "RkParams",
    "boyer_moore_search",
    "build_bm_tables",
    "build_lps",
    "kmp_search",
    "naive_search",
    "rabin_karp_hashes",
    "rabin_karp_search",
]


def _check(text: str, pattern: str, *, allow_longer: bool = False) -> None:
    if len(pattern) == 0:
        raise WindowError("pattern must be non-empty")
    if not allow_longer and len(pattern) > len(text):
        raise WindowError(f"pattern length {len(pattern)} exceeds text length {len(text)}")


def naive_search(text: str, pattern: str) -> list[int]:
    _check(text, pattern)
    m = len(pattern)
    return [j for j in range(len(text) - m + 1) if text[j : j + m] == pattern]


def build_lps(pattern: str) -> list[int]:
    """Longest proper prefix of ``pattern[:i+1]`` that is also its suffix, per i."""
    if not pattern:
        raise WindowError("pattern must be non-empty")
    lps = [0] * len(pattern)
    length = 0
    i = 1
    while i < len(pattern):
        if pattern[i] == pattern[length]:
            length += 1
            lps[i] = length
            i += 1
        elif length:
            length = lps[length - 1]
        else:
            lps[i] = 0
            i += 1
    return lps


def kmp_search(text: str, pattern: str) -> list[int]:
    _check(text, pattern, allow_longer=True)
    lps = build_lps(pattern)
    m = len(pattern)
    out = []
    q = 0
    for j, ch in enumerate(text):
        while q and pattern[q] != ch:
            q = lps[q - 1]
        if pattern[q] == ch:
            q += 1
            if q == m:
                out.append(j - m + 1)
                q = lps[q - 1]
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RkParams:
    base: int = 256
    modulus: int = 1_000_003

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if not _is_prime(self.modulus):
            raise ValueError(f"modulus must be prime, got {self.modulus}")


def rabin_karp_search(text: str, pattern: str, params: RkParams | None = None) -> tuple[list[int], int]:
    """Returns ``(positions, spurious_hits)``.

    A spurious hit is a window whose rolling hash equals the pattern hash
    while its characters differ.
    """
    _check(text, pattern, allow_longer=True)
    params = params or RkParams()
    n, m = len(text), len(pattern)
    if m > n:
        return [], 0
    base, mod = params.base, params.modulus
    high = pow(base, m - 1, mod)
    target = 0
    h = 0
    for i in range(m):
        target = (target * base + ord(pattern[i])) % mod
        h = (h * base + ord(text[i])) % mod
    out = []
    spurious = 0
    for j in range(n - m + 1):
        if h == target:
            if text[j : j + m] == pattern:
                out.append(j)
            else:
                spurious += 1
        if j + m < n:
            h = ((h - ord(text[j]) * high) * base + ord(text[j + m])) % mod
    return out, spurious


def rabin_karp_hashes(text: str, m: int, params: RkParams | None = None) -> list[int]:
    """Rolled hash of every length-``m`` window (exposed for testing the roll)."""
    params = params or RkParams()
    base, mod = params.base, params.modulus
    high = pow(base, m - 1, mod)
    h = 0
    for i in range(m):
        h = (h * base + ord(text[i])) % mod
    out = [h]
    for j in range(len(text) - m):
        h = ((h - ord(text[j]) * high) * base + ord(text[j + m])) % mod
        out.append(h)
    return out


@dataclass(frozen=True)
class BmTables:
    bad_character: dict[str, int]
    good_suffix: list[int]

    def last_index(self, ch: str) -> int:
        return self.bad_character.get(ch, -1)


def _good_suffix_shifts(pattern: str) -> list[int]:
    # shift[i]: how far to move when pattern[i] mismatched after pattern[i+1:] matched
    m = len(pattern)
    shift = [0] * (m + 1)
    border = [0] * (m + 1)
    i, j = m, m + 1
    border[i] = j
    while i > 0:
        while j <= m and pattern[i - 1] != pattern[j - 1]:
            if shift[j] == 0:
                shift[j] = j - i
            j = border[j]
        i -= 1
        j -= 1
        border[i] = j
    j = border[0]
    for i in range(m + 1):
        if shift[i] == 0:
            shift[i] = j
        if i == j:
            j = border[j]
    # re-index so that good_suffix[i] is used on a mismatch at pattern index i
    return shift[1:]


def build_bm_tables(pattern: str) -> BmTables:
    if not pattern:
        raise WindowError("pattern must be non-empty")
    bad = {ch: i for i, ch in enumerate(pattern)}
    return BmTables(bad, _good_suffix_shifts(pattern))


def boyer_moore_search(text: str, pattern: str) -> tuple[list[int], int]:
    """Boyer-Moore with bad-character and good-suffix rules.

    Returns ``(positions, alignments)`` where ``alignments`` counts the
    pattern placements examined.
    """
    _check(text, pattern, allow_longer=True)
    tables = build_bm_tables(pattern)
    n, m = len(text), len(pattern)
    gs = tables.good_suffix
    # full-match shift: the pattern's period
    full_shift = _full_match_shift(pattern)
    out = []
    alignments = 0
    s = 0
    while s <= n - m:
        alignments += 1
        i = m - 1
        while i >= 0 and pattern[i] == text[s + i]:
            i -= 1
        if i < 0:
            out.append(s)
            s += full_shift
        else:
            bc = i - tables.last_index(text[s + i])
            s += max(bc, gs[i], 1)
    return out, alignments


def _full_match_shift(pattern: str) -> int:
    lps = build_lps(pattern)
    return len(pattern) - lps[-1]
