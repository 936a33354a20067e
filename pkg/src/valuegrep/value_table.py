"""Letter-value tables: the symbol -> real mapping every score is built from.

Table files are UTF-8 text with one ``<symbol> <decimal>`` pair per line.
Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import io
import math
from functools import cached_property
from importlib import resources
from typing import Iterable, Mapping, TextIO

import numpy as np

from .errors import (
    DuplicateSymbolError,
    EmptyTableError,
    TableParseError,
    UnmappedSymbolError,
)

__all__ = [
    "ValueTable",
    "default_table",
    "dump_table",
    "load_table",
    "lookup",
]


class ValueTable:
    """Immutable, case-sensitive mapping from single characters to finite reals."""

    def __init__(self, entries: Mapping[str, float], decimals: Mapping[str, str] | None = None) -> None:
        if not entries:
            raise EmptyTableError("table has no entries")
        clean: dict[str, float] = {}
        for symbol, value in entries.items():
            if not isinstance(symbol, str) or len(symbol) != 1:
                raise TableParseError(f"symbol must be a single character, got {symbol!r}")
            value = float(value)
            if not math.isfinite(value):
                raise TableParseError(f"value for {symbol!r} is not finite: {value!r}")
            clean[symbol] = value
        self._entries = clean
        # original decimal text per symbol, used when writing the table back out
        self._decimals = {
            s: t for s, t in (decimals or {}).items() if s in clean and float(t) == clean[s]
        }

    @property
    def entries(self) -> Mapping[str, float]:
        return dict(self._entries)

    @property
    def alphabet_size(self) -> int:
        return len(self._entries)

    @property
    def symbols(self) -> list[str]:
        return list(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._entries

    def __iter__(self):
        return iter(self._entries)

    def __getitem__(self, symbol: str) -> float:
        return self.lookup(symbol)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ValueTable):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._entries.items())))

    def __repr__(self) -> str:
        return f"ValueTable({self.alphabet_size} entries)"

    def decimal_text(self, symbol: str) -> str:
        value = self.lookup(symbol)
        return self._decimals.get(symbol, repr(value))

    def lookup(self, symbol: str, offset: int | None = None) -> float:
        try:
            return self._entries[symbol]
        except KeyError:
            raise UnmappedSymbolError(symbol, offset) from None

    def scaled(self, factor: float) -> "ValueTable":
        return ValueTable({s: v * factor for s, v in self._entries.items()})

    @cached_property
    def _dense(self) -> np.ndarray:
        # code point -> value, NaN where unmapped
        top = max(ord(s) for s in self._entries)
        dense = np.full(top + 1, np.nan)
        for symbol, value in self._entries.items():
            dense[ord(symbol)] = value
        return dense

    def encode(self, text: str) -> np.ndarray:
        """Map every symbol of ``text`` to its value as a float64 array.

        Raises UnmappedSymbolError naming the first offending symbol and its
        offset in ``text``.
        """
        codes = np.frombuffer(text.encode("utf-32-le"), dtype="<u4")
        dense = self._dense
        inside = codes < dense.size
        values = np.full(codes.size, np.nan)
        values[inside] = dense[codes[inside]]
        bad = np.flatnonzero(np.isnan(values))
        if bad.size:
            pos = int(bad[0])
            raise UnmappedSymbolError(text[pos], pos)
        return values


def lookup(table: ValueTable, symbol: str, offset: int | None = None) -> float:
    return table.lookup(symbol, offset)


def _parse_lines(lines: Iterable[str]) -> ValueTable:
    entries: dict[str, float] = {}
    decimals: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise TableParseError(f"expected '<symbol> <decimal>', got {raw.rstrip()!r}", lineno)
        symbol, text = parts
        if len(symbol) != 1:
            raise TableParseError(f"symbol must be a single character, got {symbol!r}", lineno)
        try:
            value = float(text)
        except ValueError:
            raise TableParseError(f"malformed decimal {text!r}", lineno) from None
        if not math.isfinite(value):
            raise TableParseError(f"value {text!r} is not finite", lineno)
        if symbol in entries:
            raise DuplicateSymbolError(f"duplicate symbol {symbol!r}", lineno)
        entries[symbol] = value
        decimals[symbol] = text
    if not entries:
        raise EmptyTableError("table has no entries")
    return ValueTable(entries, decimals)


def load_table(source: TextIO | str) -> ValueTable:
    """Parse a table from a text stream (or a string holding the file contents)."""
    if isinstance(source, str):
        source = io.StringIO(source)
    return _parse_lines(source)


def dump_table(table: ValueTable, out: TextIO | None = None) -> str:
    """Serialize ``table`` in the file format.

    Values keep the decimal text they were loaded from; others use repr(),
    which round-trips exactly.
    """
    text = "".join(f"{s} {table.decimal_text(s)}\n" for s in table)
    if out is not None:
        out.write(text)
    return text


_DEFAULT: ValueTable | None = None


def default_table() -> ValueTable:
    """The 26-letter uppercase English frequency table shipped with the package."""
    global _DEFAULT
    if _DEFAULT is None:
        ref = resources.files("valuegrep") / "data" / "default_table.txt"
        with ref.open("r", encoding="utf-8") as fh:
            _DEFAULT = load_table(fh)
    return _DEFAULT
