"""Exception hierarchy shared by every valuegrep module."""

from __future__ import annotations


class ValueGrepError(Exception):
    """Base class for all library errors."""


class TableError(ValueGrepError, ValueError):
    """A letter-value table could not be built or parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TableParseError(TableError):
    pass


class DuplicateSymbolError(TableError):
    pass


class EmptyTableError(TableError):
    pass


class UnmappedSymbolError(ValueGrepError, KeyError):
    """A symbol has no entry in the value table."""

    def __init__(self, symbol: str, offset: int | None = None) -> None:
        self.symbol = symbol
        self.offset = offset
        msg = f"unmapped symbol {symbol!r}"
        if offset is not None:
            msg += f" at offset {offset}"
        super().__init__(msg)

    def __str__(self) -> str:
        # KeyError would otherwise repr() the message
        return self.args[0]


class ScoringError(ValueGrepError, ArithmeticError):
    """A score became non-finite (weight overflow for large k and m)."""


class WindowError(ValueGrepError, ValueError):
    """Window or pattern length is out of range for the text."""


class CapExceededError(ValueGrepError, ValueError):
    """Exhaustive enumeration would exceed the configured sequence cap."""


class ConfigError(ValueGrepError, ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BenchmarkMismatchError(ValueGrepError, AssertionError):
    """Two algorithms disagreed on the positions found for the same input."""
