import io
import math
import string

import pytest
from hypothesis import given
from hypothesis import strategies as st

from valuegrep.errors import (
    DuplicateSymbolError,
    EmptyTableError,
    TableParseError,
    UnmappedSymbolError,
)
from valuegrep.value_table import ValueTable, default_table, dump_table, load_table, lookup

WORKED_EXAMPLE_DIGITS = {
    "A": "8.167",
    "B": "1.492",
    "C": "2.780",
    "D": "4.252",
    "E": "12.702",
    "F": "2.228",
    "G": "2.015",
}


def test_default_table_shape(table):
    assert table.alphabet_size == 26
    assert table.symbols == list(string.ascii_uppercase)
    assert all(v > 0 for v in table.entries.values())
    assert math.isfinite(sum(table.entries.values()))


def test_default_table_a_to_g_match_worked_example_text(table):
    for symbol, text in WORKED_EXAMPLE_DIGITS.items():
        assert table.decimal_text(symbol) == text
        assert lookup(table, symbol) == float(text)


def test_default_table_h_to_z_from_lewand(table, data_dir):
    with open(data_dir / "lewand_frequencies.txt") as fh:
        lewand = load_table(fh)
    for symbol in "HIJKLMNOPQRSTUVWXYZ":
        assert table[symbol] == lewand[symbol]
    assert lookup(table, "H") == 6.094
    # only C and D differ, in the last digit
    differing = [s for s in table if table[s] != lewand[s]]
    assert differing == ["C", "D"]


@pytest.mark.parametrize("symbol, value", [("A", 8.167), ("E", 12.702), ("G", 2.015)])
def test_lookup_known_values(table, symbol, value):
    assert lookup(table, symbol) == value


def test_lookup_is_case_sensitive(table):
    with pytest.raises(UnmappedSymbolError) as info:
        lookup(table, "e")
    assert info.value.symbol == "e"


def test_lookup_zero_value():
    assert lookup(ValueTable({"X": 0.0}), "X") == 0.0


def test_load_two_entries():
    t = load_table("A 1.0\nC 2.0")
    assert t.entries == {"A": 1.0, "C": 2.0}


def test_load_skips_comments_and_blank_lines():
    t = load_table("# comment\n\nT 3.5\n")
    assert t.alphabet_size == 1
    assert t["T"] == 3.5


def test_duplicate_symbol_is_an_error():
    with pytest.raises(DuplicateSymbolError) as info:
        load_table("A 1.0\nA 2.0")
    assert info.value.line == 2


def test_malformed_decimal_reports_line():
    with pytest.raises(TableParseError) as info:
        load_table("A 1.0\n# x\nB 1,5\n")
    assert info.value.line == 3
    assert "line 3" in str(info.value)


@pytest.mark.parametrize("text", ["A nan", "A inf", "AB 1.0", "A", "A 1 2"])
def test_bad_lines_rejected(text):
    with pytest.raises(TableParseError):
        load_table(text)


@pytest.mark.parametrize("text", ["", "# only a comment\n\n"])
def test_empty_table_rejected(text):
    with pytest.raises(EmptyTableError):
        load_table(text)


def test_duplicate_values_are_permitted():
    t = load_table("A 1.0\nB 1.0")
    assert t["A"] == t["B"]


def test_encode_reports_offset(table):
    with pytest.raises(UnmappedSymbolError) as info:
        table.encode("ABCxD")
    assert (info.value.symbol, info.value.offset) == ("x", 3)
    with pytest.raises(UnmappedSymbolError):
        table.encode("AB☃")


def test_encode_values(table):
    assert table.encode("ABE").tolist() == [8.167, 1.492, 12.702]


def test_default_round_trip(table):
    buf = io.StringIO()
    dump_table(table, buf)
    assert load_table(buf.getvalue()) == table
    assert buf.getvalue().splitlines()[0] == "A 8.167"


@given(
    st.dictionaries(
        st.characters(blacklist_categories=("Cs", "Zs", "Zl", "Zp", "Cc"), blacklist_characters="#"),
        st.floats(allow_nan=False, allow_infinity=False),
        min_size=1,
    )
)
def test_round_trip_property(entries):
    t = ValueTable(entries)
    back = load_table(dump_table(t))
    for s in entries:
        assert back[s] == t[s]
