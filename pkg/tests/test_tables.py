from decimal import Decimal

import pytest

from wrtseifert.hp import HPComplex
from wrtseifert.tables import MISPRINTS, TABLE1, TABLE2, TABLES, PrintedComplex, digit_deviation, matches, misprint


def test_printed_units():
    pc = PrintedComplex("464.33437", "-287.59556")
    assert pc.unit("re") == Decimal("0.00001")
    assert PrintedComplex("321128.", "1.0").unit("re") == 1
    assert str(pc) == "464.33437 - 287.59556i"


def test_digit_deviation():
    pc = PrintedComplex("1.25", "-3.0")
    d = digit_deviation(pc, HPComplex("1.26", "-3.0"))
    assert d["re"] == 1 and d["im"] == 0
    assert matches(pc, HPComplex("1.2599", "-2.901"))
    assert not matches(pc, HPComplex("1.2601", "-3.0"))


def test_table_layout():
    assert TABLES == {1: TABLE1, 2: TABLE2}
    assert [r.N for r in TABLE1.rows if not r.slow] == [22, 23, 98, 99, 100, 998, 999, 1000]
    assert [r.N for r in TABLE2.rows if not r.slow] == [58, 59, 60, 61, 118, 119, 120, 121]
    assert TABLE2.manifold().phi == TABLE2.phi
    assert TABLE1.phi is None
    with pytest.raises(KeyError):
        TABLE1.row(5)


def test_misprint_lookup():
    assert misprint(1, 23, "exact") is MISPRINTS[0]
    assert misprint(1, 23, "asymptotic") is None
    for mp in MISPRINTS:
        row = TABLES[mp.table].row(mp.N)
        printed = getattr(row, mp.column)
        # corrections touch a single component
        assert (printed.re == mp.corrected.re) != (printed.im == mp.corrected.im)
