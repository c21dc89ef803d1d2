from fractions import Fraction

import mpmath

from blockspectrum.export import (
    CONSTANTS_HEADER,
    SERIES_HEADER,
    constants_row,
    decimal_string,
    pmf_rows,
    rows_to_text,
    series_rows,
)
from blockspectrum.laws import Pmf
from blockspectrum.params import StructureParams
from blockspectrum.singularity import singularity_data


def test_decimal_string_has_no_exponent():
    assert decimal_string(10**40) == str(10**40)
    assert decimal_string(Fraction(1, 8)) == "0.125"
    tiny = decimal_string(Fraction(1, 10**30))
    assert "e" not in tiny.lower() and tiny.startswith("0.000")
    with mpmath.workdps(30):
        s = decimal_string(mpmath.mpf("1e-25"), 30)
    assert "e" not in s.lower()


def test_series_csv():
    text = rows_to_text(SERIES_HEADER, series_rows(StructureParams(1, 1, 2), 6))
    lines = text.split("\n")
    assert lines[0] == "n,g,f,b0,bgamma,bT,bH,bK,bL,bM"
    assert lines[5].split(",")[:2] == ["4", "5"]
    assert "\r" not in text
    assert rows_to_text(SERIES_HEADER, series_rows(StructureParams(1, 1, 2), 1)).count("\n") == 2


def test_tsv():
    text = rows_to_text(("a", "b"), [[1, 2]], "tsv")
    assert text == "a\tb\n1\t2\n"


def test_constants_row():
    d = singularity_data(StructureParams(0, 1, 2))
    row = constants_row(d)
    assert len(row) == len(CONSTANTS_HEADER)
    assert row[:3] == [0, 1, 2]
    assert row[3].startswith("0.38196601125")


def test_pmf_rows():
    rows = list(pmf_rows(Pmf({0: Fraction(1, 3), 2: Fraction(2, 3)})))
    assert rows[0][0] == 0 and rows[0][2] == "1/3"
    with mpmath.workdps(20):
        law = Pmf({0: mpmath.mpf("0.5"), 1: mpmath.mpf("0.25")}, mpmath.mpf("0.25"))
        rows = list(pmf_rows(law, limit=True))
    assert rows[0][2].startswith("0.5") and rows[1][2].startswith("0.25")
