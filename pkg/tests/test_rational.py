from fractions import Fraction

import pytest

from atac.errors import AtacError
from atac.rational import common_denominator, format_rational, parse_rational


@pytest.mark.parametrize("text, value", [("3/7", Fraction(3, 7)), ("6/14", Fraction(3, 7)), ("2", Fraction(2)), (" -1/3 ", Fraction(-1, 3)), (5, Fraction(5))])
def test_parse(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["0.5", "1e3", 0.5, "x", "1/0", True, None])
def test_parse_rejects_inexact_or_garbage(bad):
    with pytest.raises(AtacError):
        parse_rational(bad)


def test_format_always_has_denominator():
    assert format_rational(Fraction(4, 2)) == "2/1"
    assert format_rational(Fraction(6, 14)) == "3/7"
    assert parse_rational(format_rational(Fraction(-5, 9))) == Fraction(-5, 9)


def test_common_denominator():
    assert common_denominator([Fraction(1, 3), Fraction(2, 9), Fraction(1, 9)]) == 9
    assert common_denominator([]) == 1
