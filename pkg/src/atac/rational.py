"""Exact rational helpers.

All weights, limits and bounds in this package are :class:`fractions.Fraction`
values; this module only adds the textual ``"p/q"`` interchange format and a
couple of denominator utilities.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .errors import AtacError

Rational = Fraction


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (also accepts int or Fraction).

    Floats are refused: they cannot carry an exact value through the interchange
    format.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise AtacError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise AtacError(f"rationals must be 'p/q' strings, got {text!r}")
    s = text.strip()
    if "." in s or "e" in s.lower():
        raise AtacError(f"decimal value {text!r} is not an exact rational")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise AtacError(f"not a rational: {text!r}") from exc


def format_rational(value) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def common_denominator(values: Iterable[Fraction]) -> int:
    """Least positive integer ``v`` with ``v * x`` integral for every value."""
    v = 1
    for x in values:
        v = math.lcm(v, Fraction(x).denominator)
    return v
