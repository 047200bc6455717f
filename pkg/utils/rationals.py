"""
Exact rational helpers for reports and command-line input.

Rationals are always written as "p/q" strings (integers as "p") so that
reports stay lossless and diffable.
"""

import numbers
from fractions import Fraction
from typing import Union

from utils.errors import UsageError

Number = Union[int, float, complex, Fraction]


def format_rational(value: Fraction) -> str:
    """Format a rational as 'p/q', or 'p' for integers"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse '3/4', '-2', '0.125' into an exact Fraction"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"not a rational number: {text!r}", example="3/4") from e


def format_scalar(value: Number, digits: int = 12) -> str:
    """Format an exact or floating scalar for a report cell"""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, complex):
        if value.imag == 0:
            return f"{value.real:.{digits}g}"
        return f"{value.real:.{digits}g}{value.imag:+.{digits}g}j"
    return f"{float(value):.{digits}g}"


def promote_int(value):
    """Integers become Fractions so that exact arithmetic stays exact; other scalars pass through"""
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    return value
