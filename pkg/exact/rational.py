import re
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Union

# Python's Fraction already keeps gcd(|num|, den) = 1 with den > 0 and 0 as 0/1.
BigRational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")

SIGNIFICANT_DIGITS = 15


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse "a/b" or an integer; decimal notation is rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a rational 'a/b', got {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"expected an exact rational 'a/b' or integer, got {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_significant(value: Union[Fraction, float], digits: int = SIGNIFICANT_DIGITS) -> str:
    """Fixed-point decimal with exactly `digits` significant digits, e.g. 0.375000000000000."""
    with localcontext() as ctx:
        ctx.prec = digits + 10
        if isinstance(value, Fraction):
            decimal = Decimal(value.numerator) / Decimal(value.denominator)
        else:
            decimal = Decimal(repr(float(value)))
        if decimal == 0:
            return "0." + "0" * (digits - 1)
        quantum = Decimal(1).scaleb(decimal.adjusted() - digits + 1)
        rounded = decimal.quantize(quantum, rounding=ROUND_HALF_EVEN)
        # rounding can carry into a new leading digit (9.99... -> 10.0...)
        if rounded.adjusted() != decimal.adjusted():
            quantum = Decimal(1).scaleb(rounded.adjusted() - digits + 1)
            rounded = rounded.quantize(quantum, rounding=ROUND_HALF_EVEN)
        return format(rounded, "f")


def to_display(value: Union[Fraction, float], digits: int = SIGNIFICANT_DIGITS) -> str:
    """Like to_significant but without trailing zeros: 7/20 -> 0.35."""
    text = to_significant(value, digits)
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text
