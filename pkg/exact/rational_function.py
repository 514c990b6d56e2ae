"""Rational functions in p with integer coefficients, always kept in canonical form.

Canonical form: numerator and denominator coprime as polynomials, no common integer
factor between them, positive leading coefficient on the denominator, zero stored as 0/1.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from errors import DivisionByZeroPolynomialError, PoleError
from exact.polynomial import ONE, ZERO, IntPolynomial

Operand = Union["RationalFunction", IntPolynomial, Fraction, int]


def rf_normalize(num: IntPolynomial, den: IntPolynomial) -> "RationalFunction":
    if den.is_zero:
        raise DivisionByZeroPolynomialError()
    if num.is_zero:
        return RationalFunction(ZERO, ONE)
    if not num.is_constant and not den.is_constant:
        common = num.gcd(den)
        if not common.is_constant:
            num = num.exact_quotient(common)
            den = den.exact_quotient(common)
    content = gcd(num.content(), den.content())
    if content > 1:
        num = num.scale_down(content)
        den = den.scale_down(content)
    if den.leading < 0:
        num, den = -num, -den
    return RationalFunction(num, den)


@dataclass(frozen=True)
class RationalFunction:
    """Canonical pair; build values with rf_normalize or the arithmetic operators."""

    numerator: IntPolynomial
    denominator: IntPolynomial

    @classmethod
    def of(cls, value: Operand) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, IntPolynomial):
            return cls(value, ONE)
        if isinstance(value, Fraction):
            return cls.from_fraction(value)
        return cls(IntPolynomial.constant(int(value)), ONE)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "RationalFunction":
        return rf_normalize(
            IntPolynomial.constant(value.numerator), IntPolynomial.constant(value.denominator)
        )

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    @property
    def is_constant(self) -> bool:
        return self.numerator.is_constant and self.denominator.is_constant

    @property
    def degree(self) -> int:
        """Combined degree, used as the pivot cost during elimination."""
        return max(self.numerator.degree, 0) + self.denominator.degree

    def __add__(self, other: Operand) -> "RationalFunction":
        other = RationalFunction.of(other)
        if self.denominator == other.denominator:
            return rf_normalize(self.numerator + other.numerator, self.denominator)
        return rf_normalize(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other: Operand) -> "RationalFunction":
        return self + (-RationalFunction.of(other))

    def __rsub__(self, other: Operand) -> "RationalFunction":
        return RationalFunction.of(other) - self

    def __mul__(self, other: Operand) -> "RationalFunction":
        other = RationalFunction.of(other)
        if self.is_zero or other.is_zero:
            return RationalFunction(ZERO, ONE)
        return rf_normalize(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalFunction":
        if self.is_zero:
            raise DivisionByZeroPolynomialError()
        return rf_normalize(self.denominator, self.numerator)

    def __truediv__(self, other: Operand) -> "RationalFunction":
        return self * RationalFunction.of(other).reciprocal()

    def __rtruediv__(self, other: Operand) -> "RationalFunction":
        return RationalFunction.of(other) * self.reciprocal()

    def __pow__(self, exponent: int) -> "RationalFunction":
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        return rf_normalize(self.numerator**exponent, self.denominator**exponent)

    def __call__(self, x: Union[Fraction, int]) -> Fraction:
        return rf_eval(self, x)

    def serialize(self) -> str:
        return f"{self.numerator.serialize()} / {self.denominator.serialize()}"

    def __str__(self) -> str:
        return rf_to_text(self)


def rf_eval(f: RationalFunction, x: Union[Fraction, int]) -> Fraction:
    x = Fraction(x)
    den = f.denominator.evaluate(x)
    if den == 0:
        raise PoleError(f"pole at p = {x}")
    return f.numerator.evaluate(x) / den


def rf_derivative(f: RationalFunction) -> RationalFunction:
    if f.is_constant:
        return RationalFunction(ZERO, ONE)
    num, den = f.numerator, f.denominator
    return rf_normalize(num.derivative() * den - num * den.derivative(), den * den)


def rf_compose(f: RationalFunction, inner: IntPolynomial) -> RationalFunction:
    """f(inner(p)); inner is a polynomial so the result stays in the same field."""
    return rf_normalize(f.numerator.compose(inner), f.denominator.compose(inner))


def reflect(f: RationalFunction) -> RationalFunction:
    """f(1 - p)."""
    return rf_compose(f, ONE - IntPolynomial.variable())


def rf_serialize(f: RationalFunction) -> str:
    return f.serialize()


def rf_parse(text: str) -> RationalFunction:
    """Inverse of rf_serialize: "0,1 / 2,-1" is p/(2 - p)."""
    num_text, sep, den_text = text.partition("/")
    try:
        num = IntPolynomial.parse(num_text)
        den = IntPolynomial.parse(den_text) if sep else ONE
    except ValueError as exc:
        raise ValueError(f"malformed rational function {text!r}") from exc
    return rf_normalize(num, den)


def rf_to_text(f: RationalFunction) -> str:
    num_text = str(f.numerator)
    if f.denominator == ONE:
        return num_text
    if len([c for c in f.numerator.coeffs if c]) > 1:
        num_text = f"({num_text})"
    den_text = str(f.denominator)
    if len([c for c in f.denominator.coeffs if c]) > 1:
        den_text = f"({den_text})"
    return f"{num_text}/{den_text}"


RF_ZERO = RationalFunction(ZERO, ONE)
RF_ONE = RationalFunction(ONE, ONE)
RF_P = RationalFunction(IntPolynomial.variable(), ONE)
RF_Q = RationalFunction(ONE - IntPolynomial.variable(), ONE)
