from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Tuple, Union

from sympy import Poly, Symbol
from sympy.polys.domains import ZZ

P_SYMBOL = Symbol("p")


@dataclass(frozen=True)
class IntPolynomial:
    """Integer-coefficient polynomial in p; coeffs[k] is the coefficient of p^k.

    The zero polynomial is the empty tuple; trailing zeros are stripped on construction.
    """

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [int(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def constant(cls, value: int) -> "IntPolynomial":
        return cls((value,))

    @classmethod
    def variable(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (coefficient,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def __add__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        other = _coerce(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        return _coerce(other) - self

    def __mul__(self, other: Union["IntPolynomial", int]) -> "IntPolynomial":
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPolynomial":
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = IntPolynomial((1,))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale_down(self, divisor: int) -> "IntPolynomial":
        """Exact division of every coefficient by an integer."""
        return IntPolynomial(tuple(c // divisor for c in self.coeffs))

    def evaluate(self, x: Union[Fraction, int]) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def compose(self, inner: "IntPolynomial") -> "IntPolynomial":
        """self(inner(p)) by Horner's scheme."""
        acc = IntPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def to_sympy(self) -> Poly:
        return Poly(list(reversed(self.coeffs)) or [0], P_SYMBOL, domain=ZZ)

    @classmethod
    def from_sympy(cls, poly: Poly) -> "IntPolynomial":
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    def gcd(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial.from_sympy(self.to_sympy().gcd(other.to_sympy()))

    def exact_quotient(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial.from_sympy(self.to_sympy().exquo(other.to_sympy()))

    def serialize(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        return cls(tuple(int(part) for part in text.split(",") if part.strip()))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            else:
                power = "p" if k == 1 else f"p^{k}"
                body = power if magnitude == 1 else f"{magnitude}{power}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _coerce(value: Union[IntPolynomial, int]) -> IntPolynomial:
    if isinstance(value, IntPolynomial):
        return value
    return IntPolynomial.constant(int(value))


def product(factors: Iterable[IntPolynomial]) -> IntPolynomial:
    return reduce(lambda a, b: a * b, factors, IntPolynomial((1,)))


P = IntPolynomial.variable()
ONE = IntPolynomial.constant(1)
ZERO = IntPolynomial()
Q = ONE - P
