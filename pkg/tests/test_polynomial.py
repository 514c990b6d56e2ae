from fractions import Fraction

import pytest

from exact.polynomial import ONE, P, Q, ZERO, IntPolynomial, product


class TestIntPolynomial:
    """Integer polynomial arithmetic"""

    def test_trailing_zeros_stripped(self):
        """Test construction strips trailing zero coefficients"""
        assert IntPolynomial((1, 2, 0, 0)).coeffs == (1, 2)
        assert IntPolynomial((0, 0)).is_zero

    def test_arithmetic(self):
        """Test sum, difference and product"""
        assert P + Q == ONE
        assert (P - 1) * (P + 1) == IntPolynomial((-1, 0, 1))
        assert P**3 == IntPolynomial.monomial(3)
        assert 2 - P == IntPolynomial((2, -1))

    def test_evaluate(self):
        """Test Horner evaluation at a rational point"""
        poly = IntPolynomial((2, -3, 3))
        assert poly.evaluate(Fraction(1, 2)) == Fraction(5, 4)

    def test_derivative_and_compose(self):
        """Test derivative and substitution"""
        poly = IntPolynomial((1, 2, 3))
        assert poly.derivative() == IntPolynomial((2, 6))
        assert poly.compose(ONE - P) == IntPolynomial((6, -8, 3))

    def test_gcd_and_quotient(self):
        """Test sympy-backed gcd and exact division"""
        a = (P - 1) * (P + 2)
        b = (P - 1) * (P + 3)
        common = a.gcd(b)
        assert common.degree == 1
        assert a.exact_quotient(common).degree == 1
        assert (P + 2) * (P - 1) == a

    def test_serialize_round_trip(self):
        """Test coefficient serialization"""
        poly = IntPolynomial((0, 1, -1, 1, 1))
        assert poly.serialize() == "0,1,-1,1,1"
        assert IntPolynomial.parse(poly.serialize()) == poly
        assert ZERO.serialize() == "0"

    def test_text(self):
        """Test human-readable rendering"""
        assert str(IntPolynomial((0, 1, -1, 1, 1))) == "p - p^2 + p^3 + p^4"
        assert str(IntPolynomial((2, -3, 3))) == "2 - 3p + 3p^2"
        assert str(ZERO) == "0"

    def test_product(self):
        """Test product of several factors"""
        assert product([P, P, Q]) == P * P * Q
        assert product([]) == ONE

    def test_parse_rejects_garbage(self):
        """Test malformed coefficient lists"""
        with pytest.raises(ValueError):
            IntPolynomial.parse("1,x")
