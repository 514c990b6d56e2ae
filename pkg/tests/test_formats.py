from fractions import Fraction

from cli.formats import EXACT, factored_text, value_text
from exact.polynomial import IntPolynomial
from exact.rational_function import rf_normalize
from game.block_machine import builtin_machine
from game.renewal import derive_closed_form


class TestFactoredText:
    """Test the display form of closed forms"""

    def test_first_white_reads_positive(self):
        """Test a negative denominator constant is flipped for display"""
        value = derive_closed_form(builtin_machine("FIRST_WHITE")).value

        assert value.denominator.coeffs[0] < 0
        assert factored_text(value) == "p/(2 - p)"

    def test_first_black(self):
        """Test a monomial numerator"""
        assert factored_text(derive_closed_form(builtin_machine("FIRST_BLACK")).value) == (
            "2p^2/(1 + p)"
        )

    def test_s3(self):
        """Test the dual strategy renders with its denominator constant positive"""
        text = factored_text(derive_closed_form(builtin_machine("S3")).value)

        assert text == (
            "p(1 + 5p - 10p^2 + 10p^3 - 5p^4 + p^5)/(4 - 2p - 2p^2 + 3p^3 - p^4)"
        )

    def test_display_keeps_canonical_value(self):
        """Test flipping signs for display leaves the function untouched"""
        value = rf_normalize(IntPolynomial((0, 1)), IntPolynomial((2, -1)))

        factored_text(value)

        assert value.denominator == IntPolynomial((-2, 1))


class TestValueText:
    """Test value rendering"""

    def test_modes(self):
        """Test text and exact modes"""
        assert value_text(Fraction(7, 20)) == "7/20 = 0.35"
        assert value_text(Fraction(7, 20), EXACT) == "7/20"
