from exact.linear_system import LinearSystem, solve_linear_system
from exact.polynomial import IntPolynomial
from exact.rational import BigRational, format_rational, parse_rational, to_display
from exact.rational_function import (
    RationalFunction,
    reflect,
    rf_compose,
    rf_derivative,
    rf_eval,
    rf_normalize,
    rf_parse,
    rf_serialize,
    rf_to_text,
)

__all__ = [
    "BigRational",
    "IntPolynomial",
    "LinearSystem",
    "RationalFunction",
    "format_rational",
    "parse_rational",
    "reflect",
    "rf_compose",
    "rf_derivative",
    "rf_eval",
    "rf_normalize",
    "rf_parse",
    "rf_serialize",
    "rf_to_text",
    "solve_linear_system",
    "to_display",
]
