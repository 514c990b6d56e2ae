"""Human-readable renderings shared by the subcommands."""

import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Union

from exact.polynomial import ONE, IntPolynomial
from exact.rational import format_rational, to_display
from exact.rational_function import RationalFunction
from game.finite import FinitePair, mask_to_pattern

TEXT = "text"
EXACT = "exact"


def value_text(value: Union[Fraction, float], fmt: str = TEXT) -> str:
    """Exact value plus decimal ("7/20 = 0.35"), or just "7/20" in exact mode."""
    if not isinstance(value, Fraction):
        return to_display(value)
    if fmt == EXACT:
        return format_rational(value)
    return f"{format_rational(value)} = {to_display(value)}"


def _power_of_p(k: int) -> str:
    return "p" if k == 1 else f"p^{k}"


def factored_text(f: RationalFunction) -> str:
    """Like rf_to_text but pulls the lowest power of p out of the numerator.

    (p - p^2 + p^3 + p^4)/(2 - 3p + 3p^2) renders as p(1 - p + p^2 + p^3)/(2 - 3p + 3p^2).
    """
    num, den = f.numerator, f.denominator
    if num.is_zero:
        return "0"
    # display only: show a positive constant term in the denominator when it has one
    if den.coeffs[0] < 0:
        num, den = -num, -den
    low = next(k for k, c in enumerate(num.coeffs) if c)
    rest = IntPolynomial(num.coeffs[low:])
    if low == 0:
        num_text = str(rest)
        if not rest.is_constant and den != ONE:
            num_text = f"({num_text})"
    elif rest.is_constant:
        c = rest.coeffs[0]
        prefix = {1: "", -1: "-"}.get(c, str(c))
        num_text = prefix + _power_of_p(low)
    else:
        num_text = f"{_power_of_p(low)}({rest})"
    if den == ONE:
        return num_text
    den_text = str(den)
    if len([c for c in den.coeffs if c]) > 1:
        den_text = f"({den_text})"
    return f"{num_text}/{den_text}"


def pair_lines(pair: FinitePair) -> List[str]:
    """One line per opponent input: pattern -> player 1 hat, player 2 hat."""
    n = pair.hats
    width = max(n, 5)
    lines = [f"{'input':<{width}}  p1  p2"]
    for mask in range(1 << n):
        pattern = mask_to_pattern(mask, n)
        first, second = pair.player1.choice(mask), pair.player2.choice(mask)
        lines.append(f"{pattern:<{width}}  {first:>2}  {second:>2}")
    return lines


def cell_lines(cells: Iterable[tuple], hats: int) -> List[str]:
    return [
        f"{mask_to_pattern(x1, hats)} {mask_to_pattern(x2, hats)}  whites={white}"
        for x1, x2, white in cells
    ]


def render(payload: Dict[str, Any], lines: Optional[List[str]], as_json: bool) -> str:
    if as_json or lines is None:
        return json.dumps(payload, indent=2)
    return "\n".join(lines)
