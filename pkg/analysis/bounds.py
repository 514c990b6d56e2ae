"""Upper and lower bounds on the best achievable win rate V(p), and bound-curve CSV output."""

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from config.logger import logger
from errors import ProbabilityRangeError
from exact.rational import format_rational, parse_rational, to_significant
from exact.rational_function import rf_derivative, rf_eval
from game.block_machine import BUILTIN_NAMES, builtin_machine
from game.renewal import derive_closed_form

# (a/b)^C(b,a) is evaluated exactly only up to this exponent
EXACT_EXPONENT_LIMIT = 2**20
DERIVATIVE_PROBE = 10**4
CURVE_FIELDS = ["p", "lower", "upper", "witness"]

# fifteen marked points used for the standard bound plot
FIGURE_GRID = tuple(Fraction(1, d) for d in range(9, 1, -1)) + tuple(
    Fraction(d - 1, d) for d in range(3, 10)
)

Number = Union[Fraction, float]


def _exponent_json(exponent: Optional[int]) -> Union[int, str, None]:
    """Binomial exponents too long to print exactly are given by order of magnitude."""
    if exponent is None or exponent.bit_length() <= 10_000:
        return exponent
    return f"~10^{int(math.log10(exponent))}"


@dataclass(frozen=True)
class BoundRecord:
    p: Fraction
    lower: Fraction
    lower_witness: str
    upper: Optional[Number]
    binomial_exponent: Optional[int]
    upper_exact: bool

    def to_dict(self) -> Dict[str, Any]:
        upper = self.upper
        if isinstance(upper, Fraction):
            upper_text = format_rational(upper)
        else:
            upper_text = None if upper is None else repr(upper)
        return {
            "p": format_rational(self.p),
            "lower": format_rational(self.lower),
            "lower_decimal": float(self.lower),
            "lower_witness": self.lower_witness,
            "upper": upper_text,
            "upper_decimal": None if upper is None else float(upper),
            "binomial_exponent": _exponent_json(self.binomial_exponent),
            "upper_exact": self.upper_exact,
        }


@dataclass(frozen=True)
class CurveRow:
    p: Fraction
    lower: Fraction
    upper: Optional[Number]
    witness: str

    def to_csv(self) -> Dict[str, str]:
        return {
            "p": to_significant(self.p),
            "lower": to_significant(self.lower),
            "upper": "" if self.upper is None else to_significant(self.upper),
            "witness": self.witness,
        }


def _checked(p, *, open_interval: bool) -> Fraction:
    p = parse_rational(p)
    inside = 0 < p < 1 if open_interval else 0 <= p <= 1
    if not inside:
        raise ProbabilityRangeError(f"probability out of range: {p}")
    return p


def _upper_value(p: Fraction) -> tuple:
    """(value, C(b, a), exact flag) for p already reduced."""
    a, b = p.numerator, p.denominator
    exponent = math.comb(b, a)
    # below 1/2 the bound discounts white runs, above it black runs; both agree at 1/2
    if p <= Fraction(1, 2):
        base, factor = 1 - p, p
    else:
        base, factor = p, 1 - p
    if exponent <= EXACT_EXPONENT_LIMIT:
        return p - base**exponent * factor, exponent, True
    log_term = -math.exp(math.log(exponent) + math.log(-math.log(float(base))))
    log_term += math.log(float(factor))
    term = math.exp(log_term) if log_term > -745.0 else 0.0
    return float(p) - term, exponent, False


def _lower_value(p: Fraction) -> tuple:
    witness = "S1" if p <= Fraction(1, 2) else "S3"
    return derive_closed_form(builtin_machine(witness))(p), witness


def upper_bound(p) -> BoundRecord:
    """Upper bound on V(p) for 0 < p < 1; p is reduced first, where the bound is strongest."""
    p = _checked(p, open_interval=True)
    upper, exponent, exact = _upper_value(p)
    lower, witness = _lower_value(p)
    if not exact:
        logger.info(
            "upper bound evaluated in log space",
            extra={"p": format_rational(p), "exponent_digits": int(math.log10(exponent)) + 1},
        )
    return BoundRecord(
        p=p,
        lower=lower,
        lower_witness=witness,
        upper=upper,
        binomial_exponent=exponent,
        upper_exact=exact,
    )


def lower_envelope(p) -> BoundRecord:
    """max(V_S1, V_S3) at p, which is V_S1 up to 1/2 and V_S3 beyond."""
    p = _checked(p, open_interval=False)
    lower, witness = _lower_value(p)
    if p in (0, 1):
        return BoundRecord(p, lower, witness, None, None, False)
    upper, exponent, exact = _upper_value(p)
    return BoundRecord(p, lower, witness, upper, exponent, exact)


@dataclass(frozen=True)
class DerivativeDiagnostics:
    s1_slope_at_zero: Fraction
    s3_slope_at_one: Fraction
    upper_slope_at_zero: float
    upper_slope_at_one: float
    probe: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s1_slope_at_zero": format_rational(self.s1_slope_at_zero),
            "s3_slope_at_one": format_rational(self.s3_slope_at_one),
            "upper_slope_at_zero": self.upper_slope_at_zero,
            "upper_slope_at_one": self.upper_slope_at_one,
            "limit_at_zero": 1 - math.exp(-1),
            "limit_at_one": 1 + math.exp(-1),
            "probe": self.probe,
        }


def derivative_diagnostics(probe: int = DERIVATIVE_PROBE) -> DerivativeDiagnostics:
    """Slopes of the lower envelope and of the upper bound at both endpoints.

    The upper-bound slopes are b * UB(1/b) and b * (1 - UB(1 - 1/b)) at b = probe; both
    points have C(b, 1) = b so the bound itself is exact before the float conversion.
    """
    s1 = derive_closed_form(builtin_machine("S1")).value
    s3 = derive_closed_form(builtin_machine("S3")).value
    near_zero = upper_bound(Fraction(1, probe))
    near_one = upper_bound(Fraction(probe - 1, probe))
    return DerivativeDiagnostics(
        s1_slope_at_zero=rf_eval(rf_derivative(s1), 0),
        s3_slope_at_one=rf_eval(rf_derivative(s3), 1),
        upper_slope_at_zero=float(probe * near_zero.upper),
        upper_slope_at_one=float(probe * (1 - near_one.upper)),
        probe=probe,
    )


def strategy_table(p) -> Dict[str, Fraction]:
    """Closed-form win rate of every built-in strategy at p."""
    p = _checked(p, open_interval=False)
    return {name: derive_closed_form(builtin_machine(name))(p) for name in BUILTIN_NAMES}


def parse_grid(text: str) -> List[Fraction]:
    """Grid: "figure", "start:stop:count" (inclusive) or a comma list of rationals."""
    text = text.strip()
    if text == "figure":
        return list(FIGURE_GRID)
    if text == "":
        return []
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid range must be start:stop:count, got {text!r}")
        start, stop = parse_rational(parts[0]), parse_rational(parts[1])
        count = int(parts[2])
        if count < 1:
            raise ValueError("grid count must be at least 1")
        if count == 1:
            return [start]
        step = (stop - start) / (count - 1)
        return [start + i * step for i in range(count)]
    return [parse_rational(item) for item in text.split(",") if item.strip()]


def curve_rows(grid: Sequence[Fraction], exact_only: bool = False) -> List[CurveRow]:
    rows = []
    previous = None
    for value in grid:
        p = _checked(value, open_interval=True)
        if previous is not None and p <= previous:
            raise ValueError("curve grid must be strictly increasing")
        previous = p
        record = upper_bound(p)
        upper = record.upper if record.upper_exact or not exact_only else None
        rows.append(CurveRow(p, record.lower, upper, record.lower_witness))
    return rows


def emit_curve(
    p_grid: Sequence[Fraction], out: Union[str, Path], exact_only: bool = False
) -> List[CurveRow]:
    rows = curve_rows(p_grid, exact_only)
    with open(out, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=CURVE_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row.to_csv())
    logger.info("bound curve written", extra={"path": str(out), "rows": len(rows)})
    return rows
