"""Win rate of the overlap-1 three-hat strategy summed over monochromatic-run cases.

Each case is a geometric series in the length of the players' leading monochromatic runs.
The total is an independent check on the renewal solver.
"""

from typing import List, Tuple

from exact.rational_function import RF_ONE, RF_P, RF_Q, RationalFunction


def monochrome_run_cases() -> List[Tuple[str, RationalFunction]]:
    p, q = RF_P, RF_Q
    pq2 = (p * q) ** 2
    return [
        # both runs white and ending at the same odd position
        ("equal white runs", pq2 * (RF_ONE + 2 * p**2) / (RF_ONE - p**4)),
        ("equal black runs", pq2 / (RF_ONE - q**2)),
        ("equal runs of opposite colours", 2 * p**3 * q**2 / (RF_ONE - pq2)),
        # the longer run is white and ahead by at least two odd positions
        (
            "white run ahead by two or more",
            2 * p**7 * (RF_ONE - p**2) / (RF_ONE - p**4)
            + 2 * p**6 * q * (RF_ONE - q**2) / (RF_ONE - pq2),
        ),
        # the longer run is white and ahead by exactly one odd position
        (
            "white run ahead by one, shorter white",
            2 * p**5 * q * (RF_ONE - p**3) / (RF_ONE - p**4),
        ),
        (
            "white run ahead by one, shorter black",
            2 * p**4 * q**2 * (RF_ONE + p - p * q**2) / (RF_ONE - pq2),
        ),
    ]


def monochrome_run_case_sum() -> RationalFunction:
    total = RationalFunction.of(0)
    for _, term in monochrome_run_cases():
        total = total + term
    return total
