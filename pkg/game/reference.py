"""The optimal three-hat strategy and an equivalent alternative table.

Patterns list hat 1 leftmost, W for white. Monochromatic patterns are don't-care inputs:
finite tables point at hat 1 there, block machines recurse.
"""

from typing import Dict

from game.finite import FinitePair, FiniteStrategy, pattern_to_mask

REFERENCE_HATS = 3

OPTIMAL_THREE_HAT_CHOICES: Dict[str, int] = {
    "WBB": 1,
    "BWB": 3,
    "WWB": 1,
    "BBW": 2,
    "WBW": 2,
    "BWW": 3,
}

ALTERNATIVE_THREE_HAT_CHOICES: Dict[str, int] = {
    "BBB": 1,
    "WBB": 2,
    "BWB": 1,
    "WWB": 1,
    "BBW": 3,
    "WBW": 2,
    "BWW": 3,
    "WWW": 1,
}


def strategy_from_choices(choices: Dict[str, int], hats: int = REFERENCE_HATS) -> FiniteStrategy:
    """Missing patterns default to hat 1."""
    table = [1] * (1 << hats)
    for pattern, choice in choices.items():
        table[pattern_to_mask(pattern)] = choice
    return FiniteStrategy(hats, tuple(table))


def optimal_three_hat_strategy() -> FiniteStrategy:
    return strategy_from_choices(OPTIMAL_THREE_HAT_CHOICES)


def alternative_three_hat_strategy() -> FiniteStrategy:
    return strategy_from_choices(ALTERNATIVE_THREE_HAT_CHOICES)


def optimal_three_hat_pair() -> FinitePair:
    return FinitePair.symmetric(optimal_three_hat_strategy())


def alternative_three_hat_pair() -> FinitePair:
    return FinitePair.symmetric(alternative_three_hat_strategy())
