"""Finite hat games: n hats per player, strategies as lookup tables, exact win counts.

Masks use bit (j - 1) for hat j, set when the hat is white. Hat indices are 1-based.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Tuple

import numpy as np

from errors import InvalidStrategyError, ProbabilityRangeError
from exact.polynomial import IntPolynomial, P, Q

MAX_HATS = 16
# rows of the (x1, x2) grid evaluated per numpy batch
_CELLS_PER_BATCH = 1 << 22


def full_mask(hats: int) -> int:
    return (1 << hats) - 1


def mask_to_pattern(mask: int, hats: int) -> str:
    """Hat 1 leftmost: mask 0b001 on three hats is "WBB"."""
    return "".join("W" if (mask >> j) & 1 else "B" for j in range(hats))


def pattern_to_mask(pattern: str) -> int:
    mask = 0
    for j, color in enumerate(pattern.upper()):
        if color == "W":
            mask |= 1 << j
        elif color != "B":
            raise InvalidStrategyError(f"pattern {pattern!r} may only contain W and B")
    return mask


def is_monochromatic(mask: int, hats: int) -> bool:
    return mask == 0 or mask == full_mask(hats)


@dataclass(frozen=True)
class HatConfig:
    hats: int
    mask: int

    def __post_init__(self) -> None:
        if not 1 <= self.hats <= MAX_HATS:
            raise InvalidStrategyError(f"hat count must be 1..{MAX_HATS}, got {self.hats}")
        if not 0 <= self.mask < (1 << self.hats):
            raise InvalidStrategyError(f"mask {self.mask} does not fit {self.hats} hats")

    @classmethod
    def from_pattern(cls, pattern: str) -> "HatConfig":
        return cls(len(pattern), pattern_to_mask(pattern))

    def is_white(self, hat: int) -> bool:
        return bool((self.mask >> (hat - 1)) & 1)

    @property
    def white_count(self) -> int:
        return bin(self.mask).count("1")

    def __str__(self) -> str:
        return mask_to_pattern(self.mask, self.hats)


@dataclass(frozen=True)
class FiniteStrategy:
    """table[m] is the own hat chosen (1..hats) when the opponent shows mask m."""

    hats: int
    table: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.hats <= MAX_HATS:
            raise InvalidStrategyError(f"hat count must be 1..{MAX_HATS}, got {self.hats}")
        object.__setattr__(self, "table", tuple(int(t) for t in self.table))
        if len(self.table) != 1 << self.hats:
            raise InvalidStrategyError(
                f"strategy on {self.hats} hats needs {1 << self.hats} entries, "
                f"got {len(self.table)}"
            )
        if any(not 1 <= t <= self.hats for t in self.table):
            raise InvalidStrategyError(f"strategy entries must lie in 1..{self.hats}")

    @classmethod
    def constant(cls, hats: int, choice: int = 1) -> "FiniteStrategy":
        return cls(hats, (choice,) * (1 << hats))

    @classmethod
    def random(cls, rng: random.Random, hats: int) -> "FiniteStrategy":
        return cls(hats, tuple(rng.randint(1, hats) for _ in range(1 << hats)))

    def choice(self, opponent_mask: int) -> int:
        return self.table[opponent_mask]

    def with_entry(self, opponent_mask: int, choice: int) -> "FiniteStrategy":
        table = list(self.table)
        table[opponent_mask] = choice
        return FiniteStrategy(self.hats, tuple(table))


@dataclass(frozen=True)
class FinitePair:
    player1: FiniteStrategy
    player2: FiniteStrategy

    def __post_init__(self) -> None:
        if self.player1.hats != self.player2.hats:
            raise InvalidStrategyError("both players must use the same number of hats")

    @classmethod
    def symmetric(cls, strategy: FiniteStrategy) -> "FinitePair":
        return cls(strategy, strategy)

    @classmethod
    def random(cls, rng: random.Random, hats: int) -> "FinitePair":
        return cls(FiniteStrategy.random(rng, hats), FiniteStrategy.random(rng, hats))

    @property
    def hats(self) -> int:
        return self.player1.hats

    @property
    def is_symmetric(self) -> bool:
        return self.player1 == self.player2

    def strategy(self, player: int) -> FiniteStrategy:
        if player not in (1, 2):
            raise ValueError(f"player must be 1 or 2, got {player}")
        return self.player1 if player == 1 else self.player2

    def sort_key(self) -> Tuple[int, ...]:
        return self.player1.table + self.player2.table

    def to_dict(self) -> Dict[str, Any]:
        return {
            "hats": self.hats,
            "player1": list(self.player1.table),
            "player2": list(self.player2.table),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FinitePair":
        try:
            hats = int(data["hats"])
            player1 = FiniteStrategy(hats, tuple(data["player1"]))
            player2 = FiniteStrategy(hats, tuple(data["player2"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidStrategyError):
                raise
            raise InvalidStrategyError(f"malformed strategy-pair document: {exc}") from exc
        return cls(player1, player2)


@dataclass(frozen=True)
class WinCountVector:
    """counts[w] = number of winning configuration pairs with w white hats in total."""

    hats: int
    counts: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if len(self.counts) != 2 * self.hats + 1:
            raise ValueError(f"expected {2 * self.hats + 1} counts, got {len(self.counts)}")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def polynomial(self) -> IntPolynomial:
        n2 = 2 * self.hats
        result = IntPolynomial()
        for w, count in enumerate(self.counts):
            if count:
                result = result + count * (P**w) * (Q ** (n2 - w))
        return result

    def probability(self, p: Fraction) -> Fraction:
        p = _checked_probability(p)
        q = 1 - p
        n2 = 2 * self.hats
        return sum(
            (count * p**w * q ** (n2 - w) for w, count in enumerate(self.counts) if count),
            Fraction(0),
        )


def _checked_probability(p) -> Fraction:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ProbabilityRangeError(f"probability out of range: {p}")
    return p


def popcounts(hats: int) -> np.ndarray:
    masks = np.arange(1 << hats, dtype=np.int64)
    counts = np.zeros_like(masks)
    for j in range(hats):
        counts += (masks >> j) & 1
    return counts


def _win_grid_batches(pair: FinitePair):
    """Yield (row_start, win, white) blocks of the 2^n x 2^n grid indexed [x1, x2]."""
    n = pair.hats
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    popcount = popcounts(n)
    choice1 = np.asarray(pair.player1.table, dtype=np.int64) - 1
    choice2 = np.asarray(pair.player2.table, dtype=np.int64) - 1
    rows = max(1, _CELLS_PER_BATCH // size)
    for start in range(0, size, rows):
        x1 = masks[start : start + rows]
        # player 1 sees x2 and picks hat choice1[x2] of x1; player 2 sees x1
        correct1 = (x1[:, None] >> choice1[None, :]) & 1
        correct2 = (masks[None, :] >> choice2[x1][:, None]) & 1
        win = (correct1 & correct2).astype(bool)
        white = popcount[x1][:, None] + popcount[None, :]
        yield start, win, white


def evaluate_pair(pair: FinitePair) -> WinCountVector:
    n = pair.hats
    counts = np.zeros(2 * n + 1, dtype=np.int64)
    for _, win, white in _win_grid_batches(pair):
        counts += np.bincount(white[win], minlength=2 * n + 1)
    return WinCountVector(n, tuple(int(c) for c in counts))


def win_probability(pair: FinitePair, p) -> Fraction:
    return evaluate_pair(pair).probability(_checked_probability(p))


def win_polynomial(pair: FinitePair) -> IntPolynomial:
    return evaluate_pair(pair).polynomial()


def winning_cells(pair: FinitePair) -> List[Tuple[int, int, int]]:
    """(player-1 mask, player-2 mask, white count) for every winning configuration pair."""
    cells = []
    for start, win, white in _win_grid_batches(pair):
        rows, cols = np.nonzero(win)
        for r, c in zip(rows.tolist(), cols.tolist()):
            cells.append((start + r, c, int(white[r, c])))
    return cells


def dual_finite(strategy: FiniteStrategy) -> FiniteStrategy:
    full = full_mask(strategy.hats)
    return FiniteStrategy(strategy.hats, tuple(strategy.table[full ^ m] for m in range(full + 1)))


def dual_pair(pair: FinitePair) -> FinitePair:
    return FinitePair(dual_finite(pair.player1), dual_finite(pair.player2))


def swap_players(pair: FinitePair) -> FinitePair:
    return FinitePair(pair.player2, pair.player1)


def config_weights(hats: int, p: Fraction) -> List[Fraction]:
    """Probability of every mask on `hats` hats."""
    q = 1 - p
    return [p ** bin(m).count("1") * q ** (hats - bin(m).count("1")) for m in range(1 << hats)]


def player_marginal(pair: FinitePair, player: int, p) -> Fraction:
    """Exact probability that `player` points at a white hat; equals p for any table."""
    p = _checked_probability(p)
    strategy = pair.strategy(player)
    weights = config_weights(pair.hats, p)
    total = Fraction(0)
    for opponent, w_opp in enumerate(weights):
        bit = strategy.choice(opponent) - 1
        own_white = sum((w for own, w in enumerate(weights) if (own >> bit) & 1), Fraction(0))
        total += w_opp * own_white
    return total