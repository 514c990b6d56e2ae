"""Strategy equivalence: hat relabelings on either head and don't-care monochromatic inputs."""

from typing import List, Tuple

from errors import CanonicalizationLimitError, InvalidStrategyError
from game.finite import FinitePair, FiniteStrategy, full_mask
from game.permutation import Permutation, all_permutations

CANONICAL_MAX_HATS = 4


def _relabel_table(
    strategy: FiniteStrategy, own: Permutation, opponent_inverse_masks: Tuple[int, ...]
) -> FiniteStrategy:
    # new(S) = own(old(opponent^-1(S)))
    return FiniteStrategy(
        strategy.hats,
        tuple(own(strategy.table[opponent_inverse_masks[s]]) for s in range(1 << strategy.hats)),
    )


def relabel_pair(pair: FinitePair, s1: Permutation, s2: Permutation) -> FinitePair:
    """Renumber player 1's hats by s1 and player 2's by s2."""
    if s1.size != pair.hats or s2.size != pair.hats:
        raise InvalidStrategyError(
            f"permutations of size {s1.size}/{s2.size} do not match {pair.hats} hats"
        )
    inv1 = s1.inverse().mask_table()
    inv2 = s2.inverse().mask_table()
    return FinitePair(
        _relabel_table(pair.player1, s1, inv2),
        _relabel_table(pair.player2, s2, inv1),
    )


def _normalize_table(table: Tuple[int, ...], full: int) -> Tuple[int, ...]:
    if table[0] == 1 and table[full] == 1:
        return table
    out = list(table)
    out[0] = 1
    out[full] = 1
    return tuple(out)


def normalize_dont_care(pair: FinitePair) -> FinitePair:
    """Point at hat 1 whenever the opponent is monochromatic."""
    full = full_mask(pair.hats)
    return FinitePair(
        FiniteStrategy(pair.hats, _normalize_table(pair.player1.table, full)),
        FiniteStrategy(pair.hats, _normalize_table(pair.player2.table, full)),
    )


def relabelings(pair: FinitePair) -> List[FinitePair]:
    perms = list(all_permutations(pair.hats))
    return [relabel_pair(pair, s1, s2) for s1 in perms for s2 in perms]


def canonical_form(pair: FinitePair) -> FinitePair:
    """Lexicographically smallest don't-care-normalized relabeling of the pair.

    Player swap is not part of the equivalence.
    """
    n = pair.hats
    if n > CANONICAL_MAX_HATS:
        raise CanonicalizationLimitError(
            f"canonicalization limit: {n} hats exceeds {CANONICAL_MAX_HATS}"
        )
    full = full_mask(n)
    size = 1 << n
    perms = list(all_permutations(n))
    inverse_masks = [perm.inverse().mask_table() for perm in perms]
    base = normalize_dont_care(pair)
    t1, t2 = base.player1.table, base.player2.table

    best = None
    for i, s1 in enumerate(perms):
        inv1 = inverse_masks[i]
        for j, s2 in enumerate(perms):
            inv2 = inverse_masks[j]
            new1 = _normalize_table(tuple(s1(t1[inv2[s]]) for s in range(size)), full)
            new2 = _normalize_table(tuple(s2(t2[inv1[s]]) for s in range(size)), full)
            key = new1 + new2
            if best is None or key < best:
                best = key
    return FinitePair(FiniteStrategy(n, best[:size]), FiniteStrategy(n, best[size:]))


def are_equivalent(a: FinitePair, b: FinitePair) -> bool:
    return canonical_form(a) == canonical_form(b)
