"""Exact win rates of block-machine pairs through a renewal linear system.

Unknowns are win probabilities conditioned on the colour constraint of the first hat of
each current block ("F" free, "W", "B"). Joint states track both players while neither
has committed; solo states track the remaining player once the other has committed and
only that player's correctness is still open. With overlap 0 every constraint is "F".
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from config.logger import logger
from errors import DegenerateProbabilityError, NonCommittingStrategyError, ProbabilityRangeError
from exact.linear_system import LinearSystem, solve_linear_system
from exact.polynomial import ONE, ZERO, IntPolynomial, P, Q
from exact.rational_function import RF_ZERO, RationalFunction, rf_eval
from game.block_machine import BlockMachine, MachinePair

FREE, WHITE, BLACK = "F", "W", "B"
_CONSTRAINT_ORDER = {FREE: 0, WHITE: 1, BLACK: 2}

JointState = Tuple[str, str]
SoloState = Tuple[int, str, str]  # (player, own constraint, opponent constraint)


def _block_outcomes(block_size: int, constraint: str) -> List[Tuple[int, IntPolynomial]]:
    """Every block consistent with the first-hat constraint, with its probability."""
    outcomes = []
    for mask in range(1 << block_size):
        first_white = mask & 1
        if constraint == WHITE and not first_white:
            continue
        if constraint == BLACK and first_white:
            continue
        weight = ONE
        for j in range(0 if constraint == FREE else 1, block_size):
            weight = weight * (P if (mask >> j) & 1 else Q)
        outcomes.append((mask, weight))
    return outcomes


def _next_constraint(mask: int, block_size: int, overlap: int) -> str:
    if overlap == 0:
        return FREE
    return WHITE if (mask >> (block_size - 1)) & 1 else BLACK


def _state_key(state) -> tuple:
    return tuple(_CONSTRAINT_ORDER.get(c, c) for c in state)


@dataclass(frozen=True)
class RenewalSystem:
    """Block lower-triangular system: solo unknowns never depend on joint unknowns.

    Joint rows read  J - sum(joint_matrix terms) = joint_constants + coupling @ solo.
    """

    block_size: int
    overlap: int
    joint_states: Tuple[JointState, ...]
    solo_states: Tuple[SoloState, ...]
    solo_equations: Optional[LinearSystem]
    joint_equations: LinearSystem
    coupling: Tuple[Tuple[RationalFunction, ...], ...]
    continuation: Tuple[RationalFunction, ...]

    @property
    def size(self) -> int:
        return len(self.joint_states) + len(self.solo_states)

    @property
    def unknowns(self) -> List[str]:
        solo = [f"U{player}({a},{b})" for player, a, b in self.solo_states]
        joint = [f"J({a},{b})" for a, b in self.joint_states]
        return solo + joint

    @property
    def equations(self) -> LinearSystem:
        """The whole system in one matrix, solo unknowns first."""
        n_solo, n_joint = len(self.solo_states), len(self.joint_states)
        matrix, rhs = [], []
        if self.solo_equations is not None:
            for row, target in zip(self.solo_equations.matrix, self.solo_equations.rhs):
                matrix.append(tuple(row) + (RF_ZERO,) * n_joint)
                rhs.append(target)
        for i in range(n_joint):
            coupling = tuple(-c for c in self.coupling[i]) if n_solo else ()
            matrix.append(coupling + self.joint_equations.matrix[i])
            rhs.append(self.joint_equations.rhs[i])
        return LinearSystem.build(matrix, rhs)


def _solo_reach(machine: BlockMachine, player: int, seeds: List[SoloState]) -> List[SoloState]:
    m, o = machine.block_size, machine.overlap
    seen = set(seeds)
    frontier = list(seeds)
    while frontier:
        _, _, b = frontier.pop()
        for mask, _ in _block_outcomes(m, b):
            if not machine.action(mask).is_commit:
                target = (player, FREE, _next_constraint(mask, m, o))
                if target not in seen:
                    seen.add(target)
                    frontier.append(target)
    return sorted(seen, key=_state_key)


def _solo_row(
    machine: BlockMachine, state: SoloState, index: Dict[SoloState, int]
) -> Tuple[List[IntPolynomial], IntPolynomial]:
    player, a, b = state
    m, o = machine.block_size, machine.overlap
    row = [ZERO] * len(index)
    row[index[state]] = row[index[state]] + ONE
    constant = ZERO
    for mask, weight in _block_outcomes(m, b):
        action = machine.action(mask)
        if action.is_commit:
            if action.index <= o:
                # the committed hat is the constrained overlap hat
                correct = ONE if a == WHITE else ZERO if a == BLACK else P
            else:
                correct = P
            constant = constant + weight * correct
        else:
            target = index[(player, FREE, _next_constraint(mask, m, o))]
            row[target] = row[target] - weight
    return row, constant


def build_renewal_system(mp: MachinePair) -> RenewalSystem:
    for player in (1, 2):
        if not mp.machine(player).has_commit:
            raise NonCommittingStrategyError(
                f"non-committing strategy: player {player} recurses on every pattern"
            )
    m, o = mp.block_size, mp.overlap
    solo_owner = {1: 1, 2: 1 if mp.is_symmetric else 2}

    def nxt(mask: int) -> str:
        return _next_constraint(mask, m, o)

    # joint reachability from (F, F) through rounds where both players recurse
    joint_seen = {(FREE, FREE)}
    frontier = [(FREE, FREE)]
    solo_seeds: Dict[int, set] = {1: set(), 2: set()}
    while frontier:
        c1, c2 = frontier.pop()
        for b1, _ in _block_outcomes(m, c1):
            for b2, _ in _block_outcomes(m, c2):
                act1 = mp.player1.action(b2)
                act2 = mp.player2.action(b1)
                if act1.is_commit and not act2.is_commit:
                    solo_seeds[solo_owner[2]].add((solo_owner[2], nxt(b2), nxt(b1)))
                elif act2.is_commit and not act1.is_commit:
                    solo_seeds[solo_owner[1]].add((solo_owner[1], nxt(b1), nxt(b2)))
                elif not act1.is_commit and not act2.is_commit:
                    target = (nxt(b1), nxt(b2))
                    if target not in joint_seen:
                        joint_seen.add(target)
                        frontier.append(target)
    joint_states = tuple(sorted(joint_seen, key=_state_key))

    solo_states: List[SoloState] = []
    for owner in sorted(set(solo_owner.values())):
        if solo_seeds[owner]:
            solo_states.extend(_solo_reach(mp.machine(owner), owner, sorted(solo_seeds[owner])))
    solo_index = {state: i for i, state in enumerate(solo_states)}

    solo_equations = None
    if solo_states:
        rows, rhs = [], []
        for state in solo_states:
            row, constant = _solo_row(mp.machine(state[0]), state, solo_index)
            rows.append([RationalFunction.of(c) for c in row])
            rhs.append(RationalFunction.of(constant))
        solo_equations = LinearSystem.build(rows, rhs)

    joint_index = {state: i for i, state in enumerate(joint_states)}
    joint_rows, joint_rhs, coupling_rows, continuation = [], [], [], []
    for state in joint_states:
        c1, c2 = state
        row = [ZERO] * len(joint_states)
        row[joint_index[state]] = ONE
        coupling = [ZERO] * len(solo_states)
        constant = ZERO
        both_recurse = ZERO
        for b1, w1 in _block_outcomes(m, c1):
            for b2, w2 in _block_outcomes(m, c2):
                weight = w1 * w2
                act1 = mp.player1.action(b2)
                act2 = mp.player2.action(b1)
                if act1.is_commit and act2.is_commit:
                    if (b1 >> (act1.index - 1)) & 1 and (b2 >> (act2.index - 1)) & 1:
                        constant = constant + weight
                elif act1.is_commit:
                    if (b1 >> (act1.index - 1)) & 1:
                        k = solo_index[(solo_owner[2], nxt(b2), nxt(b1))]
                        coupling[k] = coupling[k] + weight
                elif act2.is_commit:
                    if (b2 >> (act2.index - 1)) & 1:
                        k = solo_index[(solo_owner[1], nxt(b1), nxt(b2))]
                        coupling[k] = coupling[k] + weight
                else:
                    k = joint_index[(nxt(b1), nxt(b2))]
                    row[k] = row[k] - weight
                    both_recurse = both_recurse + weight
        joint_rows.append([RationalFunction.of(c) for c in row])
        joint_rhs.append(RationalFunction.of(constant))
        coupling_rows.append(tuple(RationalFunction.of(c) for c in coupling))
        continuation.append(RationalFunction.of(both_recurse))

    system = RenewalSystem(
        block_size=m,
        overlap=o,
        joint_states=joint_states,
        solo_states=tuple(solo_states),
        solo_equations=solo_equations,
        joint_equations=LinearSystem.build(joint_rows, joint_rhs),
        coupling=tuple(coupling_rows),
        continuation=tuple(continuation),
    )
    logger.debug(
        "renewal system built",
        extra={"joint_states": len(joint_states), "solo_states": len(solo_states)},
    )
    return system


@dataclass(frozen=True)
class ClosedForm:
    value: RationalFunction
    system_size: int
    continuation_ratios: Tuple[Tuple[JointState, RationalFunction], ...]
    solo_values: Tuple[Tuple[SoloState, RationalFunction], ...]

    def continuation_ratio_at(self, p) -> Fraction:
        """Largest per-round probability, over reachable joint states, that both players recurse."""
        return max(rf_eval(ratio, p) for _, ratio in self.continuation_ratios)

    def __call__(self, p) -> Fraction:
        return rf_eval(self.value, p)


def solve_renewal_system(
    system: RenewalSystem,
) -> Tuple[List[RationalFunction], List[RationalFunction]]:
    """Solve the solo block, substitute it, then solve the joint block."""
    solo = solve_linear_system(system.solo_equations) if system.solo_equations is not None else []
    rhs = []
    for constant, coupling in zip(system.joint_equations.rhs, system.coupling):
        total = constant
        for coefficient, value in zip(coupling, solo):
            if not coefficient.is_zero:
                total = total + coefficient * value
        rhs.append(total)
    joint = solve_linear_system(LinearSystem(system.joint_equations.matrix, tuple(rhs)))
    return solo, joint


@lru_cache(maxsize=256)
def derive_closed_form(mp: MachinePair) -> ClosedForm:
    system = build_renewal_system(mp)
    solo, joint = solve_renewal_system(system)
    value = joint[system.joint_states.index((FREE, FREE))]
    logger.debug("closed form derived", extra={"system_size": system.size, "value": str(value)})
    return ClosedForm(
        value=value,
        system_size=system.size,
        continuation_ratios=tuple(zip(system.joint_states, system.continuation)),
        solo_values=tuple(zip(system.solo_states, solo)),
    )


def tail_bound(mp: MachinePair, p, rounds: int) -> Fraction:
    """r(p)^rounds, bounding how far a truncation with `rounds` extra rounds can drift."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ProbabilityRangeError(f"probability out of range: {p}")
    if p in (0, 1):
        raise DegenerateProbabilityError(f"degenerate probability: {p}")
    if rounds < 0:
        raise ValueError("rounds must be non-negative")
    if rounds == 0:
        return Fraction(1)
    return derive_closed_form(mp).continuation_ratio_at(p) ** rounds
