"""Block machines: infinite-stack strategies that read the opponent's hats in fixed blocks.

A machine inspects the opponent's block of `block_size` hats. It either commits to one of
its own hats inside the aligned block or recurses, shifting both blocks by
block_size - overlap.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple, Union

from errors import InvalidStrategyError, UnknownStrategyError
from game.finite import (
    FinitePair,
    FiniteStrategy,
    MAX_HATS,
    full_mask,
    mask_to_pattern,
    pattern_to_mask,
)
from game.reference import ALTERNATIVE_THREE_HAT_CHOICES, OPTIMAL_THREE_HAT_CHOICES

MAX_BLOCK_SIZE = 4
RECURSE_TOKEN = "recurse"
FALLBACK_HAT = 1


@dataclass(frozen=True)
class BlockAction:
    """Commit(index) when index is set, otherwise Recurse."""

    index: Optional[int] = None

    @property
    def is_commit(self) -> bool:
        return self.index is not None

    def to_json(self) -> Union[int, str]:
        return self.index if self.index is not None else RECURSE_TOKEN

    def __str__(self) -> str:
        return f"commit({self.index})" if self.is_commit else RECURSE_TOKEN


RECURSE = BlockAction()


def commit(index: int) -> BlockAction:
    return BlockAction(index)


@dataclass(frozen=True)
class BlockMachine:
    """table[mask] is the action for the opponent block whose white hats are given by mask."""

    block_size: int
    overlap: int
    table: Tuple[BlockAction, ...]

    def __post_init__(self) -> None:
        m = self.block_size
        if not 1 <= m <= MAX_BLOCK_SIZE:
            raise InvalidStrategyError(f"block size must be 1..{MAX_BLOCK_SIZE}, got {m}")
        if self.overlap not in (0, 1) or self.overlap >= m:
            raise InvalidStrategyError(
                f"overlap must be 0 or 1 and below the block size, got {self.overlap}"
            )
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != 1 << m:
            raise InvalidStrategyError(f"machine table needs {1 << m} patterns")
        for action in self.table:
            if action.is_commit and not 1 <= action.index <= m:
                raise InvalidStrategyError(f"commit index {action.index} outside 1..{m}")

    @classmethod
    def from_choices(
        cls, block_size: int, overlap: int, choices: Dict[str, Union[int, str]]
    ) -> "BlockMachine":
        """Build from {"WBB": 1, "WWW": "recurse", ...}; every pattern must be listed."""
        table: list = [None] * (1 << block_size)
        for pattern, choice in choices.items():
            if len(pattern) != block_size:
                raise InvalidStrategyError(f"pattern {pattern!r} is not {block_size} hats long")
            table[pattern_to_mask(pattern)] = _parse_action(choice)
        missing = [mask_to_pattern(m, block_size) for m, a in enumerate(table) if a is None]
        if missing:
            raise InvalidStrategyError(f"machine table is missing patterns {missing}")
        return cls(block_size, overlap, tuple(table))

    @property
    def shift(self) -> int:
        return self.block_size - self.overlap

    @property
    def has_commit(self) -> bool:
        return any(action.is_commit for action in self.table)

    def action(self, pattern_mask: int) -> BlockAction:
        return self.table[pattern_mask]

    def choices(self) -> Dict[str, Union[int, str]]:
        return {
            mask_to_pattern(mask, self.block_size): action.to_json()
            for mask, action in enumerate(self.table)
        }

    def to_dict(self) -> Dict[str, Any]:
        return {"block_size": self.block_size, "overlap": self.overlap, "table": self.choices()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BlockMachine":
        try:
            return cls.from_choices(int(data["block_size"]), int(data["overlap"]), data["table"])
        except (KeyError, TypeError, AttributeError) as exc:
            raise InvalidStrategyError(f"malformed block-machine document: {exc}") from exc


def _parse_action(choice: Union[int, str]) -> BlockAction:
    if isinstance(choice, str):
        if choice.strip().lower() == RECURSE_TOKEN:
            return RECURSE
        if not choice.strip().isdigit():
            raise InvalidStrategyError(f"unknown block action {choice!r}")
        choice = int(choice)
    if isinstance(choice, bool) or not isinstance(choice, int):
        raise InvalidStrategyError(f"unknown block action {choice!r}")
    return commit(choice)


@dataclass(frozen=True)
class MachinePair:
    player1: BlockMachine
    player2: BlockMachine

    def __post_init__(self) -> None:
        if (
            self.player1.block_size != self.player2.block_size
            or self.player1.overlap != self.player2.overlap
        ):
            raise InvalidStrategyError("both machines must share block size and overlap")

    @classmethod
    def symmetric(cls, machine: BlockMachine) -> "MachinePair":
        return cls(machine, machine)

    @property
    def block_size(self) -> int:
        return self.player1.block_size

    @property
    def overlap(self) -> int:
        return self.player1.overlap

    @property
    def is_symmetric(self) -> bool:
        return self.player1 == self.player2

    def machine(self, player: int) -> BlockMachine:
        return self.player1 if player == 1 else self.player2

    def to_dict(self) -> Dict[str, Any]:
        if self.is_symmetric:
            return {**self.player1.to_dict(), "symmetric": True}
        return {"player1": self.player1.to_dict(), "player2": self.player2.to_dict()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MachinePair":
        if not isinstance(data, dict):
            raise InvalidStrategyError("block-machine document must be a JSON object")
        if "player1" in data or "player2" in data:
            if "player1" not in data or "player2" not in data:
                raise InvalidStrategyError("asymmetric machine documents need player1 and player2")
            return cls(
                BlockMachine.from_dict(data["player1"]), BlockMachine.from_dict(data["player2"])
            )
        return cls.symmetric(BlockMachine.from_dict(data))


def _three_hat_machine(choices: Dict[str, int], overlap: int) -> BlockMachine:
    table = [RECURSE] * 8
    for pattern, choice in choices.items():
        mask = pattern_to_mask(pattern)
        if mask not in (0, 7):
            table[mask] = commit(choice)
    return BlockMachine(3, overlap, tuple(table))


def dual_block_machine(machine: BlockMachine) -> BlockMachine:
    full = full_mask(machine.block_size)
    return BlockMachine(
        machine.block_size,
        machine.overlap,
        tuple(machine.table[full ^ mask] for mask in range(full + 1)),
    )


def dual_machine(mp: MachinePair) -> MachinePair:
    """Swap the roles of white and black in what each player observes."""
    return MachinePair(dual_block_machine(mp.player1), dual_block_machine(mp.player2))


FIRST_WHITE_MACHINE = BlockMachine(1, 0, (RECURSE, commit(1)))
FIRST_BLACK_MACHINE = BlockMachine(1, 0, (commit(1), RECURSE))

BUILTIN_NAMES = ("S1", "S2", "S3", "S4", "FIRST_WHITE", "FIRST_BLACK")


def _builtin_table() -> Dict[str, MachinePair]:
    s1 = MachinePair.symmetric(_three_hat_machine(OPTIMAL_THREE_HAT_CHOICES, overlap=1))
    return {
        "S1": s1,
        "S2": MachinePair.symmetric(_three_hat_machine(OPTIMAL_THREE_HAT_CHOICES, overlap=0)),
        "S3": dual_machine(s1),
        "S4": MachinePair.symmetric(_three_hat_machine(ALTERNATIVE_THREE_HAT_CHOICES, overlap=1)),
        "FIRST_WHITE": MachinePair.symmetric(FIRST_WHITE_MACHINE),
        "FIRST_BLACK": MachinePair.symmetric(FIRST_BLACK_MACHINE),
    }


_BUILTINS = _builtin_table()


def normalize_builtin_name(name: str) -> str:
    return name.strip().upper().replace("-", "_")


def is_builtin_name(name: str) -> bool:
    return normalize_builtin_name(name) in _BUILTINS


def builtin_machine(name: str) -> MachinePair:
    key = normalize_builtin_name(name)
    if key not in _BUILTINS:
        raise UnknownStrategyError(name)
    return _BUILTINS[key]


def _truncate_machine(machine: BlockMachine, hats: int) -> FiniteStrategy:
    m, shift = machine.block_size, machine.shift
    block = full_mask(m)
    table = []
    for opponent in range(1 << hats):
        start = 0
        choice = FALLBACK_HAT
        while start + m <= hats:
            action = machine.action((opponent >> start) & block)
            if action.is_commit:
                choice = start + action.index
                break
            start += shift
        table.append(choice)
    return FiniteStrategy(hats, tuple(table))


def truncate_to_finite(mp: MachinePair, hats: int) -> FinitePair:
    """Unroll both machines on the first `hats` hats; exhausting the blocks falls back to hat 1."""
    if hats < mp.block_size:
        raise InvalidStrategyError(
            f"cannot truncate a block-{mp.block_size} machine to {hats} hats"
        )
    if hats > MAX_HATS:
        raise InvalidStrategyError(f"finite games are limited to {MAX_HATS} hats")
    player1 = _truncate_machine(mp.player1, hats)
    player2 = player1 if mp.is_symmetric else _truncate_machine(mp.player2, hats)
    return FinitePair(player1, player2)
