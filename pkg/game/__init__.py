from game.block_machine import (
    BUILTIN_NAMES,
    BlockAction,
    BlockMachine,
    MachinePair,
    builtin_machine,
    dual_machine,
    truncate_to_finite,
)
from game.equivalence import canonical_form, normalize_dont_care, relabel_pair
from game.finite import (
    FinitePair,
    FiniteStrategy,
    HatConfig,
    WinCountVector,
    dual_finite,
    evaluate_pair,
    player_marginal,
    swap_players,
    win_polynomial,
    win_probability,
    winning_cells,
)
from game.permutation import Permutation
from game.renewal import ClosedForm, build_renewal_system, derive_closed_form, tail_bound

__all__ = [
    "BUILTIN_NAMES",
    "BlockAction",
    "BlockMachine",
    "ClosedForm",
    "FinitePair",
    "FiniteStrategy",
    "HatConfig",
    "MachinePair",
    "Permutation",
    "WinCountVector",
    "build_renewal_system",
    "builtin_machine",
    "canonical_form",
    "derive_closed_form",
    "dual_finite",
    "dual_machine",
    "evaluate_pair",
    "normalize_dont_care",
    "player_marginal",
    "relabel_pair",
    "swap_players",
    "tail_bound",
    "truncate_to_finite",
    "win_polynomial",
    "win_probability",
    "winning_cells",
]
