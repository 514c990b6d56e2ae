from analysis.bounds import (
    BoundRecord,
    CurveRow,
    derivative_diagnostics,
    emit_curve,
    lower_envelope,
    parse_grid,
    strategy_table,
    upper_bound,
)
from analysis.checkpoint import CheckpointManager, SearchCheckpoint
from analysis.monte_carlo import SimulationReport, simulate_finite_pair, simulate_machine_pair
from analysis.search import (
    SearchReport,
    delta_evaluate,
    exhaustive_pairs,
    exhaustive_symmetric,
    hill_climb,
    run_search,
)

__all__ = [
    "BoundRecord",
    "CheckpointManager",
    "CurveRow",
    "SearchCheckpoint",
    "SearchReport",
    "SimulationReport",
    "delta_evaluate",
    "derivative_diagnostics",
    "emit_curve",
    "exhaustive_pairs",
    "exhaustive_symmetric",
    "hill_climb",
    "lower_envelope",
    "parse_grid",
    "run_search",
    "simulate_finite_pair",
    "simulate_machine_pair",
    "strategy_table",
    "upper_bound",
]
