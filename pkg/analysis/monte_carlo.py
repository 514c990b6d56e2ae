import math
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from analysis.rng import CounterRNG
from config.logger import logger
from config.settings import SimulationConfig
from game.block_machine import BlockMachine, MachinePair
from game.finite import FinitePair, full_mask

EVENTS = ("WW", "WB", "BW", "BB", "unresolved")
NEVER = np.iinfo(np.int64).max
# blocks the remaining player may use alone once the other has committed
SOLO_BLOCK_LIMIT = 10**4


@dataclass(frozen=True)
class SimulationReport:
    trials: int
    wins: int
    unresolved: int
    estimate: float
    stderr: float
    event_counts: Dict[str, int] = field(hash=False)
    seed: int
    max_blocks: Optional[int]

    @property
    def losses(self) -> int:
        return self.trials - self.wins - self.unresolved

    @property
    def player1_white(self) -> int:
        return self.event_counts["WW"] + self.event_counts["WB"]

    @property
    def player2_white(self) -> int:
        return self.event_counts["WW"] + self.event_counts["BW"]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "trials": self.trials,
            "wins": self.wins,
            "unresolved": self.unresolved,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "event_counts": dict(self.event_counts),
            "seed": self.seed,
            "max_blocks": self.max_blocks,
        }


def _report(tallies: Dict[str, int], trials: int, seed: int, max_blocks) -> SimulationReport:
    wins = tallies["WW"]
    estimate = wins / trials
    stderr = math.sqrt(estimate * (1.0 - estimate) / trials)
    return SimulationReport(
        trials=trials,
        wins=wins,
        unresolved=tallies["unresolved"],
        estimate=estimate,
        stderr=stderr,
        event_counts={name: int(tallies[name]) for name in EVENTS},
        seed=seed,
        max_blocks=max_blocks,
    )


def _tally(correct1: np.ndarray, correct2: np.ndarray, unresolved: np.ndarray) -> Dict[str, int]:
    resolved = ~unresolved
    return {
        "WW": int(np.count_nonzero(resolved & correct1 & correct2)),
        "WB": int(np.count_nonzero(resolved & correct1 & ~correct2)),
        "BW": int(np.count_nonzero(resolved & ~correct1 & correct2)),
        "BB": int(np.count_nonzero(resolved & ~correct1 & ~correct2)),
        "unresolved": int(np.count_nonzero(unresolved)),
    }


def _merge(parts: List[Dict[str, int]]) -> Dict[str, int]:
    return {name: sum(part[name] for part in parts) for name in EVENTS}


def _action_arrays(machine: BlockMachine) -> np.ndarray:
    """Commit index per pattern mask, 0 for recurse."""
    return np.array([a.index if a.is_commit else 0 for a in machine.table], dtype=np.int64)


def _run_player_constant(
    machine: BlockMachine, size: int, p: float
) -> Tuple[np.ndarray, np.ndarray]:
    """p in {0, 1}: every block looks the same, so the first block decides forever."""
    action = machine.action(full_mask(machine.block_size) if p == 1.0 else 0)
    correct = np.full(size, p == 1.0 and action.is_commit, dtype=bool)
    commit_block = np.full(size, 0 if action.is_commit else NEVER, dtype=np.int64)
    return correct, commit_block


def _run_player(
    rng: CounterRNG,
    machine: BlockMachine,
    own_keys: np.ndarray,
    opponent_keys: np.ndarray,
    p: float,
    block_limit: int,
) -> Tuple[np.ndarray, np.ndarray]:
    """Returns (correct, commit block) for one player; NEVER when no commit by block_limit."""
    size = own_keys.shape[0]
    if p in (0.0, 1.0):
        return _run_player_constant(machine, size, p)
    actions = _action_arrays(machine)
    m, shift = machine.block_size, machine.shift
    correct = np.zeros(size, dtype=bool)
    commit_block = np.full(size, NEVER, dtype=np.int64)
    active = np.arange(size)
    for block in range(block_limit):
        if active.size == 0:
            break
        start = block * shift
        pattern = np.zeros(active.size, dtype=np.int64)
        for j in range(m):
            pattern |= rng.white(opponent_keys[active], start + j, p).astype(np.int64) << j
        choice = actions[pattern]
        committed = choice > 0
        if np.any(committed):
            done = active[committed]
            pick = start + choice[committed] - 1
            correct[done] = rng.white(own_keys[done], pick, p)
            commit_block[done] = block
        active = active[~committed]
    return correct, commit_block


def _simulate_machine_chunk(args) -> Dict[str, int]:
    mp, p, start, stop, seed, max_blocks, batch_size = args
    rng = CounterRNG(seed)
    parts = []
    for lo in range(start, stop, batch_size):
        trials = np.arange(lo, min(stop, lo + batch_size), dtype=np.uint64)
        keys1 = rng.player_keys(trials, 1)
        keys2 = rng.player_keys(trials, 2)
        limit = max_blocks + SOLO_BLOCK_LIMIT
        correct1, block1 = _run_player(rng, mp.player1, keys1, keys2, p, limit)
        correct2, block2 = _run_player(rng, mp.player2, keys2, keys1, p, limit)
        # max_blocks caps the rounds in which both players are still looking
        unresolved = (np.minimum(block1, block2) >= max_blocks) | (block1 == NEVER)
        unresolved |= block2 == NEVER
        parts.append(_tally(correct1, correct2, unresolved))
    return _merge(parts)


def _simulate_finite_chunk(args) -> Dict[str, int]:
    pair, p, start, stop, seed, _, batch_size = args
    rng = CounterRNG(seed)
    table1 = np.asarray(pair.player1.table, dtype=np.int64) - 1
    table2 = np.asarray(pair.player2.table, dtype=np.int64) - 1
    parts = []
    for lo in range(start, stop, batch_size):
        trials = np.arange(lo, min(stop, lo + batch_size), dtype=np.uint64)
        keys1 = rng.player_keys(trials, 1)
        keys2 = rng.player_keys(trials, 2)
        x1 = np.zeros(trials.size, dtype=np.int64)
        x2 = np.zeros(trials.size, dtype=np.int64)
        for j in range(pair.hats):
            x1 |= rng.white(keys1, j, p).astype(np.int64) << j
            x2 |= rng.white(keys2, j, p).astype(np.int64) << j
        correct1 = ((x1 >> table1[x2]) & 1).astype(bool)
        correct2 = ((x2 >> table2[x1]) & 1).astype(bool)
        parts.append(_tally(correct1, correct2, np.zeros(trials.size, dtype=bool)))
    return _merge(parts)


def _ranges(trials: int, workers: int) -> List[Tuple[int, int]]:
    workers = max(1, min(workers, trials))
    bounds = [trials * k // workers for k in range(workers + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(workers)]


def _run(worker, subject, cfg: SimulationConfig, max_blocks) -> Dict[str, int]:
    jobs = [
        (subject, cfg.p, lo, hi, cfg.seed, max_blocks, cfg.batch_size)
        for lo, hi in _ranges(cfg.trials, cfg.workers)
    ]
    if len(jobs) == 1:
        return worker(jobs[0])
    with Pool(processes=len(jobs)) as pool:
        return _merge(pool.map(worker, jobs))


def simulate_machine_pair(
    mp: MachinePair,
    p: float,
    trials: int,
    seed: int,
    max_blocks: int = 10**4,
    workers: int = 1,
) -> SimulationReport:
    """Play the infinite game block by block.

    max_blocks caps the rounds in which neither player has committed. Once one player
    commits, the other keeps reading blocks alone for up to SOLO_BLOCK_LIMIT more. Trials
    left undecided are reported as unresolved and count as losses in the estimate.
    """
    cfg = SimulationConfig(p=p, trials=trials, seed=seed, max_blocks=max_blocks, workers=workers)
    logger.info(
        "machine simulation started",
        extra={"trials": trials, "p": p, "seed": seed, "workers": cfg.workers},
    )
    tallies = _run(_simulate_machine_chunk, mp, cfg, cfg.max_blocks)
    report = _report(tallies, cfg.trials, cfg.seed, cfg.max_blocks)
    logger.info(
        "machine simulation finished",
        extra={"estimate": report.estimate, "unresolved": report.unresolved},
    )
    return report


def simulate_finite_pair(
    pair: FinitePair, p: float, trials: int, seed: int, workers: int = 1
) -> SimulationReport:
    cfg = SimulationConfig(p=p, trials=trials, seed=seed, workers=workers)
    tallies = _run(_simulate_finite_chunk, pair, cfg, None)
    report = _report(tallies, cfg.trials, cfg.seed, None)
    logger.info("finite simulation finished", extra={"estimate": report.estimate})
    return report
