"""Strategy-space searches over finite n-hat games.

Objectives are exact: with p = a/b reduced, a pair's win probability times b^(2n) is the
integer sum over winning cells of a^w (b - a)^(2n - w), w being the cell's white count.
Exhaustive scans enumerate "reduced" tables, where the entries for monochromatic opponent
inputs are fixed to hat 1; those entries never change the win rate, so every reduced table
stands for n^2 real ones (per player table for pairs, per shared table when symmetric).
"""

import itertools
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool
from typing import Any, Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
from tqdm import tqdm

from analysis.checkpoint import CheckpointManager, SearchCheckpoint
from config.logger import logger
from config.settings import SearchConfig
from errors import CheckpointError, InvalidStrategyError, SearchSpaceTooLargeError
from exact.rational import format_rational, parse_rational
from game.equivalence import canonical_form
from game.finite import (
    FinitePair,
    FiniteStrategy,
    WinCountVector,
    evaluate_pair,
    full_mask,
    popcounts,
)

PAIR_SCAN_MAX_HATS = 3
SYMMETRIC_SCAN_MAX_HATS = 4
CHECKPOINT_REQUIRED_HATS = 4
CLASS_COUNT_MAX_HATS = 3
# canonical forms are only computed while the optimum has at most this many reduced maximizers
CLASS_COUNT_LIMIT = 10_000
MAX_WITNESSES = 10
SIDEWAYS_PATIENCE = 3
_CELLS_PER_BATCH = 1 << 22


@dataclass(frozen=True)
class SearchReport:
    mode: str
    hats: int
    p: Fraction
    best_value: Fraction
    best_win_counts: WinCountVector
    optimum_count: Optional[int]
    class_count: Optional[int]
    witnesses: Tuple[FinitePair, ...]
    iterations: int
    wall_time: float = field(compare=False)
    complete: bool = True
    local_optimum: Optional[bool] = None

    @property
    def best_pair(self) -> FinitePair:
        return self.witnesses[0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "hats": self.hats,
            "p": format_rational(self.p),
            "best_value": format_rational(self.best_value),
            "best_value_decimal": float(self.best_value),
            "best_win_counts": list(self.best_win_counts.counts),
            "optimum_count": self.optimum_count,
            "class_count": self.class_count,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "iterations": self.iterations,
            "wall_time": self.wall_time,
            "complete": self.complete,
            "local_optimum": self.local_optimum,
        }


# --- exact integer objective -------------------------------------------------------------


def white_count_weights(hats: int, p: Fraction) -> Tuple[List[int], int]:
    """(coefficient per total white count, common denominator b^(2n))."""
    a, b = p.numerator, p.denominator
    n2 = 2 * hats
    return [a**w * (b - a) ** (n2 - w) for w in range(n2 + 1)], b**n2


def _cell_weights(hats: int, p: Fraction) -> np.ndarray:
    coef, _ = white_count_weights(hats, p)
    pc = popcounts(hats)
    white = pc[:, None] + pc[None, :]
    # int64 is exact while a full table of weights cannot overflow
    if max(coef) * (1 << (2 * hats)) < (1 << 62):
        return np.asarray(coef, dtype=np.int64)[white]
    return np.asarray(coef, dtype=object)[white]


def _free_masks(hats: int) -> List[int]:
    return list(range(1, full_mask(hats))) if hats > 1 else []


def reduced_table_count(hats: int) -> int:
    return hats ** len(_free_masks(hats))


def _reduced_tables(hats: int, lo: int, hi: int) -> np.ndarray:
    """Reduced tables lo..hi-1 in lexicographic order, as 0-based hat choices."""
    free = _free_masks(hats)
    units = np.arange(lo, hi, dtype=np.int64)
    tables = np.zeros((hi - lo, 1 << hats), dtype=np.int64)
    for i, mask in enumerate(free):
        place = hats ** (len(free) - 1 - i)
        tables[:, mask] = (units // place) % hats
    return tables


def _pair_from_choices(hats: int, t1: Sequence[int], t2: Sequence[int]) -> FinitePair:
    return FinitePair(
        FiniteStrategy(hats, tuple(int(c) + 1 for c in t1)),
        FiniteStrategy(hats, tuple(int(c) + 1 for c in t2)),
    )


# --- exhaustive scans --------------------------------------------------------------------


@dataclass
class _ScanState:
    best: Optional[int] = None
    optimum_count: int = 0
    witnesses: List[FinitePair] = field(default_factory=list)
    classes: Optional[Set[Tuple[int, ...]]] = field(default_factory=set)
    essential: int = 0

    def offer(self, value: int) -> bool:
        """Reset on a new maximum; True when `value` ties the current best."""
        if self.best is None or value > self.best:
            self.best = value
            self.optimum_count = 0
            self.witnesses = []
            self.classes = set()
            self.essential = 0
        return value == self.best

    def add_essentials(self, count: int) -> bool:
        """Account for reduced maximizers; False once classes are no longer tracked."""
        self.essential += count
        if self.classes is not None and self.essential > CLASS_COUNT_LIMIT:
            self.classes = None
        return self.classes is not None

    def merge(self, other: "_ScanState") -> None:
        if other.best is None:
            return
        if self.best is None or other.best > self.best:
            self.best = other.best
            self.optimum_count = other.optimum_count
            self.witnesses = list(other.witnesses)
            self.classes = None if other.classes is None else set(other.classes)
            self.essential = other.essential
            return
        if other.best < self.best:
            return
        self.optimum_count += other.optimum_count
        self.witnesses = (self.witnesses + other.witnesses)[:MAX_WITNESSES]
        if self.classes is not None and other.classes is not None:
            self.classes |= other.classes
        else:
            self.classes = None
        self.add_essentials(other.essential)


def _track_class(state: _ScanState, pair: FinitePair, hats: int) -> None:
    if hats <= CLASS_COUNT_MAX_HATS and state.classes is not None:
        state.classes.add(canonical_form(pair).sort_key())


def _scan_pairs_range(args) -> _ScanState:
    hats, p, lo, hi = args
    weights = _cell_weights(hats, p)
    masks = np.arange(1 << hats, dtype=np.int64)
    hat_bits = (masks[:, None] >> np.arange(hats)[None, :]) & 1
    hat_bits = hat_bits.astype(weights.dtype)
    full = full_mask(hats)
    batch = max(1, _CELLS_PER_BATCH // (1 << (2 * hats)))
    state = _ScanState()
    for start in range(lo, hi, batch):
        tables = _reduced_tables(hats, start, min(hi, start + batch))
        # correct1[k, x1, x2]: player 1 (table k) sees x2 and is right about x1
        correct1 = (masks[None, :, None] >> tables[:, None, :]) & 1
        # payoff[k, x1, t]: weight won when player 2 answers hat t+1 on seeing x1
        payoff = np.matmul(correct1.astype(weights.dtype) * weights, hat_bits)
        row_best = payoff.max(axis=2)
        values = row_best.sum(axis=1)
        batch_best = int(values.max())
        if not state.offer(batch_best):
            continue
        ties = payoff == row_best[:, :, None]
        for k in np.nonzero(values == batch_best)[0].tolist():
            answers = [np.nonzero(ties[k, x])[0].tolist() for x in range(1 << hats)]
            state.optimum_count += hats * hats * int(np.prod([len(a) for a in answers]))
            t1 = tables[k].tolist()
            if len(state.witnesses) < MAX_WITNESSES:
                for t2 in itertools.product(*answers):
                    state.witnesses.append(_pair_from_choices(hats, t1, t2))
                    if len(state.witnesses) == MAX_WITNESSES:
                        break
            essential = [[0] if x in (0, full) else answers[x] for x in range(1 << hats)]
            size = int(np.prod([len(a) for a in essential]))
            if state.add_essentials(size) and hats <= CLASS_COUNT_MAX_HATS:
                for t2 in itertools.product(*essential):
                    _track_class(state, _pair_from_choices(hats, t1, t2), hats)
    return state


def _scan_symmetric_range(args) -> _ScanState:
    hats, p, lo, hi = args
    weights = _cell_weights(hats, p)
    masks = np.arange(1 << hats, dtype=np.int64)
    batch = max(1, _CELLS_PER_BATCH // (1 << (2 * hats)))
    state = _ScanState()
    for start in range(lo, hi, batch):
        tables = _reduced_tables(hats, start, min(hi, start + batch))
        correct1 = (masks[None, :, None] >> tables[:, None, :]) & 1
        # player 2 uses the same table, so its correctness is the transpose
        win = correct1 & correct1.transpose(0, 2, 1)
        values = (win.astype(weights.dtype) * weights).sum(axis=(1, 2))
        batch_best = int(values.max())
        if not state.offer(batch_best):
            continue
        for k in np.nonzero(values == batch_best)[0].tolist():
            state.optimum_count += hats * hats
            table = tables[k].tolist()
            pair = _pair_from_choices(hats, table, table)
            if len(state.witnesses) < MAX_WITNESSES:
                state.witnesses.append(pair)
            if state.add_essentials(1) and hats <= CLASS_COUNT_MAX_HATS:
                _track_class(state, pair, hats)
    return state


def _split(lo: int, hi: int, parts: int) -> List[Tuple[int, int]]:
    parts = max(1, min(parts, hi - lo))
    bounds = [lo + (hi - lo) * k // parts for k in range(parts + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(parts)]


@contextmanager
def _worker_pool(workers: int) -> Iterator[Optional[Pool]]:
    if workers <= 1:
        yield None
        return
    with Pool(processes=workers) as pool:
        yield pool


def _progress(total: int, initial: int, progress: bool, unit: str) -> tqdm:
    return tqdm(
        total=total,
        initial=initial,
        unit=unit,
        file=sys.stderr,
        disable=not progress or not sys.stderr.isatty(),
    )


def _restore_scan(cfg: SearchConfig, saved: SearchCheckpoint) -> _ScanState:
    state = _ScanState()
    if saved.best_value is None:
        return state
    _, denominator = white_count_weights(cfg.hats, cfg.p)
    state.best = int(parse_rational(saved.best_value) * denominator)
    state.optimum_count = saved.optimum_count
    state.witnesses = [FinitePair.from_dict(w) for w in saved.witnesses]
    state.classes = None if saved.classes is None else {tuple(c) for c in saved.classes}
    state.essential = saved.essential_count
    return state


def _scan_checkpoint(
    cfg: SearchConfig, state: _ScanState, cursor: int, elapsed: float
) -> SearchCheckpoint:
    _, denominator = white_count_weights(cfg.hats, cfg.p)
    best_value = None if state.best is None else Fraction(state.best, denominator)
    return SearchCheckpoint(
        config_hash=cfg.config_hash(),
        cursor=cursor,
        best_value=None if best_value is None else format_rational(best_value),
        best_pair=state.witnesses[0].to_dict() if state.witnesses else None,
        rng_state=None,
        optimum_count=state.optimum_count,
        witnesses=[w.to_dict() for w in state.witnesses],
        classes=None if state.classes is None else [list(c) for c in sorted(state.classes)],
        essential_count=state.essential,
        iterations=cursor,
        elapsed=elapsed,
    )


def _load_checkpoint(
    cfg: SearchConfig,
) -> Tuple[Optional[CheckpointManager], Optional[SearchCheckpoint]]:
    if cfg.checkpoint_path is None:
        return None, None
    manager = CheckpointManager(cfg.checkpoint_path)
    saved = manager.load_for(cfg.config_hash())
    if saved is not None:
        logger.info(
            "resuming search from checkpoint",
            extra={"path": str(cfg.checkpoint_path), "cursor": saved.cursor},
        )
    return manager, saved


def _exhaustive(cfg: SearchConfig, mode: str, worker, progress: bool) -> SearchReport:
    n = cfg.hats
    total = reduced_table_count(n)
    started = time.monotonic()
    manager, saved = _load_checkpoint(cfg)
    state = _restore_scan(cfg, saved) if saved is not None else _ScanState()
    cursor = saved.cursor if saved is not None else 0
    elapsed_before = saved.elapsed if saved is not None else 0.0
    logger.info(
        "exhaustive search started",
        extra={"mode": mode, "hats": n, "p": format_rational(cfg.p), "tables": total},
    )

    chunks = 0
    with _worker_pool(cfg.workers) as pool, _progress(total, cursor, progress, "tables") as bar:
        while cursor < total:
            hi = min(total, cursor + cfg.checkpoint_interval)
            jobs = [(n, cfg.p, lo, up) for lo, up in _split(cursor, hi, cfg.workers)]
            parts = [worker(job) for job in jobs] if pool is None else pool.map(worker, jobs)
            for part in parts:
                state.merge(part)
            bar.update(hi - cursor)
            cursor = hi
            chunks += 1
            elapsed = elapsed_before + time.monotonic() - started
            if manager is not None:
                manager.save(_scan_checkpoint(cfg, state, cursor, elapsed))
            logger.info(
                "search progress",
                extra={
                    "cursor": cursor,
                    "total": total,
                    "best_scaled": state.best,
                    "optimum_count": state.optimum_count,
                    "elapsed": round(elapsed, 3),
                },
            )
            if cfg.stop_after_chunks is not None and chunks >= cfg.stop_after_chunks:
                break

    _, denominator = white_count_weights(n, cfg.p)
    best_value = Fraction(state.best, denominator)
    class_count = None
    if n <= CLASS_COUNT_MAX_HATS and state.classes is not None:
        class_count = len(state.classes)
    report = SearchReport(
        mode=mode,
        hats=n,
        p=cfg.p,
        best_value=best_value,
        best_win_counts=evaluate_pair(state.witnesses[0]),
        optimum_count=state.optimum_count,
        class_count=class_count,
        witnesses=tuple(state.witnesses),
        iterations=cursor,
        wall_time=time.monotonic() - started,
        complete=cursor >= total,
    )
    logger.info(
        "exhaustive search finished",
        extra={
            "mode": mode,
            "best_value": format_rational(best_value),
            "optimum_count": report.optimum_count,
            "class_count": class_count,
            "complete": report.complete,
        },
    )
    return report


def exhaustive_pairs(cfg: SearchConfig, progress: bool = False) -> SearchReport:
    """Best pair (f1, f2) over the whole strategy space; n <= 3.

    For a fixed player-1 table the objective splits over player 2's entries, so each
    reduced player-1 table is scored against all of player 2's tables at once: the best
    answer to every input is taken independently and the optimum count is the product of
    the number of tied answers.
    """
    n = cfg.hats
    if n > PAIR_SCAN_MAX_HATS:
        raise SearchSpaceTooLargeError((n ** (1 << n)) ** 2, f"{PAIR_SCAN_MAX_HATS}-hat pair")
    return _exhaustive(cfg, "exhaustive", _scan_pairs_range, progress)


def exhaustive_symmetric(cfg: SearchConfig, progress: bool = False) -> SearchReport:
    """Best single table used by both players; n <= 4, and n = 4 must checkpoint."""
    n = cfg.hats
    if n > SYMMETRIC_SCAN_MAX_HATS:
        raise SearchSpaceTooLargeError(n ** (1 << n), f"{SYMMETRIC_SCAN_MAX_HATS}-hat symmetric")
    if n >= CHECKPOINT_REQUIRED_HATS and cfg.checkpoint_path is None:
        raise CheckpointError(
            f"symmetric search on {n} hats is long-running and needs a checkpoint path"
        )
    return _exhaustive(cfg, "symmetric", _scan_symmetric_range, progress)


# --- incremental evaluation --------------------------------------------------------------


def _popcount_onehot(hats: int) -> np.ndarray:
    pc = popcounts(hats)
    onehot = np.zeros((1 << hats, hats + 1), dtype=np.int64)
    onehot[np.arange(1 << hats), pc] = 1
    return onehot


def _entry_counts(
    hats: int,
    onehot: np.ndarray,
    other_table: np.ndarray,
    mask: int,
    candidates: np.ndarray,
) -> np.ndarray:
    """Winning cells along one table entry, per candidate choice and white count.

    The entry answers opponent input `mask`; the cells it touches are (x, mask) for the
    owner's configuration x, and x wins when bit c of x is set and the opponent, seeing x,
    picks a hat that is white in `mask`.
    """
    masks = np.arange(1 << hats, dtype=np.int64)
    own_right = (masks[None, :] >> candidates[:, None]) & 1
    other_right = (mask >> other_table) & 1
    shift = bin(mask).count("1")
    counts = np.zeros((candidates.size, 2 * hats + 1), dtype=np.int64)
    counts[:, shift : shift + hats + 1] = (own_right & other_right[None, :]) @ onehot
    return counts


def _symmetric_entry_counts(
    hats: int, onehot: np.ndarray, table: np.ndarray, mask: int, candidates: np.ndarray
) -> np.ndarray:
    """Same as _entry_counts when both players share `table`.

    Changing f(mask) moves player 1's answer on column `mask` and player 2's on row `mask`;
    off the diagonal the two cells (x, mask) and (mask, x) win together.
    """
    masks = np.arange(1 << hats, dtype=np.int64)
    own_right = (masks[None, :] >> candidates[:, None]) & 1
    other_right = (mask >> table) & 1
    cells = own_right & other_right[None, :]
    cells[:, mask] = 0
    shift = bin(mask).count("1")
    counts = np.zeros((candidates.size, 2 * hats + 1), dtype=np.int64)
    counts[:, shift : shift + hats + 1] = 2 * (cells @ onehot)
    counts[:, 2 * shift] += (mask >> candidates) & 1
    return counts


def delta_evaluate(
    pair: FinitePair, counts: WinCountVector, player: int, input_mask: int, new_choice: int
) -> WinCountVector:
    """Win counts after setting `player`'s answer to `input_mask` to `new_choice`.

    Touches only the 2^n cells in that input's row or column of the grid.
    """
    n = pair.hats
    if player not in (1, 2):
        raise InvalidStrategyError(f"player must be 1 or 2, got {player}")
    if not 1 <= new_choice <= n:
        raise InvalidStrategyError(f"choice {new_choice} is not a hat in 1..{n}")
    if not 0 <= input_mask <= full_mask(n):
        raise InvalidStrategyError(f"mask {input_mask} does not fit {n} hats")
    own = pair.strategy(player)
    other = pair.strategy(2 if player == 1 else 1)
    current = own.choice(input_mask)
    candidates = np.array([current - 1, new_choice - 1], dtype=np.int64)
    other_table = np.asarray(other.table, dtype=np.int64) - 1
    touched = _entry_counts(n, _popcount_onehot(n), other_table, input_mask, candidates)
    updated = np.asarray(counts.counts, dtype=np.int64) + touched[1] - touched[0]
    return WinCountVector(n, tuple(int(c) for c in updated))


# --- hill climbing -----------------------------------------------------------------------


@dataclass(frozen=True)
class _ClimbResult:
    restart: int
    value: int
    table1: Tuple[int, ...]
    table2: Tuple[int, ...]
    iterations: int
    local_optimum: bool


def _climb(args) -> _ClimbResult:
    hats, p, seed, restart, symmetric, max_iterations, sideways = args
    rng = np.random.default_rng(seed ^ restart)
    size = 1 << hats
    coef, _ = white_count_weights(hats, p)
    coef = np.asarray(coef, dtype=object)
    onehot = _popcount_onehot(hats)
    candidates = np.arange(hats, dtype=np.int64)

    table1 = rng.integers(0, hats, size=size, dtype=np.int64)
    table2 = table1 if symmetric else rng.integers(0, hats, size=size, dtype=np.int64)
    pair = _pair_from_choices(hats, table1, table2)
    counts = np.asarray(evaluate_pair(pair).counts, dtype=np.int64)
    value = int(counts.astype(object) @ coef)

    free = _free_masks(hats)
    if symmetric:
        entries = [(1, m) for m in free]
    else:
        entries = [(1, m) for m in free] + [(2, m) for m in free]

    iterations = 0
    stale = 0
    local_optimum = False
    capped = False
    while not capped:
        allow_sideways = sideways and stale < SIDEWAYS_PATIENCE
        improved = False
        for index in rng.permutation(len(entries)).tolist():
            if iterations + hats - 1 > max_iterations:
                capped = True
                break
            iterations += hats - 1
            player, mask = entries[index]
            if symmetric:
                table = table1
                touched = _symmetric_entry_counts(hats, onehot, table1, mask, candidates)
            elif player == 1:
                table = table1
                touched = _entry_counts(hats, onehot, table2, mask, candidates)
            else:
                table = table2
                touched = _entry_counts(hats, onehot, table1, mask, candidates)
            current = int(table[mask])
            deltas = [int(d) for d in (touched - touched[current]).astype(object) @ coef]
            best = max(deltas)
            if best > 0:
                choice = deltas.index(best)
                improved = True
            elif allow_sideways and best == 0:
                level = [c for c, d in enumerate(deltas) if d == 0 and c != current]
                if not level:
                    continue
                choice = level[int(rng.integers(len(level)))]
            else:
                continue
            table[mask] = choice
            counts += touched[choice] - touched[current]
            value += deltas[choice]
        if capped:
            break
        if improved:
            stale = 0
        elif not allow_sideways:
            # a full sweep without sideways moves found nothing: every mutation was checked
            local_optimum = True
            break
        else:
            stale += 1

    return _ClimbResult(
        restart=restart,
        value=value,
        table1=tuple(int(c) + 1 for c in table1),
        table2=tuple(int(c) + 1 for c in table2),
        iterations=iterations,
        local_optimum=local_optimum,
    )


@dataclass
class _ClimbState:
    best: Optional[int] = None
    witnesses: Dict[Tuple[int, ...], bool] = field(default_factory=dict)
    iterations: int = 0

    def add(self, result: _ClimbResult) -> None:
        self.iterations += result.iterations
        key = result.table1 + result.table2
        if self.best is None or result.value > self.best:
            self.best = result.value
            self.witnesses = {key: result.local_optimum}
        elif result.value == self.best:
            self.witnesses[key] = self.witnesses.get(key, False) or result.local_optimum
        # only the lexicographically smallest witnesses can ever be reported
        if len(self.witnesses) > MAX_WITNESSES:
            kept = sorted(self.witnesses)[:MAX_WITNESSES]
            self.witnesses = {k: self.witnesses[k] for k in kept}

    def ordered(self, hats: int) -> List[Tuple[FinitePair, bool]]:
        size = 1 << hats
        return [
            (
                FinitePair(FiniteStrategy(hats, k[:size]), FiniteStrategy(hats, k[size:])),
                flag,
            )
            for k, flag in sorted(self.witnesses.items())
        ]


def _climb_checkpoint(
    cfg: SearchConfig, state: _ClimbState, cursor: int, elapsed: float
) -> SearchCheckpoint:
    _, denominator = white_count_weights(cfg.hats, cfg.p)
    ordered = state.ordered(cfg.hats)
    best_value = None if state.best is None else Fraction(state.best, denominator)
    witnesses = [dict(pair.to_dict(), local_optimum=flag) for pair, flag in ordered]
    return SearchCheckpoint(
        config_hash=cfg.config_hash(),
        cursor=cursor,
        best_value=None if best_value is None else format_rational(best_value),
        best_pair=ordered[0][0].to_dict() if ordered else None,
        rng_state={"generator": "PCG64", "seeding": "seed xor restart", "next_restart": cursor},
        optimum_count=0,
        witnesses=witnesses,
        iterations=state.iterations,
        local_optimum=ordered[0][1] if ordered else None,
        elapsed=elapsed,
    )


def _restore_climb(cfg: SearchConfig, saved: SearchCheckpoint) -> _ClimbState:
    state = _ClimbState(iterations=saved.iterations)
    if saved.best_value is not None:
        _, denominator = white_count_weights(cfg.hats, cfg.p)
        state.best = int(parse_rational(saved.best_value) * denominator)
        for w in saved.witnesses:
            pair = FinitePair.from_dict(w)
            state.witnesses[pair.sort_key()] = bool(w.get("local_optimum", False))
    return state


def hill_climb(cfg: SearchConfig, progress: bool = False) -> SearchReport:
    """Random-restart single-entry hill climbing; restarts are seeded with seed ^ restart."""
    n = cfg.hats
    started = time.monotonic()
    manager, saved = _load_checkpoint(cfg)
    state = _restore_climb(cfg, saved) if saved is not None else _ClimbState()
    cursor = saved.cursor if saved is not None else 0
    elapsed_before = saved.elapsed if saved is not None else 0.0
    logger.info(
        "hill climb started",
        extra={
            "hats": n,
            "p": format_rational(cfg.p),
            "restarts": cfg.restarts,
            "symmetric": cfg.symmetric,
            "seed": cfg.seed,
        },
    )

    chunks = 0
    with _worker_pool(cfg.workers) as pool, _progress(
        cfg.restarts, cursor, progress, "restarts"
    ) as bar:
        while cursor < cfg.restarts:
            hi = min(cfg.restarts, cursor + cfg.checkpoint_interval)
            jobs = [
                (n, cfg.p, cfg.seed, r, cfg.symmetric, cfg.max_iterations, cfg.sideways_moves)
                for r in range(cursor, hi)
            ]
            results = [_climb(job) for job in jobs] if pool is None else pool.map(_climb, jobs)
            for result in results:
                state.add(result)
                bar.update(1)
            cursor = hi
            chunks += 1
            elapsed = elapsed_before + time.monotonic() - started
            if manager is not None:
                manager.save(_climb_checkpoint(cfg, state, cursor, elapsed))
            logger.info(
                "hill climb progress",
                extra={"restarts_done": cursor, "best_scaled": state.best, "elapsed": elapsed},
            )
            if cfg.stop_after_chunks is not None and chunks >= cfg.stop_after_chunks:
                break

    _, denominator = white_count_weights(n, cfg.p)
    ordered = state.ordered(n)
    best_value = Fraction(state.best, denominator)
    report = SearchReport(
        mode="hillclimb",
        hats=n,
        p=cfg.p,
        best_value=best_value,
        best_win_counts=evaluate_pair(ordered[0][0]),
        optimum_count=None,
        class_count=None,
        witnesses=tuple(pair for pair, _ in ordered),
        iterations=state.iterations,
        wall_time=time.monotonic() - started,
        complete=cursor >= cfg.restarts,
        local_optimum=ordered[0][1],
    )
    logger.info(
        "hill climb finished",
        extra={
            "best_value": format_rational(best_value),
            "iterations": report.iterations,
            "local_optimum": report.local_optimum,
        },
    )
    return report


def run_search(cfg: SearchConfig, progress: bool = False) -> SearchReport:
    if cfg.mode == "hillclimb":
        return hill_climb(cfg, progress)
    if cfg.symmetric:
        return exhaustive_symmetric(cfg, progress)
    return exhaustive_pairs(cfg, progress)
