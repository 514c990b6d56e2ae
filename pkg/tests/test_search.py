import os
import random
from fractions import Fraction
from itertools import product

import pytest

from analysis.search import (
    SearchReport,
    delta_evaluate,
    exhaustive_pairs,
    exhaustive_symmetric,
    hill_climb,
    reduced_table_count,
    run_search,
    white_count_weights,
)
from config.settings import SearchConfig
from errors import CheckpointError, InvalidStrategyError, SearchSpaceTooLargeError
from game.block_machine import builtin_machine, truncate_to_finite
from game.equivalence import are_equivalent
from game.finite import FinitePair, FiniteStrategy, evaluate_pair, win_probability
from game.reference import optimal_three_hat_pair

run_slow = pytest.mark.skipif(
    os.getenv("HATLAB_RUN_SLOW") != "1", reason="set HATLAB_RUN_SLOW=1 for long searches"
)


def all_tables(hats: int):
    for table in product(range(1, hats + 1), repeat=1 << hats):
        yield FiniteStrategy(hats, table)


def brute_force(hats: int, p: Fraction, symmetric: bool):
    tables = list(all_tables(hats))
    if symmetric:
        pairs = [FinitePair.symmetric(t) for t in tables]
    else:
        pairs = [FinitePair(a, b) for a in tables for b in tables]
    values = [win_probability(pair, p) for pair in pairs]
    best = max(values)
    return best, values.count(best)


class TestObjective:
    """Test the exact integer objective"""

    def test_weights(self):
        """Test coefficients a^w (b - a)^(2n - w) over b^(2n)"""
        coef, denominator = white_count_weights(1, Fraction(1, 3))

        assert coef == [4, 2, 1]
        assert denominator == 9

    def test_reduced_table_count(self):
        """Test monochromatic inputs are not enumerated"""
        assert reduced_table_count(1) == 1
        assert reduced_table_count(3) == 729
        assert reduced_table_count(4) == 4**14


class TestExhaustivePairs:
    """Test exhaustive pair search"""

    @pytest.mark.parametrize("hats", [1, 2])
    def test_matches_brute_force(self, hats):
        """Test optimum and optimum count against full enumeration"""
        p = Fraction(1, 2)
        best, count = brute_force(hats, p, symmetric=False)

        report = exhaustive_pairs(SearchConfig(hats=hats, p=p))

        assert report.best_value == best
        assert report.optimum_count == count
        assert win_probability(report.best_pair, p) == best

    def test_three_hats_one_half(self):
        """Test the three-hat optimum, its count and single class"""
        report = exhaustive_pairs(SearchConfig(hats=3, p="1/2"))

        assert report.best_value == Fraction(22, 64)
        assert report.optimum_count == 972
        assert report.class_count == 1
        assert report.best_win_counts.total == 22
        assert report.complete
        assert report.iterations == 729
        assert len(report.witnesses) == 10
        assert [w.sort_key() for w in report.witnesses] == sorted(
            w.sort_key() for w in report.witnesses
        )

    def test_three_hats_one_third(self):
        """Test the optimum at p = 1/3 is the same class"""
        report = exhaustive_pairs(SearchConfig(hats=3, p="1/3"))

        assert report.best_value == Fraction(137, 729)
        assert report.class_count == 1

    @pytest.mark.parametrize("workers", [2, 8])
    def test_workers_do_not_change_result(self, workers):
        """Test splitting the scan across processes gives the same report"""
        serial = exhaustive_pairs(SearchConfig(hats=3, checkpoint_interval=100))
        parallel = exhaustive_pairs(
            SearchConfig(hats=3, checkpoint_interval=100, workers=workers)
        )

        assert parallel == serial

    def test_too_many_hats(self):
        """Test pair scans stop at three hats"""
        with pytest.raises(SearchSpaceTooLargeError):
            exhaustive_pairs(SearchConfig(hats=4))


class TestExhaustiveSymmetric:
    """Test exhaustive symmetric search"""

    def test_two_hats_brute_force(self):
        """Test the symmetric optimum on two hats"""
        p = Fraction(2, 5)
        best, count = brute_force(2, p, symmetric=True)

        report = exhaustive_symmetric(SearchConfig(hats=2, p=p, symmetric=True))

        assert report.best_value == best
        assert report.optimum_count == count

    def test_three_hats_contains_optimal_table(self):
        """Test every symmetric optimum is a relabeling of the optimal table"""
        report = exhaustive_symmetric(SearchConfig(hats=3, symmetric=True))

        assert report.best_value == Fraction(11, 32)
        assert all(w.is_symmetric for w in report.witnesses)
        assert all(are_equivalent(w, optimal_three_hat_pair()) for w in report.witnesses)

    def test_four_hats_needs_checkpoint(self):
        """Test the long four-hat scan refuses to run without a checkpoint"""
        with pytest.raises(CheckpointError):
            exhaustive_symmetric(SearchConfig(hats=4, symmetric=True))

    def test_five_hats_refused(self):
        """Test symmetric scans stop at four hats"""
        with pytest.raises(SearchSpaceTooLargeError):
            exhaustive_symmetric(SearchConfig(hats=5, symmetric=True))

    def test_run_search_dispatch(self):
        """Test run_search picks the symmetric scan"""
        report = run_search(SearchConfig(hats=2, symmetric=True))

        assert report.mode == "symmetric"

    @run_slow
    def test_four_hats(self, tmp_path):
        """Test no symmetric four-hat table beats 7/20"""
        cfg = SearchConfig(
            hats=4, symmetric=True, workers=4, checkpoint_path=tmp_path / "four.json"
        )

        report = exhaustive_symmetric(cfg)

        assert report.complete
        assert report.best_value <= Fraction(7, 20)


class TestCheckpointResume:
    """Test interrupted searches resume to the same answer"""

    def test_exhaustive_resume(self, tmp_path):
        """Test stopping after some chunks and resuming"""
        path = tmp_path / "scan.json"
        partial = exhaustive_pairs(
            SearchConfig(hats=3, checkpoint_interval=100, checkpoint_path=path, stop_after_chunks=3)
        )
        resumed = exhaustive_pairs(
            SearchConfig(hats=3, checkpoint_interval=100, checkpoint_path=path)
        )
        uninterrupted = exhaustive_pairs(SearchConfig(hats=3, checkpoint_interval=100))

        assert not partial.complete
        assert partial.iterations == 300
        assert resumed == uninterrupted

    def test_mismatched_checkpoint(self, tmp_path):
        """Test a checkpoint from another p is refused"""
        path = tmp_path / "scan.json"
        exhaustive_pairs(SearchConfig(hats=2, checkpoint_path=path))

        with pytest.raises(CheckpointError):
            exhaustive_pairs(SearchConfig(hats=2, p="1/3", checkpoint_path=path))

    def test_hill_climb_resume(self, tmp_path):
        """Test hill climbing resumes at the next restart"""
        path = tmp_path / "climb.json"
        base = dict(hats=3, mode="hillclimb", restarts=6, seed=5, checkpoint_interval=2)
        partial = hill_climb(SearchConfig(**base, checkpoint_path=path, stop_after_chunks=1))
        resumed = hill_climb(SearchConfig(**base, checkpoint_path=path))
        uninterrupted = hill_climb(SearchConfig(**base))

        assert not partial.complete
        assert resumed == uninterrupted


class TestDeltaEvaluate:
    """Test incremental re-evaluation"""

    def test_matches_full_evaluation(self):
        """Test single-entry updates against a fresh evaluation"""
        rng = random.Random(17)
        for _ in range(300):
            hats = rng.choice([2, 3, 4])
            pair = FinitePair.random(rng, hats)
            player = rng.choice([1, 2])
            mask = rng.randrange(1 << hats)
            choice = rng.randint(1, hats)
            strategy = pair.strategy(player).with_entry(mask, choice)
            changed = (
                FinitePair(strategy, pair.player2)
                if player == 1
                else FinitePair(pair.player1, strategy)
            )

            updated = delta_evaluate(pair, evaluate_pair(pair), player, mask, choice)

            assert updated == evaluate_pair(changed)

    def test_monochromatic_inputs_are_dont_care(self):
        """Test changing the answer to a monochromatic input changes nothing"""
        pair = optimal_three_hat_pair()
        counts = evaluate_pair(pair)
        for mask in (0, 7):
            for choice in (1, 2, 3):
                assert delta_evaluate(pair, counts, 1, mask, choice) == counts

    def test_invalid_arguments(self):
        """Test out-of-range player, choice and mask"""
        pair = optimal_three_hat_pair()
        counts = evaluate_pair(pair)
        with pytest.raises(InvalidStrategyError):
            delta_evaluate(pair, counts, 3, 1, 1)
        with pytest.raises(InvalidStrategyError):
            delta_evaluate(pair, counts, 1, 1, 4)
        with pytest.raises(InvalidStrategyError):
            delta_evaluate(pair, counts, 1, 8, 1)


class TestHillClimb:
    """Test random-restart hill climbing"""

    def test_deterministic(self):
        """Test the same seed gives the same report"""
        cfg = SearchConfig(hats=4, mode="hillclimb", restarts=3, seed=9)

        assert hill_climb(cfg) == hill_climb(cfg)

    @pytest.mark.parametrize("workers", [2, 8])
    def test_workers_do_not_change_result(self, workers):
        """Test restarts spread over processes give the same report"""
        base = dict(hats=3, mode="hillclimb", restarts=8, seed=2)

        assert hill_climb(SearchConfig(**base, workers=workers)) == hill_climb(SearchConfig(**base))

    def test_local_optimum(self):
        """Test no single-entry change improves the reported pair"""
        p = Fraction(1, 2)
        report = hill_climb(SearchConfig(hats=3, mode="hillclimb", restarts=3, seed=1))
        pair = report.best_pair
        counts = evaluate_pair(pair)

        assert report.local_optimum
        assert report.best_value == win_probability(pair, p)
        for player, mask, choice in product((1, 2), range(8), (1, 2, 3)):
            changed = delta_evaluate(pair, counts, player, mask, choice)
            assert changed.probability(p) <= report.best_value

    def test_symmetric_three_hats(self):
        """Test symmetric climbing reaches the three-hat optimum"""
        report = hill_climb(
            SearchConfig(hats=3, mode="hillclimb", symmetric=True, restarts=20, seed=1)
        )

        assert report.best_value == Fraction(22, 64)
        assert report.best_pair.is_symmetric

    def test_iteration_cap(self):
        """Test a tiny budget stops before any move"""
        report = hill_climb(SearchConfig(hats=3, mode="hillclimb", max_iterations=1))

        assert report.iterations == 0
        assert report.local_optimum is False

    def test_six_hats_invariants(self):
        """Test a short six-hat climb reports a consistent local optimum"""
        report = hill_climb(
            SearchConfig(hats=6, mode="hillclimb", restarts=2, seed=3, sideways_moves=True)
        )

        assert report.local_optimum
        assert report.best_value == win_probability(report.best_pair, Fraction(1, 2))
        assert report.best_win_counts == evaluate_pair(report.best_pair)

    def test_to_dict(self):
        """Test the JSON form of a report"""
        report = hill_climb(SearchConfig(hats=2, mode="hillclimb", restarts=2))
        data = report.to_dict()

        assert isinstance(report, SearchReport)
        assert data["mode"] == "hillclimb"
        value = report.best_value
        assert data["best_value"] == f"{value.numerator}/{value.denominator}"

    def test_six_hats_reaches_block_strategy(self):
        """Test six-hat climbing matches the two-block truncation at one half"""
        threshold = win_probability(truncate_to_finite(builtin_machine("S2"), 6), Fraction(1, 2))
        report = hill_climb(SearchConfig(hats=6, mode="hillclimb", restarts=50, seed=0))

        assert threshold == Fraction(358, 1024)
        assert report.best_value >= threshold
