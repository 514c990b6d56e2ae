import math
from fractions import Fraction

import numpy as np
import pytest

from analysis.monte_carlo import EVENTS, simulate_finite_pair, simulate_machine_pair
from analysis.rng import CounterRNG
from errors import ProbabilityRangeError
from game.block_machine import BUILTIN_NAMES, builtin_machine, dual_machine
from game.reference import optimal_three_hat_pair
from game.renewal import tail_bound


class TestCounterRNG:
    """Test counter-based hat draws"""

    def test_addressable(self):
        """Test a draw depends only on seed, trial, player and hat"""
        rng = CounterRNG(42)
        keys = rng.player_keys(np.arange(10, dtype=np.uint64), 1)
        subset = rng.player_keys(np.arange(5, 10, dtype=np.uint64), 1)

        assert np.array_equal(rng.uniforms(keys, 3)[5:], rng.uniforms(subset, 3))

    def test_players_differ(self):
        """Test the two players get different streams"""
        rng = CounterRNG(1)
        trials = np.arange(100, dtype=np.uint64)

        first = rng.uniforms(rng.player_keys(trials, 1), 0)
        second = rng.uniforms(rng.player_keys(trials, 2), 0)

        assert not np.array_equal(first, second)
        assert np.all((first >= 0.0) & (first < 1.0))


class TestConcordance:
    """Test simulations agree with exact values"""

    @pytest.mark.parametrize("name,expected", [("S1", 7 / 20), ("FIRST_WHITE", 1 / 3)])
    def test_machines(self, name, expected):
        """Test a million trials land within five standard errors"""
        report = simulate_machine_pair(
            builtin_machine(name), 0.5, trials=10**6, seed=42, max_blocks=100
        )

        assert abs(report.estimate - expected) <= 5 * report.stderr
        assert report.unresolved == 0

    def test_optimal_three_hat_table(self):
        """Test the finite optimal table simulates to 11/32"""
        report = simulate_finite_pair(optimal_three_hat_pair(), 0.5, trials=10**6, seed=42)

        assert abs(report.estimate - 11 / 32) <= 5 * report.stderr

    def test_marginal_probability(self):
        """Test each player points at a white hat about half the time"""
        report = simulate_machine_pair(builtin_machine("S2"), 0.5, trials=200_000, seed=7)
        spread = 5 * (0.25 / report.trials) ** 0.5

        assert abs(report.player1_white / report.trials - 0.5) <= spread
        assert abs(report.player2_white / report.trials - 0.5) <= spread


class TestSimulationBehaviour:
    """Test determinism and edge cases"""

    def test_deterministic(self):
        """Test the same seed gives the same report"""
        mp = builtin_machine("S3")

        assert simulate_machine_pair(mp, 0.3, 20_000, seed=5) == simulate_machine_pair(
            mp, 0.3, 20_000, seed=5
        )

    def test_workers_do_not_change_result(self):
        """Test splitting trials across processes draws the same hats"""
        mp = builtin_machine("S1")
        serial = simulate_machine_pair(mp, 0.5, 30_000, seed=3)
        parallel = simulate_machine_pair(mp, 0.5, 30_000, seed=3, workers=3)

        assert parallel == serial

    def test_events_partition_trials(self):
        """Test event counts add up to the number of trials"""
        report = simulate_finite_pair(optimal_three_hat_pair(), 0.4, trials=5_000, seed=1)

        assert set(report.event_counts) == set(EVENTS)
        assert sum(report.event_counts.values()) == report.trials
        assert report.wins + report.losses + report.unresolved == report.trials

    def test_all_black(self):
        """Test S1 never commits when every hat is black"""
        report = simulate_machine_pair(builtin_machine("S1"), 0.0, 1_000, seed=1, max_blocks=20)

        assert report.wins == 0
        assert report.unresolved == 1_000

    def test_all_white(self):
        """Test first-white always wins when every hat is white"""
        report = simulate_machine_pair(builtin_machine("FIRST_WHITE"), 1.0, 1_000, seed=1)

        assert report.wins == 1_000

    def test_probability_range(self):
        """Test p outside [0, 1] is rejected"""
        with pytest.raises(ProbabilityRangeError):
            simulate_machine_pair(builtin_machine("S1"), 1.5, 10, seed=1)

    def test_all_black_default_cap(self):
        """Test a degenerate stream settles at once even with the default block cap"""
        never = simulate_machine_pair(builtin_machine("FIRST_WHITE"), 0.0, 5_000, seed=2)
        black = simulate_machine_pair(builtin_machine("FIRST_BLACK"), 0.0, 5_000, seed=2)

        assert never.unresolved == 5_000
        assert black.unresolved == 0
        assert black.event_counts["BB"] == 5_000


class TestUnresolvedBound:
    """Test the share of undecided trials against the truncation tail bound"""

    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    @pytest.mark.parametrize("p", [0.3, 0.5, 0.7])
    @pytest.mark.parametrize("max_blocks", [1, 2, 3])
    def test_within_tail_bound(self, name, p, max_blocks):
        """Test unresolved/trials stays below the tail bound plus five standard errors"""
        mp = builtin_machine(name)
        report = simulate_machine_pair(mp, p, 20_000, seed=11, max_blocks=max_blocks)
        bound = float(tail_bound(mp, Fraction(p).limit_denominator(10), max_blocks))
        spread = max(report.stderr, math.sqrt(bound * (1 - bound) / report.trials))

        assert report.unresolved / report.trials <= bound + 5 * spread

    def test_single_round_first_white(self):
        """Test one capped round leaves exactly the both-black trials undecided"""
        mp = builtin_machine("FIRST_WHITE")
        report = simulate_machine_pair(mp, 0.5, 40_000, seed=4, max_blocks=1)
        spread = 5 * math.sqrt(0.25 * 0.75 / report.trials)

        assert abs(report.unresolved / report.trials - 0.25) <= spread


class TestDualConsistency:
    """Test simulated duals against the colour-duality identity"""

    @pytest.mark.parametrize("name", ["S1", "S2", "FIRST_WHITE"])
    def test_dual_difference(self, name):
        """Test V_dual(p) - V(1 - p) is about 2p - 1"""
        mp = builtin_machine(name)
        p = 0.3
        dual = simulate_machine_pair(dual_machine(mp), p, 200_000, seed=21)
        plain = simulate_machine_pair(mp, 1 - p, 200_000, seed=22)
        combined = math.hypot(dual.stderr, plain.stderr)

        assert abs((dual.estimate - plain.estimate) - (2 * p - 1)) <= 5 * combined
