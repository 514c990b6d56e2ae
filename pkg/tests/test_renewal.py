import random
from fractions import Fraction

import pytest

from errors import DegenerateProbabilityError, NonCommittingStrategyError, ProbabilityRangeError
from exact.polynomial import IntPolynomial, product
from exact.rational_function import RF_P, reflect, rf_normalize
from game.block_machine import (
    BUILTIN_NAMES,
    RECURSE,
    BlockMachine,
    MachinePair,
    builtin_machine,
    commit,
    dual_machine,
    truncate_to_finite,
)
from game.case_analysis import monochrome_run_case_sum, monochrome_run_cases
from game.finite import evaluate_pair
from game.renewal import (
    build_renewal_system,
    derive_closed_form,
    solve_renewal_system,
    tail_bound,
)


def rf(num, den):
    return rf_normalize(IntPolynomial(num), IntPolynomial(den))


S4_DENOMINATOR = product(
    [
        IntPolynomial((1, -1, 1)),
        IntPolynomial((1, 1, -1)),
        IntPolynomial((2, -2, 1)),
        IntPolynomial((1, 0, 1)),
        IntPolynomial((1, 1)),
        IntPolynomial((2, -1)),
    ]
)

KNOWN_FORMS = {
    "FIRST_WHITE": rf((0, 1), (2, -1)),
    "FIRST_BLACK": rf((0, 0, 2), (1, 1)),
    "S1": rf((0, 1, 1, 1, 3, -3, 1), (2, 1, 1, 1, -1)),
    "S2": rf((0, 1, -1, 1, 1), (2, -3, 3)),
    "S3": rf_normalize(
        IntPolynomial((0, 1, 5, -10, 10, -5, 1)), IntPolynomial((4, -2, -2, 3, -1))
    ),
    "S4": rf_normalize(
        IntPolynomial((0, 1, 7, -21, 35, -20, -14, 40, -48, 40, -22, 7, -1)), S4_DENOMINATOR
    ),
}


def random_machine_pair(rng: random.Random) -> MachinePair:
    m = rng.randint(1, 3)
    o = rng.randint(0, min(1, m - 1))

    def machine() -> BlockMachine:
        table = [
            commit(rng.randint(1, m)) if rng.random() < 0.6 else RECURSE for _ in range(1 << m)
        ]
        if not any(action.is_commit for action in table):
            table[0] = commit(1)
        return BlockMachine(m, o, tuple(table))

    first = machine()
    return MachinePair.symmetric(first) if rng.random() < 0.5 else MachinePair(first, machine())


class TestClosedForms:
    """Test closed forms derived through the renewal system"""

    @pytest.mark.parametrize("name", sorted(KNOWN_FORMS))
    def test_known_closed_form(self, name):
        """Test the derived rational function equals the hand-derived one"""
        assert derive_closed_form(builtin_machine(name)).value == KNOWN_FORMS[name]

    def test_all_block_strategies_reach_seven_twentieths(self):
        """Test S1..S4 are distinct functions that all equal 7/20 at one half"""
        values = [derive_closed_form(builtin_machine(f"S{k}")).value for k in range(1, 5)]

        assert all(v(Fraction(1, 2)) == Fraction(7, 20) for v in values)
        assert len(set(values)) == 4

    def test_first_hat_baselines(self):
        """Test both single-hat baselines give 1/3 at one half"""
        for name in ("FIRST_WHITE", "FIRST_BLACK"):
            assert derive_closed_form(builtin_machine(name))(Fraction(1, 2)) == Fraction(1, 3)

    def test_residuals_vanish(self):
        """Test the solution satisfies every equation of the assembled system"""
        for name in BUILTIN_NAMES:
            mp = builtin_machine(name)
            system = build_renewal_system(mp)
            closed = derive_closed_form(mp)
            solo, joint = solve_renewal_system(system)

            assert solo == [value for _, value in closed.solo_values]
            assert all(r.is_zero for r in system.equations.residuals(solo + joint))
            assert closed.system_size == system.size == len(system.unknowns)

    @pytest.mark.parametrize("name", ["S2", "FIRST_WHITE", "FIRST_BLACK"])
    def test_solo_values_without_overlap(self, name):
        """Test a lone player on fresh blocks picks white with probability p"""
        mp = builtin_machine(name)
        solo, _ = solve_renewal_system(build_renewal_system(mp))

        assert mp.overlap == 0
        assert solo
        assert all(value == RF_P for value in solo)

    def test_non_committing(self):
        """Test a machine that always recurses is rejected"""
        never = MachinePair.symmetric(BlockMachine(1, 0, (RECURSE, RECURSE)))

        with pytest.raises(NonCommittingStrategyError):
            derive_closed_form(never)


class TestDuality:
    """Test the colour-duality identity for machines"""

    def test_builtins(self):
        """Test V_dual == 2p - 1 + V(1 - p) for every builtin"""
        for name in BUILTIN_NAMES:
            mp = builtin_machine(name)
            expected = 2 * RF_P - 1 + reflect(derive_closed_form(mp).value)
            assert derive_closed_form(dual_machine(mp)).value == expected

    def test_s2_self_dual(self):
        """Test the dual of S2 has the same closed form as S2"""
        s2 = builtin_machine("S2")

        assert derive_closed_form(dual_machine(s2)).value == derive_closed_form(s2).value

    def test_random_machines(self):
        """Test the identity on random committing machines"""
        rng = random.Random(2024)
        for _ in range(50):
            mp = random_machine_pair(rng)
            expected = 2 * RF_P - 1 + reflect(derive_closed_form(mp).value)
            assert derive_closed_form(dual_machine(mp)).value == expected


class TestTailBound:
    """Test truncation error bounds"""

    def test_continuation_ratio(self):
        """Test S1's largest joint recursion probability"""
        closed = derive_closed_form(builtin_machine("S1"))

        assert closed.continuation_ratio_at(Fraction(1, 2)) == Fraction(1, 16)
        assert closed.continuation_ratio_at(Fraction(1, 3)) == Fraction(16, 81)

    def test_truncations_within_bound(self):
        """Test finite truncations stay within the tail bound of the closed form"""
        grid = (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))
        for name in ("S1", "S2"):
            mp = builtin_machine(name)
            closed = derive_closed_form(mp)
            shift = mp.block_size - mp.overlap
            for hats in (3, 6, 9, 12):
                counts = evaluate_pair(truncate_to_finite(mp, hats))
                rounds = (hats - mp.block_size) // shift
                for p in grid:
                    gap = abs(counts.probability(p) - closed(p))
                    assert gap <= tail_bound(mp, p, rounds)

    def test_zero_rounds(self):
        """Test zero extra rounds bounds nothing"""
        assert tail_bound(builtin_machine("S1"), Fraction(1, 2), 0) == 1

    def test_degenerate_and_out_of_range(self):
        """Test endpoint and out-of-range probabilities"""
        mp = builtin_machine("S1")
        with pytest.raises(DegenerateProbabilityError):
            tail_bound(mp, 0, 2)
        with pytest.raises(ProbabilityRangeError):
            tail_bound(mp, 2, 2)


class TestCaseAnalysis:
    """Test the independent case-by-case derivation for S1"""

    def test_sum_matches_renewal_solution(self):
        """Test the case sum equals the solver's closed form"""
        assert monochrome_run_case_sum() == derive_closed_form(builtin_machine("S1")).value

    def test_case_sum_at_one_half(self):
        """Test the cases add up to 7/20"""
        assert monochrome_run_case_sum()(Fraction(1, 2)) == Fraction(7, 20)
        assert len(monochrome_run_cases()) == 6
