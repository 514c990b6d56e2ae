import pytest

from errors import InvalidStrategyError
from game.block_machine import MachinePair, builtin_machine
from game.files import dump_document, dumps_document, load_document, load_machine, load_pair
from game.finite import FinitePair
from game.reference import optimal_three_hat_pair


class TestStrategyFiles:
    """Test strategy document files"""

    def test_pair_round_trip(self, tmp_path):
        """Test a finite pair written and read back"""
        path = tmp_path / "pair.json"
        dump_document(optimal_three_hat_pair(), path)

        assert load_pair(path) == optimal_three_hat_pair()
        assert isinstance(load_document(path), FinitePair)

    def test_machine_round_trip(self, tmp_path):
        """Test a block machine written and read back"""
        path = tmp_path / "s4.json"
        dump_document(builtin_machine("S4"), path)

        assert load_machine(path) == builtin_machine("S4")
        assert isinstance(load_document(path), MachinePair)

    def test_canonical_text(self):
        """Test the serialized form ends with a newline and uses two-space indent"""
        text = dumps_document(optimal_three_hat_pair())

        assert text.endswith("}\n")
        assert '\n  "hats": 3,' in text

    def test_kind_mismatch(self, tmp_path):
        """Test loading a machine where a pair is expected"""
        path = tmp_path / "s1.json"
        dump_document(builtin_machine("S1"), path)

        with pytest.raises(InvalidStrategyError):
            load_pair(path)

    def test_bad_json(self, tmp_path):
        """Test malformed JSON is an invalid strategy"""
        path = tmp_path / "broken.json"
        path.write_text("{")

        with pytest.raises(InvalidStrategyError):
            load_document(path)

    def test_missing_file(self, tmp_path):
        """Test a missing file surfaces as an OS error"""
        with pytest.raises(OSError):
            load_pair(tmp_path / "absent.json")
