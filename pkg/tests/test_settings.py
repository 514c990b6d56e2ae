from fractions import Fraction

import pytest
from pydantic import ValidationError

from config.settings import (
    DEFAULT_CHECKPOINT_INTERVAL,
    SearchConfig,
    SimulationConfig,
    checkpoint_interval_from_env,
)
from errors import ProbabilityRangeError


class TestSearchConfig:
    """Test search configuration"""

    def test_defaults(self):
        """Test defaults describe a single exhaustive run at p = 1/2"""
        config = SearchConfig(hats=3)

        assert config.p == Fraction(1, 2)
        assert config.mode == "exhaustive"
        assert config.workers == 1
        assert config.checkpoint_path is None

    def test_rational_text(self):
        """Test p accepts a/b text"""
        assert SearchConfig(hats=2, p="2/6").p == Fraction(1, 3)

    def test_float_probability_rejected(self):
        """Test exact searches refuse floats"""
        with pytest.raises(ValidationError):
            SearchConfig(hats=2, p=0.5)

    def test_probability_out_of_range(self):
        """Test p above one is a domain error"""
        with pytest.raises(ProbabilityRangeError):
            SearchConfig(hats=2, p="3/2")

    def test_hat_limits(self):
        """Test hat count bounds"""
        with pytest.raises(ValidationError):
            SearchConfig(hats=0)
        with pytest.raises(ValidationError):
            SearchConfig(hats=17)

    def test_config_is_frozen(self):
        """Test configs cannot be mutated"""
        config = SearchConfig(hats=2)
        with pytest.raises(ValidationError):
            config.hats = 3

    def test_hash_ignores_execution_settings(self):
        """Test workers and checkpoint cadence do not change the hash"""
        a = SearchConfig(hats=3, workers=1, checkpoint_interval=10)
        b = SearchConfig(hats=3, workers=4, checkpoint_interval=500, stop_after_chunks=2)

        assert a.config_hash() == b.config_hash()

    def test_hash_tracks_result_settings(self):
        """Test p, seed and mode change the hash"""
        base = SearchConfig(hats=3)

        assert base.config_hash() != SearchConfig(hats=3, p="1/3").config_hash()
        assert base.config_hash() != SearchConfig(hats=3, seed=1).config_hash()
        assert base.config_hash() != SearchConfig(hats=3, mode="hillclimb").config_hash()


class TestCheckpointIntervalEnv:
    """Test checkpoint interval environment override"""

    def test_default(self, monkeypatch):
        """Test the default applies when the variable is unset"""
        monkeypatch.delenv("HATLAB_CHECKPOINT_INTERVAL", raising=False)

        assert checkpoint_interval_from_env() == DEFAULT_CHECKPOINT_INTERVAL

    def test_override(self, monkeypatch):
        """Test the variable feeds new configs"""
        monkeypatch.setenv("HATLAB_CHECKPOINT_INTERVAL", "5")

        assert SearchConfig(hats=3).checkpoint_interval == 5

    def test_invalid(self, monkeypatch):
        """Test non-positive values are rejected"""
        monkeypatch.setenv("HATLAB_CHECKPOINT_INTERVAL", "0")

        with pytest.raises(ValueError):
            checkpoint_interval_from_env()


class TestSimulationConfig:
    """Test simulation configuration"""

    def test_valid(self):
        """Test a float probability is accepted"""
        config = SimulationConfig(p=0.25, trials=100)

        assert config.p == 0.25
        assert config.max_blocks == 10**4

    def test_out_of_range(self):
        """Test p outside [0, 1] is a domain error"""
        with pytest.raises(ProbabilityRangeError):
            SimulationConfig(p=1.5, trials=10)

    def test_trials_positive(self):
        """Test zero trials is rejected"""
        with pytest.raises(ValidationError):
            SimulationConfig(p=0.5, trials=0)
