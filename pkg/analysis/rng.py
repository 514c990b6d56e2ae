"""Counter-based SplitMix64 streams.

Hat j of player i in trial t is a pure function of (seed, t, i, j), so any partition of
trials across workers draws exactly the same hats.
"""

import numpy as np

GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_UNIT = 2.0**-53


def splitmix64(x: np.ndarray) -> np.ndarray:
    """One SplitMix64 output step applied elementwise to uint64 state."""
    with np.errstate(over="ignore"):
        z = np.asarray(x, dtype=np.uint64) + GOLDEN_GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


class CounterRNG:
    """Uniform draws addressed by (trial, player, hat index) under one 64-bit seed"""

    def __init__(self, seed: int):
        self._seed = int(seed)
        self._seed_word = np.uint64(self._seed)

    @property
    def seed(self) -> int:
        return self._seed

    def player_keys(self, trials: np.ndarray, player: int) -> np.ndarray:
        trial_words = splitmix64(np.asarray(trials, dtype=np.uint64))
        trial_keys = splitmix64(trial_words ^ self._seed_word)
        return splitmix64(trial_keys ^ np.uint64(player))

    def uniforms(self, keys: np.ndarray, hat_index) -> np.ndarray:
        """Doubles in [0, 1) for hat `hat_index` (scalar or array) of each keyed stream."""
        with np.errstate(over="ignore"):
            counter = np.asarray(hat_index, dtype=np.uint64) * GOLDEN_GAMMA
            words = splitmix64(keys + counter)
        return (words >> np.uint64(11)).astype(np.float64) * _UNIT

    def white(self, keys: np.ndarray, hat_index, p: float) -> np.ndarray:
        return self.uniforms(keys, hat_index) < p
