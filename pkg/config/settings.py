import hashlib
import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from errors import ProbabilityRangeError
from exact.rational import parse_rational

DEFAULT_CHECKPOINT_INTERVAL = 10**7
DEFAULT_MAX_BLOCKS = 10**4
MAX_HATS = 16
SEED_LIMIT = 2**64


def checkpoint_interval_from_env() -> int:
    raw = os.getenv("HATLAB_CHECKPOINT_INTERVAL")
    if raw is None or raw.strip() == "":
        return DEFAULT_CHECKPOINT_INTERVAL
    value = int(raw)
    if value < 1:
        raise ValueError("HATLAB_CHECKPOINT_INTERVAL must be a positive integer")
    return value


class SearchConfig(BaseModel):
    """Settings for exhaustive and hill-climbing strategy searches"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    hats: int
    p: Fraction = Fraction(1, 2)
    symmetric: bool = False
    mode: Literal["exhaustive", "hillclimb"] = "exhaustive"
    seed: int = 0
    restarts: int = 1
    max_iterations: int = 10**6
    sideways_moves: bool = False
    workers: int = 1
    checkpoint_path: Optional[Path] = None
    checkpoint_interval: int = Field(default_factory=checkpoint_interval_from_env)
    stop_after_chunks: Optional[int] = None

    @field_validator("p", mode="before")
    @classmethod
    def _parse_p(cls, value):
        if isinstance(value, float):
            raise ValueError("exact searches take a rational p such as 1/2, not a float")
        p = parse_rational(value)
        if not 0 <= p <= 1:
            raise ProbabilityRangeError(f"probability out of range: {p}")
        return p

    @field_validator("hats")
    @classmethod
    def _check_hats(cls, value: int) -> int:
        if not 1 <= value <= MAX_HATS:
            raise ValueError(f"hats must be between 1 and {MAX_HATS}")
        return value

    @field_validator("seed")
    @classmethod
    def _check_seed(cls, value: int) -> int:
        if not 0 <= value < SEED_LIMIT:
            raise ValueError("seed must be an unsigned 64-bit integer")
        return value

    @field_validator("restarts", "max_iterations", "workers", "checkpoint_interval")
    @classmethod
    def _check_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @field_validator("stop_after_chunks")
    @classmethod
    def _check_chunks(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError("stop_after_chunks must be at least 1")
        return value

    def config_hash(self) -> str:
        """SHA-256 over the fields that determine the result (not workers or checkpoint cadence)."""
        payload = {
            "hats": self.hats,
            "p": f"{self.p.numerator}/{self.p.denominator}",
            "symmetric": self.symmetric,
            "mode": self.mode,
            "seed": self.seed,
            "restarts": self.restarts,
            "max_iterations": self.max_iterations,
            "sideways_moves": self.sideways_moves,
        }
        encoded = json.dumps(payload, sort_keys=True).encode("utf-8")
        return hashlib.sha256(encoded).hexdigest()


class SimulationConfig(BaseModel):
    """Settings for Monte Carlo runs; p is a float here"""

    model_config = ConfigDict(frozen=True)

    p: float
    trials: int
    seed: int = 0
    max_blocks: int = DEFAULT_MAX_BLOCKS
    workers: int = 1
    batch_size: int = 1 << 16

    @field_validator("p")
    @classmethod
    def _check_p(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0:
            raise ProbabilityRangeError(f"probability out of range: {value}")
        return value

    @field_validator("seed")
    @classmethod
    def _check_seed(cls, value: int) -> int:
        if not 0 <= value < SEED_LIMIT:
            raise ValueError("seed must be an unsigned 64-bit integer")
        return value

    @field_validator("trials", "max_blocks", "workers", "batch_size")
    @classmethod
    def _check_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value
