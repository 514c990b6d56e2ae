import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from config.logger import logger
from errors import CheckpointError


@dataclass
class SearchCheckpoint:
    """Everything needed to resume a search where it stopped."""

    config_hash: str
    cursor: int  # enumeration units (or restarts) fully processed
    best_value: Optional[str] = None  # "num/den"
    best_pair: Optional[Dict[str, Any]] = None
    rng_state: Optional[Dict[str, Any]] = None
    optimum_count: int = 0
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    classes: Optional[List[List[int]]] = None
    essential_count: int = 0
    iterations: int = 0
    local_optimum: Optional[bool] = None
    elapsed: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "SearchCheckpoint":
        return cls(**d)


class CheckpointManager:
    """Atomic JSON persistence of a SearchCheckpoint."""

    def __init__(self, filepath: Path):
        self.filepath = Path(filepath)

    def save(self, state: SearchCheckpoint) -> None:
        temp_path = self.filepath.with_name(self.filepath.name + ".tmp")
        try:
            with open(temp_path, "w") as f:
                json.dump(state.to_dict(), f, indent=2)
            os.replace(temp_path, self.filepath)
        except OSError as exc:
            raise CheckpointError(f"cannot write checkpoint {self.filepath}: {exc}") from exc
        logger.info(
            "checkpoint saved",
            extra={
                "path": str(self.filepath),
                "cursor": state.cursor,
                "best_value": state.best_value,
                "optimum_count": state.optimum_count,
            },
        )

    def load(self) -> Optional[SearchCheckpoint]:
        if not self.filepath.exists():
            return None
        try:
            with open(self.filepath, "r") as f:
                data = json.load(f)
            return SearchCheckpoint.from_dict(data)
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise CheckpointError(f"unreadable checkpoint {self.filepath}: {exc}") from exc

    def load_for(self, config_hash: str) -> Optional[SearchCheckpoint]:
        """Load and check that the checkpoint belongs to this configuration."""
        state = self.load()
        if state is not None and state.config_hash != config_hash:
            raise CheckpointError(
                f"checkpoint {self.filepath} was written for a different configuration"
            )
        return state

    def exists(self) -> bool:
        return self.filepath.exists()

    def remove(self) -> None:
        if self.filepath.exists():
            self.filepath.unlink()
