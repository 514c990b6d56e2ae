"""JSON strategy documents: finite pairs {"hats", "player1", "player2"} and block machines."""

import json
from pathlib import Path
from typing import Any, Dict, Union

from errors import InvalidStrategyError
from game.block_machine import MachinePair
from game.finite import FinitePair

StrategyDocument = Union[FinitePair, MachinePair]


def is_pair_document(data: Any) -> bool:
    return isinstance(data, dict) and "hats" in data and isinstance(data.get("player1"), list)


def document_from_dict(data: Dict[str, Any]) -> StrategyDocument:
    if is_pair_document(data):
        return FinitePair.from_dict(data)
    return MachinePair.from_dict(data)


def read_document(path: Union[str, Path]) -> Dict[str, Any]:
    """Parsed JSON object; I/O failures propagate as OSError."""
    with open(path, "r") as f:
        text = f.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidStrategyError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidStrategyError(f"{path} must hold a JSON object")
    return data


def load_document(path: Union[str, Path]) -> StrategyDocument:
    return document_from_dict(read_document(path))


def load_pair(path: Union[str, Path]) -> FinitePair:
    data = read_document(path)
    if not is_pair_document(data):
        raise InvalidStrategyError(f"{path} is not a finite strategy-pair document")
    return FinitePair.from_dict(data)


def load_machine(path: Union[str, Path]) -> MachinePair:
    data = read_document(path)
    if is_pair_document(data):
        raise InvalidStrategyError(f"{path} holds a finite pair, not a block machine")
    return MachinePair.from_dict(data)


def dumps_document(document: StrategyDocument) -> str:
    """Canonical serialization: two-space indent, keys in model order, trailing newline."""
    return json.dumps(document.to_dict(), indent=2) + "\n"


def dump_document(document: StrategyDocument, path: Union[str, Path]) -> None:
    with open(path, "w") as f:
        f.write(dumps_document(document))
