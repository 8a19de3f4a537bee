"""Training configuration: dataclass defaults, optionally from a JSON file."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import FormatError


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters; the defaults are the declared baseline."""

    layers: int = 2
    hidden: int = 64
    learning_rate: float = 0.01
    max_epochs: int = 200
    patience: int = 20
    optimizer: str = "adam"   # or "sgd"
    directed: bool = False    # propagate over the directed adjacency
    seed: int = 0

    def __post_init__(self):
        if self.layers < 1:
            raise FormatError("config: layers must be at least 1")
        if self.hidden < 1:
            raise FormatError("config: hidden width must be at least 1")
        if self.learning_rate <= 0:
            raise FormatError("config: learning rate must be positive")
        if self.max_epochs < 1:
            raise FormatError("config: max_epochs must be at least 1")
        if self.patience < 1:
            raise FormatError("config: patience must be at least 1")
        if self.optimizer not in ("adam", "sgd"):
            raise FormatError(f"config: unknown optimizer "
                              f"{self.optimizer!r} (adam or sgd)")


def load_config(path: str | Path | None) -> TrainConfig:
    """Defaults when path is None; otherwise a JSON object of overrides."""
    if path is None:
        return TrainConfig()
    try:
        payload = json.loads(Path(path).read_bytes())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise FormatError(f"{path}: config must be a JSON object")
    known = {f.name for f in fields(TrainConfig)}
    unknown = set(payload) - known
    if unknown:
        raise FormatError(f"{path}: unknown config keys "
                          f"{', '.join(sorted(unknown))}")
    return TrainConfig(**payload)
