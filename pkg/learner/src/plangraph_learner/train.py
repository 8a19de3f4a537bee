"""Full-batch training with early stopping on validation loss."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import TrainConfig
from .errors import FormatError
from .io import (LabelSet, PreparedGraph, Split, load_graphs,
                 load_labels_csv, load_split_json, write_predictions_csv)
from .model import GCN


class _Sgd:
    def __init__(self, rate: float):
        self.rate = rate

    def step(self, params, grads):
        for key, grad in grads.items():
            params[key] -= self.rate * grad


class _Adam:
    def __init__(self, rate: float, beta1=0.9, beta2=0.999, eps=1e-8):
        self.rate, self.beta1, self.beta2, self.eps = rate, beta1, beta2, eps
        self.m: dict[str, np.ndarray] = {}
        self.v: dict[str, np.ndarray] = {}
        self.t = 0

    def step(self, params, grads):
        self.t += 1
        for key, grad in grads.items():
            m = self.m.setdefault(key, np.zeros_like(grad))
            v = self.v.setdefault(key, np.zeros_like(grad))
            m += (1 - self.beta1) * (grad - m)
            v += (1 - self.beta2) * (grad * grad - v)
            m_hat = m / (1 - self.beta1 ** self.t)
            v_hat = v / (1 - self.beta2 ** self.t)
            params[key] -= self.rate * m_hat / (np.sqrt(v_hat) + self.eps)


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    val_loss: float


@dataclass(frozen=True)
class TrainResult:
    """The trained model plus what happened during training."""

    model: GCN
    history: tuple[EpochRecord, ...]
    best_epoch: int
    best_val_loss: float

    @property
    def n_epochs(self) -> int:
        return len(self.history)


def _side(graphs: dict[str, PreparedGraph], labels: LabelSet,
          ids: tuple[str, ...], name: str
          ) -> tuple[list[PreparedGraph], np.ndarray]:
    rows = labels.row_index()
    missing = [tid for tid in ids if tid not in rows]
    if missing:
        raise FormatError(f"{name} tasks missing from the label table: "
                          f"{', '.join(missing[:5])}")
    return ([graphs[tid] for tid in ids],
            labels.labels[[rows[tid] for tid in ids]])


def train_gcn(graphs: dict[str, PreparedGraph], labels: LabelSet,
              split: Split, config: TrainConfig | None = None) -> TrainResult:
    """Fit on the train side; early-stop and restore on validation loss."""
    config = config or TrainConfig()
    if not split.train or not split.val:
        raise FormatError("training needs non-empty train and val sides")
    train_graphs, train_y = _side(graphs, labels, split.train, "train")
    val_graphs, val_y = _side(graphs, labels, split.val, "val")

    model = GCN(train_graphs[0].feature_dim, len(labels.planners), config)
    optimizer = (_Adam(config.learning_rate) if config.optimizer == "adam"
                 else _Sgd(config.learning_rate))

    history: list[EpochRecord] = []
    best_val = np.inf
    best_epoch = 0
    best_params = {k: v.copy() for k, v in model.params.items()}
    stale = 0
    for epoch in range(1, config.max_epochs + 1):
        train_loss, grads = model.loss_and_grads(train_graphs, train_y)
        optimizer.step(model.params, grads)
        val_loss = model.loss(val_graphs, val_y)
        history.append(EpochRecord(epoch, train_loss, val_loss))
        if val_loss < best_val:
            best_val = val_loss
            best_epoch = epoch
            best_params = {k: v.copy() for k, v in model.params.items()}
            stale = 0
        else:
            stale += 1
            if stale >= config.patience:
                break
    model.params = best_params
    return TrainResult(model, tuple(history), best_epoch, float(best_val))


def train_from_files(graphs_dir: str | Path, labels_path: str | Path,
                     split_path: str | Path,
                     config: TrainConfig | None = None
                     ) -> tuple[TrainResult, LabelSet, Split]:
    """File-level entry point: the three inputs the graph toolkit emits."""
    config = config or TrainConfig()
    labels = load_labels_csv(labels_path)
    split = load_split_json(split_path)
    wanted = tuple(split.train) + tuple(split.val) + tuple(split.test)
    graphs = load_graphs(graphs_dir, wanted, directed=config.directed)
    return train_gcn(graphs, labels, split, config), labels, split


def predict_to_csv(model: GCN, graphs: dict[str, PreparedGraph],
                   task_ids: tuple[str, ...], planners: tuple[str, ...],
                   out_path: str | Path) -> np.ndarray:
    """Write predicted timeout probabilities for the given tasks."""
    probs = np.stack([model.predict(graphs[tid]) for tid in task_ids])
    write_predictions_csv(out_path, task_ids, planners, probs)
    return probs
