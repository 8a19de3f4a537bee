"""Graph convolutional baseline for planner selection.

Consumes the graph toolkit's files (``*.graph.json``, ``labels.csv``,
``split.json``) and writes ``preds.csv`` for its ``eval-select`` command.
"""

from .config import TrainConfig, load_config
from .errors import DimensionMismatch, FormatError, LearnerError
from .io import (LabelSet, PreparedGraph, Split, load_graphs,
                 load_labels_csv, load_split_json, read_graph_json,
                 write_predictions_csv)
from .model import GCN
from .train import (EpochRecord, TrainResult, predict_to_csv, train_from_files,
                    train_gcn)

__version__ = "0.1.0"

__all__ = [
    "DimensionMismatch",
    "EpochRecord",
    "FormatError",
    "GCN",
    "LabelSet",
    "LearnerError",
    "PreparedGraph",
    "Split",
    "TrainConfig",
    "TrainResult",
    "load_config",
    "load_graphs",
    "load_labels_csv",
    "load_split_json",
    "predict_to_csv",
    "read_graph_json",
    "train_from_files",
    "train_gcn",
    "write_predictions_csv",
]
