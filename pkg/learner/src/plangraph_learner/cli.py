"""Train on graph/label/split files and write predictions.

The evaluation itself is not here on purpose: score the written preds.csv
with the graph toolkit's ``eval-select`` command, which owns the metric.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import load_config
from .errors import LearnerError
from .io import load_graphs, load_labels_csv, load_split_json
from .model import GCN
from .train import predict_to_csv, train_from_files


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plangraph-learner",
        description="Graph convolutional baseline for planner selection.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="fit a model and optionally predict")
    p.add_argument("--graphs", required=True, metavar="DIR",
                   help="directory of <task_id>.graph.json files")
    p.add_argument("--labels", required=True, metavar="LABELS_CSV")
    p.add_argument("--split", required=True, metavar="SPLIT_JSON")
    p.add_argument("--config", default=None, metavar="CONFIG_JSON",
                   help="hyperparameter overrides (JSON object)")
    p.add_argument("--model-out", default=None, metavar="MODEL_NPZ")
    p.add_argument("--preds-out", default=None, metavar="PREDS_CSV",
                   help="write predictions for --subset after training")
    p.add_argument("--subset", choices=("train", "val", "test"),
                   default="test")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("predict", help="predict with a saved model")
    p.add_argument("--model", required=True, metavar="MODEL_NPZ")
    p.add_argument("--graphs", required=True, metavar="DIR")
    p.add_argument("--labels", required=True, metavar="LABELS_CSV",
                   help="supplies the task ids and planner column names")
    p.add_argument("--split", default=None, metavar="SPLIT_JSON")
    p.add_argument("--subset", choices=("train", "val", "test"),
                   default="test")
    p.add_argument("--out", required=True, metavar="PREDS_CSV")
    p.set_defaults(func=_cmd_predict)
    return parser


def _cmd_train(args) -> int:
    config = load_config(args.config)
    result, labels, split = train_from_files(args.graphs, args.labels,
                                             args.split, config)
    last = result.history[-1]
    print(f"trained {last.epoch} epochs; best validation loss "
          f"{result.best_val_loss:.4f} at epoch {result.best_epoch}")
    if args.model_out:
        result.model.save(args.model_out)
        print(f"wrote {args.model_out}")
    if args.preds_out:
        ids = getattr(split, args.subset)
        graphs = load_graphs(args.graphs, ids, directed=config.directed)
        predict_to_csv(result.model, graphs, ids, labels.planners,
                       args.preds_out)
        print(f"wrote {args.preds_out} ({len(ids)} tasks, "
              f"{args.subset} side)")
    return 0


def _cmd_predict(args) -> int:
    model = GCN.load(args.model)
    labels = load_labels_csv(args.labels)
    if args.split:
        ids = getattr(load_split_json(args.split), args.subset)
    else:
        ids = labels.task_ids
    graphs = load_graphs(args.graphs, ids,
                         directed=model.config.directed)
    predict_to_csv(model, graphs, ids, labels.planners, args.out)
    print(f"wrote {args.out} ({len(ids)} tasks)")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LearnerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
