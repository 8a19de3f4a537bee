"""Runtime targets, binary labels, split management, and selection scoring.

The experimental protocol fixes a planner portfolio (17 planners), a
timeout of 1800 seconds, and a censored runtime of 10000 seconds recorded
for unsolved tasks. Tables here accept any number of planner columns so
smaller synthetic corpora can reuse the same machinery.

Two boundary conventions are deliberately different and must stay so:
a label is 0 (solved) iff runtime <= timeout, while a portfolio selection
only counts as a success iff the chosen planner's true runtime is strictly
below the timeout.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass

import numpy as np

from .errors import (DimensionError, EmptyCorpus, InfeasibleRatio,
                     MissingPrediction, RangeError, SchemaError)

PLANNER_COUNT = 17
DEFAULT_TIMEOUT = 1800.0
CENSORED_RUNTIME = 10000.0
SPLIT_MODES = ("domain", "random")


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TargetTable:
    """Per-task planner runtimes in seconds; rows follow file order."""

    task_ids: tuple[str, ...]
    domains: tuple[str, ...]
    planners: tuple[str, ...]
    runtimes: np.ndarray  # float64, shape (n_tasks, n_planners)

    @property
    def n_tasks(self) -> int:
        return len(self.task_ids)

    def row_index(self) -> dict[str, int]:
        return {tid: i for i, tid in enumerate(self.task_ids)}


@dataclass(frozen=True)
class LabelTable:
    """Binary timeout labels: 0 solved within the timeout, 1 timed out."""

    task_ids: tuple[str, ...]
    domains: tuple[str, ...]
    planners: tuple[str, ...]
    labels: np.ndarray  # int8, shape (n_tasks, n_planners)

    @property
    def n_tasks(self) -> int:
        return len(self.task_ids)


@dataclass(frozen=True)
class PredictionTable:
    """Predicted timeout probabilities in [0, 1], one row per task."""

    task_ids: tuple[str, ...]
    planners: tuple[str, ...]
    probabilities: np.ndarray  # float64, shape (n_tasks, n_planners)

    def row_index(self) -> dict[str, int]:
        return {tid: i for i, tid in enumerate(self.task_ids)}


def _parse_rows(text: str, filename: str | None, leading: tuple[str, ...],
                n_planners: int | None) -> tuple[tuple[str, ...],
                                                 list[list[str]]]:
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows:
        raise SchemaError("empty table: no header row", filename=filename)
    header = tuple(h.strip() for h in rows[0])
    if header[:len(leading)] != leading:
        raise SchemaError(
            f"header must start with {','.join(leading)}, got "
            f"{','.join(header[:len(leading)])!r}", filename=filename, line=1)
    planners = header[len(leading):]
    if not planners:
        raise SchemaError("no planner columns in header", filename=filename,
                          line=1)
    if n_planners is not None and len(planners) != n_planners:
        raise SchemaError(
            f"expected {n_planners} planner columns, got {len(planners)}",
            filename=filename, line=1)
    if len(set(planners)) != len(planners):
        raise SchemaError("duplicate planner column names", filename=filename,
                          line=1)
    if len(rows) == 1:
        raise EmptyCorpus("table has a header but no data rows",
                          filename=filename)
    body = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise SchemaError(
                f"expected {len(header)} fields, got {len(row)}",
                filename=filename, line=lineno)
        body.append([f.strip() for f in row])
    return planners, body


def _check_unique_ids(ids: list[str], filename: str | None):
    seen = set()
    for tid in ids:
        if tid in seen:
            raise SchemaError(f"duplicate task id {tid!r}", filename=filename)
        seen.add(tid)


def load_targets(text: str, filename: str | None = None,
                 n_planners: int | None = PLANNER_COUNT) -> TargetTable:
    """Parse targets.csv; pass n_planners=None to accept any column count."""
    planners, body = _parse_rows(text, filename, ("task_id", "domain"),
                                 n_planners)
    ids = [row[0] for row in body]
    _check_unique_ids(ids, filename)
    domains = [row[1] for row in body]
    runtimes = np.empty((len(body), len(planners)), dtype=np.float64)
    for i, row in enumerate(body):
        for j, field in enumerate(row[2:]):
            try:
                value = float(field)
            except ValueError:
                raise SchemaError(f"runtime {field!r} is not a number",
                                  filename=filename, line=i + 2) from None
            if not np.isfinite(value) or value < 0:
                raise RangeError(
                    f"runtime {field!r} must be finite and nonnegative",
                    filename=filename, line=i + 2)
            if value > CENSORED_RUNTIME:
                raise RangeError(
                    f"runtime {field!r} exceeds the censored value "
                    f"{CENSORED_RUNTIME:g}", filename=filename, line=i + 2)
            runtimes[i, j] = value
    runtimes.setflags(write=False)
    return TargetTable(tuple(ids), tuple(domains), planners, runtimes)


def load_labels(text: str, filename: str | None = None,
                n_planners: int | None = PLANNER_COUNT) -> LabelTable:
    planners, body = _parse_rows(text, filename, ("task_id", "domain"),
                                 n_planners)
    ids = [row[0] for row in body]
    _check_unique_ids(ids, filename)
    domains = [row[1] for row in body]
    labels = np.empty((len(body), len(planners)), dtype=np.int8)
    for i, row in enumerate(body):
        for j, field in enumerate(row[2:]):
            if field not in ("0", "1"):
                raise SchemaError(f"label {field!r} must be 0 or 1",
                                  filename=filename, line=i + 2)
            labels[i, j] = int(field)
    labels.setflags(write=False)
    return LabelTable(tuple(ids), tuple(domains), planners, labels)


def load_predictions(text: str, filename: str | None = None,
                     n_planners: int | None = PLANNER_COUNT
                     ) -> PredictionTable:
    planners, body = _parse_rows(text, filename, ("task_id",), n_planners)
    ids = [row[0] for row in body]
    _check_unique_ids(ids, filename)
    probs = np.empty((len(body), len(planners)), dtype=np.float64)
    for i, row in enumerate(body):
        for j, field in enumerate(row[1:]):
            try:
                value = float(field)
            except ValueError:
                raise SchemaError(f"probability {field!r} is not a number",
                                  filename=filename, line=i + 2) from None
            if not 0.0 <= value <= 1.0:
                raise RangeError(f"probability {field!r} outside [0, 1]",
                                 filename=filename, line=i + 2)
            probs[i, j] = value
    probs.setflags(write=False)
    return PredictionTable(tuple(ids), planners, probs)


def targets_to_csv(table: TargetTable) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("task_id", "domain") + table.planners)
    for i, tid in enumerate(table.task_ids):
        writer.writerow([tid, table.domains[i]]
                        + [repr(float(v)) for v in table.runtimes[i]])
    return out.getvalue()


def labels_to_csv(table: LabelTable) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("task_id", "domain") + table.planners)
    for i, tid in enumerate(table.task_ids):
        writer.writerow([tid, table.domains[i]]
                        + [str(int(v)) for v in table.labels[i]])
    return out.getvalue()


def predictions_to_csv(table: PredictionTable) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("task_id",) + table.planners)
    for i, tid in enumerate(table.task_ids):
        writer.writerow([tid] + [repr(float(v))
                                 for v in table.probabilities[i]])
    return out.getvalue()


# ---------------------------------------------------------------------------
# Labels and selection
# ---------------------------------------------------------------------------

def binarize_targets(table: TargetTable,
                     timeout: float = DEFAULT_TIMEOUT) -> LabelTable:
    """Label 0 iff runtime <= timeout, else 1 (timeouts included)."""
    if timeout <= 0:
        raise RangeError(f"timeout must be positive, got {timeout}")
    labels = (table.runtimes > timeout).astype(np.int8)
    labels.setflags(write=False)
    return LabelTable(table.task_ids, table.domains, table.planners, labels)


def select_planner(probabilities: np.ndarray,
                   n_planners: int | None = None) -> np.ndarray:
    """Per row, the planner with the lowest predicted timeout probability.

    np.argmin returns the first minimum, which is the tie rule: the lowest
    planner index wins.
    """
    probs = np.asarray(probabilities, dtype=np.float64)
    if probs.ndim == 1:
        probs = probs[None, :]
    if probs.ndim != 2 or probs.shape[1] == 0:
        raise DimensionError("probabilities must be a nonempty vector or "
                             "matrix of planner columns")
    if n_planners is not None and probs.shape[1] != n_planners:
        raise DimensionError(f"expected {n_planners} planner columns, got "
                             f"{probs.shape[1]}")
    if not np.isfinite(probs).all():
        raise RangeError("probabilities must be finite")
    return np.argmin(probs, axis=1)


@dataclass(frozen=True)
class SelectionResult:
    n_tasks: int
    n_solved: int
    choices: tuple[int, ...]

    @property
    def success_rate(self) -> float:
        return self.n_solved / self.n_tasks if self.n_tasks else 0.0


def evaluate_selection(predictions: PredictionTable, targets: TargetTable,
                       task_ids: tuple[str, ...] | None = None,
                       timeout: float = DEFAULT_TIMEOUT) -> SelectionResult:
    """Score per-task planner choices against true runtimes.

    A task counts as solved iff the selected planner's runtime is strictly
    below the timeout.
    """
    if predictions.planners != targets.planners:
        raise SchemaError(
            "prediction planner columns "
            f"{','.join(predictions.planners)!r} do not match target "
            f"columns {','.join(targets.planners)!r}")
    if task_ids is None:
        task_ids = targets.task_ids
    pred_rows = predictions.row_index()
    target_rows = targets.row_index()
    if not task_ids:
        raise EmptyCorpus("no tasks to evaluate")
    choices = []
    solved = 0
    for tid in task_ids:
        if tid not in target_rows:
            raise SchemaError(f"task {tid!r} not present in the target table")
        if tid not in pred_rows:
            raise MissingPrediction(f"no prediction row for task {tid!r}")
        row = predictions.probabilities[pred_rows[tid]]
        choice = int(np.argmin(row))
        choices.append(choice)
        if targets.runtimes[target_rows[tid], choice] < timeout:
            solved += 1
    return SelectionResult(len(task_ids), solved, tuple(choices))


# ---------------------------------------------------------------------------
# Splits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitSpec:
    """Disjoint train/validation/test task ids plus how they were drawn."""

    mode: str
    seed: int
    train_ids: tuple[str, ...]
    val_ids: tuple[str, ...]
    test_ids: tuple[str, ...]


def _order_like(ids: set[str], reference: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(tid for tid in reference if tid in ids)


def make_split(table: TargetTable, *, mode: str, val_fraction: float,
               seed: int = 0,
               test_ids: tuple[str, ...] = ()) -> SplitSpec:
    """Carve train/validation out of the tasks left after a fixed test set.

    domain mode keeps whole domains together: domains are taken largest
    first (name as tie-break) and each goes to whichever side is farthest
    below its target size, ties to train, so the result is deterministic
    and seed-free. random mode shuffles task ids with the given seed.
    """
    if mode not in SPLIT_MODES:
        raise SchemaError(f"unknown split mode {mode!r}; expected one of "
                          f"{', '.join(SPLIT_MODES)}")
    if not 0.0 < val_fraction < 1.0:
        raise InfeasibleRatio(
            f"validation fraction must lie strictly between 0 and 1, got "
            f"{val_fraction}")
    known = set(table.task_ids)
    for tid in test_ids:
        if tid not in known:
            raise SchemaError(f"test id {tid!r} not present in the table")
    test_set = set(test_ids)
    pool = [tid for tid in table.task_ids if tid not in test_set]
    if not pool:
        raise InfeasibleRatio("no tasks left after removing the test set")
    if mode == "random":
        budget = int(len(pool) * val_fraction)
        if budget == 0 or budget == len(pool):
            raise InfeasibleRatio(
                f"validation fraction {val_fraction} leaves an empty side "
                f"for {len(pool)} tasks")
        rng = random.Random(seed)
        shuffled = list(pool)
        rng.shuffle(shuffled)
        val = set(shuffled[:budget])
    else:
        domain_of = dict(zip(table.task_ids, table.domains))
        by_domain: dict[str, list[str]] = {}
        for tid in pool:
            by_domain.setdefault(domain_of[tid], []).append(tid)
        ordered = sorted(by_domain.items(),
                         key=lambda item: (-len(item[1]), item[0]))
        train_target = (1.0 - val_fraction) * len(pool)
        val_target = val_fraction * len(pool)
        val = set()
        train_count = val_count = 0
        for _, ids in ordered:
            if val_target - val_count > train_target - train_count:
                val.update(ids)
                val_count += len(ids)
            else:
                train_count += len(ids)
        if not val or val_count == len(pool):
            raise InfeasibleRatio(
                f"whole-domain assignment cannot realize validation "
                f"fraction {val_fraction}: the smallest domain exceeds the "
                f"validation budget of {val_target:g} tasks")
    train = set(pool) - val
    return SplitSpec(
        mode=mode,
        seed=seed,
        train_ids=_order_like(train, table.task_ids),
        val_ids=_order_like(val, table.task_ids),
        test_ids=_order_like(test_set, table.task_ids),
    )


def make_splits(table: TargetTable, *, mode: str, val_fraction: float,
                seeds: tuple[int, ...] = tuple(range(10)),
                test_ids: tuple[str, ...] = ()) -> list[SplitSpec]:
    """One split per seed; in domain mode the task sets repeat by design."""
    return [make_split(table, mode=mode, val_fraction=val_fraction,
                       seed=seed, test_ids=test_ids) for seed in seeds]


def split_to_json(spec: SplitSpec) -> bytes:
    payload = {
        "mode": spec.mode,
        "seed": spec.seed,
        "train": list(spec.train_ids),
        "val": list(spec.val_ids),
        "test": list(spec.test_ids),
    }
    return (json.dumps(payload, separators=(",", ":")) + "\n").encode("ascii")


def split_from_json(data: bytes, filename: str | None = None) -> SplitSpec:
    try:
        payload = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"invalid split file: {exc}",
                          filename=filename) from None
    if not isinstance(payload, dict):
        raise SchemaError("split file must hold a JSON object",
                          filename=filename)
    for key in ("mode", "seed", "train", "val", "test"):
        if key not in payload:
            raise SchemaError(f"split file is missing the {key!r} field",
                              filename=filename)
    if payload["mode"] not in SPLIT_MODES:
        raise SchemaError(f"unknown split mode {payload['mode']!r}",
                          filename=filename)
    if not isinstance(payload["seed"], int):
        raise SchemaError("split seed must be an integer", filename=filename)
    sides = []
    for key in ("train", "val", "test"):
        ids = payload[key]
        if not isinstance(ids, list) or any(not isinstance(t, str)
                                            for t in ids):
            raise SchemaError(f"split field {key!r} must be a list of "
                              "task ids", filename=filename)
        sides.append(tuple(ids))
    train, val, test = sides
    combined = list(train) + list(val) + list(test)
    if len(set(combined)) != len(combined):
        raise SchemaError("split sides overlap or repeat task ids",
                          filename=filename)
    return SplitSpec(payload["mode"], payload["seed"], train, val, test)
