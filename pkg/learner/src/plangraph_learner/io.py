"""File-level coupling to the graph toolkit: everything comes in as files.

This package never imports the graph compiler; it reads the formats the
compiler documents (`*.graph.json`, `labels.csv`, `split.json`) and writes
the `preds.csv` its `eval-select` command consumes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import sparse

from .errors import DimensionMismatch, FormatError


@dataclass(frozen=True)
class PreparedGraph:
    """One-hot node features plus the normalized propagation matrix."""

    name: str
    features: np.ndarray        # (n_nodes, n_kinds) float64
    propagation: sparse.csr_matrix  # (n_nodes, n_nodes)

    @property
    def n_nodes(self) -> int:
        return int(self.features.shape[0])

    @property
    def feature_dim(self) -> int:
        return int(self.features.shape[1])


def _normalized_adjacency(n: int, edges: np.ndarray,
                          directed: bool) -> sparse.csr_matrix:
    """Adjacency plus self-loops, degree-normalized on both sides.

    Undirected (default): edges are symmetrized first, so the matrix is
    symmetric and the normalization is the usual D^-1/2 (A+I) D^-1/2.
    Directed: edge direction is kept and row/column degrees normalize
    their own side.
    """
    if edges.size:
        src, dst = edges[:, 0], edges[:, 1]
        if directed:
            rows = np.concatenate([src, np.arange(n)])
            cols = np.concatenate([dst, np.arange(n)])
        else:
            rows = np.concatenate([src, dst, np.arange(n)])
            cols = np.concatenate([dst, src, np.arange(n)])
    else:
        rows = cols = np.arange(n)
    data = np.ones(rows.shape[0], dtype=np.float64)
    a = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
    a.data[:] = 1.0  # collapse duplicate entries from symmetrization
    a.sum_duplicates()
    a.data[:] = 1.0

    row_deg = np.asarray(a.sum(axis=1)).ravel()
    col_deg = np.asarray(a.sum(axis=0)).ravel()
    d_row = sparse.diags(1.0 / np.sqrt(row_deg))
    d_col = sparse.diags(1.0 / np.sqrt(col_deg))
    return (d_row @ a @ d_col).tocsr()


def read_graph_json(path: str | Path, directed: bool = False) -> PreparedGraph:
    """Parse a ``*.graph.json`` file into features and propagation matrix."""
    path = Path(path)
    try:
        obj = json.loads(path.read_bytes())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from None
    try:
        vocabulary = list(obj["meta"]["kind_vocabulary"])
        nodes = obj["nodes"]
        edge_list = obj["edges"]
    except (KeyError, TypeError):
        raise FormatError(f"{path}: missing meta/nodes/edges sections")
    index = {kind: i for i, kind in enumerate(vocabulary)}
    kind_ids = np.empty(len(nodes), dtype=np.int64)
    for i, node in enumerate(nodes):
        try:
            kind_ids[i] = index[node["kind"]]
        except (KeyError, TypeError):
            raise FormatError(f"{path}: node {i} has no known kind")
    features = np.eye(len(vocabulary), dtype=np.float64)[kind_ids]

    edges = np.asarray(edge_list, dtype=np.int64).reshape(-1, 2)
    if edges.size and (edges.min() < 0 or edges.max() >= len(nodes)):
        raise FormatError(f"{path}: edge endpoint out of range")
    name = path.name
    if name.endswith(".graph.json"):
        name = name[:-len(".graph.json")]
    return PreparedGraph(name, features,
                         _normalized_adjacency(len(nodes), edges, directed))


@dataclass(frozen=True)
class LabelSet:
    """Binary timeout labels per task and planner, in file order."""

    task_ids: tuple[str, ...]
    planners: tuple[str, ...]
    labels: np.ndarray  # (n_tasks, n_planners) float64 in {0, 1}

    def row_index(self) -> dict[str, int]:
        return {tid: i for i, tid in enumerate(self.task_ids)}


def load_labels_csv(path: str | Path) -> LabelSet:
    """Parse labels.csv: header ``task_id,domain,<planner...>``, 0/1 cells."""
    path = Path(path)
    rows = [r for r in csv.reader(io.StringIO(path.read_text())) if r]
    if not rows or rows[0][:2] != ["task_id", "domain"]:
        raise FormatError(f"{path}: header must start with task_id,domain")
    planners = tuple(rows[0][2:])
    if not planners:
        raise FormatError(f"{path}: no planner columns")
    ids = []
    labels = np.empty((len(rows) - 1, len(planners)), dtype=np.float64)
    for i, row in enumerate(rows[1:]):
        if len(row) != len(rows[0]):
            raise FormatError(f"{path}: row {i + 2} has {len(row)} fields")
        ids.append(row[0])
        for j, field in enumerate(row[2:]):
            if field not in ("0", "1"):
                raise FormatError(f"{path}: label {field!r} must be 0 or 1")
            labels[i, j] = float(field)
    return LabelSet(tuple(ids), planners, labels)


@dataclass(frozen=True)
class Split:
    train: tuple[str, ...]
    val: tuple[str, ...]
    test: tuple[str, ...]


def load_split_json(path: str | Path) -> Split:
    path = Path(path)
    try:
        payload = json.loads(path.read_bytes())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from None
    sides = []
    for key in ("train", "val", "test"):
        ids = payload.get(key)
        if not isinstance(ids, list):
            raise FormatError(f"{path}: missing {key!r} id list")
        sides.append(tuple(ids))
    return Split(*sides)


def load_graphs(graphs_dir: str | Path, task_ids: tuple[str, ...],
                directed: bool = False) -> dict[str, PreparedGraph]:
    """One ``<task_id>.graph.json`` per task, all with one feature width."""
    graphs: dict[str, PreparedGraph] = {}
    width: int | None = None
    for tid in task_ids:
        path = Path(graphs_dir) / f"{tid}.graph.json"
        if not path.exists():
            raise FormatError(f"no graph file for task {tid!r}: {path}")
        g = read_graph_json(path, directed=directed)
        if width is None:
            width = g.feature_dim
        elif g.feature_dim != width:
            raise DimensionMismatch(
                f"graph {tid!r} has {g.feature_dim} feature columns but the "
                f"corpus started with {width}; mixed graph families cannot "
                f"share one model")
        graphs[tid] = g
    return graphs


def write_predictions_csv(path: str | Path, task_ids: tuple[str, ...],
                          planners: tuple[str, ...],
                          probabilities: np.ndarray) -> None:
    """Write preds.csv: ``task_id,<planner...>`` with one row per task."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("task_id",) + tuple(planners))
    for tid, row in zip(task_ids, probabilities):
        writer.writerow([tid] + [repr(float(p)) for p in row])
    Path(path).write_text(out.getvalue())
