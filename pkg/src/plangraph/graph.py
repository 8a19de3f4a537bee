"""Typed directed graphs with deterministic ids, features, and serialization.

Both graph families (grounded task graphs and lifted structure graphs) share
this representation: a dense array of node-kind tags, a canonical edge array,
and a fixed per-family kind vocabulary that doubles as the one-hot feature
basis and as part of the on-disk format.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InternalError, SchemaError

# Vocabulary order is part of the file format; do not reorder.
GROUNDED_FAMILY = "grounded"
LIFTED_FAMILY = "lifted"

KIND_VOCABULARIES = {
    GROUNDED_FAMILY: (
        "init",
        "goal",
        "variable",
        "fact",
        "operator",
        "operator_effect",
        "axiom",
    ),
    LIFTED_FAMILY: (
        "set",
        "tuple",
        "aux",
        "symbol_predicate",
        "symbol_function",
        "symbol_number",
        "symbol_variable",
        "symbol_constant",
    ),
}


@dataclass(frozen=True)
class TypedDigraph:
    """Immutable directed graph with per-node kind tags.

    ``kinds[i]`` indexes into ``kind_vocabulary``; ``edges`` is an (m, 2)
    array of unique (src, dst) pairs sorted lexicographically. ``provenance``
    holds a human-readable origin string per node (e.g. ``"fact v3=2"``); it
    is debug metadata, excluded from features and structural equality.
    """

    family: str
    kind_vocabulary: tuple[str, ...]
    kinds: np.ndarray
    edges: np.ndarray
    provenance: tuple[str, ...]

    @property
    def n_nodes(self) -> int:
        return int(self.kinds.shape[0])

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])

    def kind_of(self, node: int) -> str:
        return self.kind_vocabulary[int(self.kinds[node])]

    def kind_counts(self) -> dict[str, int]:
        counts = np.bincount(self.kinds, minlength=len(self.kind_vocabulary))
        return {k: int(c) for k, c in zip(self.kind_vocabulary, counts)}


def make_graph(family: str, kinds: Sequence[str],
               edges: Iterable[tuple[int, int]],
               provenance: Sequence[str] | None = None) -> TypedDigraph:
    """Build a validated graph; deduplicates edges and sorts them canonically."""
    vocabulary = KIND_VOCABULARIES.get(family)
    if vocabulary is None:
        raise InternalError(f"unknown graph family {family!r}")
    index = {k: i for i, k in enumerate(vocabulary)}
    try:
        kind_ids = np.fromiter((index[k] for k in kinds), dtype=np.uint8,
                               count=len(kinds))
    except KeyError as exc:
        raise InternalError(f"kind {exc.args[0]!r} not in {family} vocabulary")
    n = len(kinds)

    edge_arr = np.array(sorted(set((int(s), int(d)) for s, d in edges)),
                        dtype=np.int64).reshape(-1, 2)
    if edge_arr.size and (edge_arr.min() < 0 or edge_arr.max() >= n):
        raise InternalError("edge endpoint out of node range")

    if provenance is None:
        provenance = tuple("" for _ in range(n))
    else:
        provenance = tuple(provenance)
        if len(provenance) != n:
            raise InternalError("provenance length != node count")

    kind_ids.setflags(write=False)
    edge_arr.setflags(write=False)
    return TypedDigraph(family, vocabulary, kind_ids, edge_arr, provenance)


def graphs_equal(a: TypedDigraph, b: TypedDigraph,
                 include_provenance: bool = False) -> bool:
    """Structural equality; provenance is compared only when asked."""
    same = (a.family == b.family
            and a.kind_vocabulary == b.kind_vocabulary
            and np.array_equal(a.kinds, b.kinds)
            and np.array_equal(a.edges, b.edges))
    if same and include_provenance:
        same = a.provenance == b.provenance
    return same


def one_hot_features(g: TypedDigraph) -> np.ndarray:
    """Per-node one-hot feature matrix of shape (n, |kind_vocabulary|)."""
    k = len(g.kind_vocabulary)
    return np.eye(k, dtype=np.float64)[g.kinds].reshape(g.n_nodes, k)


@dataclass(frozen=True)
class UndirectedView:
    """Simple undirected collapse: no self-loops, no parallel edges."""

    n_nodes: int
    edges: np.ndarray  # (m, 2) with u < v, unique, sorted

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])


def undirected_view(g: TypedDigraph) -> UndirectedView:
    """Collapse direction: {u, v} present iff (u,v) or (v,u) is an edge, u != v."""
    if g.n_edges == 0:
        return UndirectedView(g.n_nodes, np.empty((0, 2), dtype=np.int64))
    lo = g.edges.min(axis=1)
    hi = g.edges.max(axis=1)
    keep = lo != hi  # drop self-loops
    pairs = np.stack([lo[keep], hi[keep]], axis=1)
    pairs = np.unique(pairs, axis=0) if pairs.size else pairs.reshape(0, 2)
    pairs.setflags(write=False)
    return UndirectedView(g.n_nodes, pairs)


# ---------------------------------------------------------------------------
# Serialization
#
# json: one object with "meta", "nodes", "edges"; byte-deterministic.
# edge_csv: "src,dst" rows; node kinds travel in a sibling <name>.nodes.csv.
# ---------------------------------------------------------------------------

FORMATS = ("json", "edge_csv")


def serialize(g: TypedDigraph, format: str = "json") -> bytes:
    """Serialize to the requested format (edge_csv yields the edge stream only)."""
    if format == "json":
        return _to_json_bytes(g)
    if format == "edge_csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["src", "dst"])
        for s, d in g.edges:
            writer.writerow([int(s), int(d)])
        return buf.getvalue().encode()
    raise SchemaError(f"unknown serialization format {format!r}")


def serialize_nodes_csv(g: TypedDigraph) -> bytes:
    """The sibling node table for the edge_csv format: header ``id,kind``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "kind"])
    for i in range(g.n_nodes):
        writer.writerow([i, g.kind_of(i)])
    return buf.getvalue().encode()


def _to_json_bytes(g: TypedDigraph) -> bytes:
    obj = {
        "meta": {
            "family": g.family,
            "n_nodes": g.n_nodes,
            "n_edges": g.n_edges,
            "kind_vocabulary": list(g.kind_vocabulary),
        },
        "nodes": [
            {"id": i, "kind": g.kind_of(i), "provenance": g.provenance[i]}
            for i in range(g.n_nodes)
        ],
        "edges": [[int(s), int(d)] for s, d in g.edges],
    }
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False).encode()


def deserialize(data: bytes, format: str = "json",
                nodes_data: bytes | None = None) -> TypedDigraph:
    """Inverse of :func:`serialize`; raises SchemaError on any violation.

    For ``edge_csv`` the sibling node table must be supplied via ``nodes_data``.
    """
    if format == "json":
        return _from_json_bytes(data)
    if format == "edge_csv":
        if nodes_data is None:
            raise SchemaError("edge_csv deserialization needs the nodes table")
        return _from_csv_bytes(data, nodes_data)
    raise SchemaError(f"unknown serialization format {format!r}")


def _from_json_bytes(data: bytes) -> TypedDigraph:
    if not data.strip():
        raise SchemaError("empty graph file")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}")
    if not isinstance(obj, dict):
        raise SchemaError("top-level value must be an object")
    for key in ("meta", "nodes", "edges"):
        if key not in obj:
            raise SchemaError(f"missing {key!r} section")
    meta = obj["meta"]
    family = meta.get("family")
    if family not in KIND_VOCABULARIES:
        raise SchemaError(f"unknown graph family {family!r}")
    vocabulary = KIND_VOCABULARIES[family]
    if list(vocabulary) != meta.get("kind_vocabulary"):
        raise SchemaError("kind vocabulary does not match the format definition")

    nodes = obj["nodes"]
    if not isinstance(nodes, list):
        raise SchemaError("nodes must be an array")
    kinds: list[str] = []
    provenance: list[str] = []
    for i, entry in enumerate(nodes):
        if not isinstance(entry, dict) or entry.get("id") != i:
            raise SchemaError(f"node {i} missing or out of order")
        kind = entry.get("kind")
        if kind not in vocabulary:
            raise SchemaError(f"node {i} has unknown kind {kind!r}")
        kinds.append(kind)
        provenance.append(str(entry.get("provenance", "")))

    edges = obj["edges"]
    if not isinstance(edges, list):
        raise SchemaError("edges must be an array")
    pairs = []
    for e in edges:
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(x, int) for x in e)):
            raise SchemaError(f"malformed edge entry {e!r}")
        if not (0 <= e[0] < len(kinds) and 0 <= e[1] < len(kinds)):
            raise SchemaError(f"edge {e!r} endpoint out of range")
        pairs.append((e[0], e[1]))
    return make_graph(family, kinds, pairs, provenance)


def _from_csv_bytes(edge_data: bytes, nodes_data: bytes) -> TypedDigraph:
    if not nodes_data.strip():
        raise SchemaError("empty node table")
    node_rows = list(csv.reader(io.StringIO(nodes_data.decode())))
    if not node_rows or node_rows[0] != ["id", "kind"]:
        raise SchemaError("node table must start with header id,kind")
    kinds: list[str] = []
    for i, row in enumerate(node_rows[1:]):
        if len(row) != 2 or row[0] != str(i):
            raise SchemaError(f"node row {i} malformed or out of order")
        kinds.append(row[1])

    family = _infer_family(kinds)

    edge_rows = list(csv.reader(io.StringIO(edge_data.decode())))
    if not edge_rows or edge_rows[0] != ["src", "dst"]:
        raise SchemaError("edge table must start with header src,dst")
    pairs = []
    for row in edge_rows[1:]:
        try:
            s, d = int(row[0]), int(row[1])
        except (ValueError, IndexError):
            raise SchemaError(f"malformed edge row {row!r}")
        if not (0 <= s < len(kinds) and 0 <= d < len(kinds)):
            raise SchemaError(f"edge {row!r} endpoint out of range")
        pairs.append((s, d))
    return make_graph(family, kinds, pairs)


def _infer_family(kinds: Sequence[str]) -> str:
    for family, vocabulary in KIND_VOCABULARIES.items():
        if all(k in vocabulary for k in kinds):
            return family
    raise SchemaError("node kinds do not match any graph family")


# ---------------------------------------------------------------------------
# File helpers
# ---------------------------------------------------------------------------

def graph_path(out_dir: Path, stem: str, format: str) -> Path:
    suffix = ".graph.json" if format == "json" else ".edges.csv"
    return Path(out_dir) / (stem + suffix)


def write_graph(g: TypedDigraph, path: Path, format: str = "json") -> None:
    """Write a graph file; edge_csv also writes the sibling ``.nodes.csv``."""
    path = Path(path)
    path.write_bytes(serialize(g, format))
    if format == "edge_csv":
        sibling = path.with_name(path.name.replace(".edges.csv", ".nodes.csv"))
        sibling.write_bytes(serialize_nodes_csv(g))


def read_graph(path: Path) -> TypedDigraph:
    """Read a graph from ``*.graph.json`` or ``*.edges.csv`` (+ sibling)."""
    path = Path(path)
    name = path.name
    if name.endswith(".graph.json") or name.endswith(".json"):
        return deserialize(path.read_bytes(), "json")
    if name.endswith(".edges.csv"):
        sibling = path.with_name(name.replace(".edges.csv", ".nodes.csv"))
        if not sibling.exists():
            raise SchemaError(f"missing sibling node table {sibling.name}",
                              filename=str(path))
        return deserialize(path.read_bytes(), "edge_csv",
                           nodes_data=sibling.read_bytes())
    raise SchemaError(f"unrecognized graph file name {name!r}",
                      filename=str(path))
