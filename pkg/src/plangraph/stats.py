"""Structural statistics for single graphs and corpora.

Degree, connectivity, and diameter are all taken over the undirected view
of a graph. Diameters are exact (max finite pairwise BFS distance across
all components) and skipped above a node-count cap, since the cost grows
with nodes times edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .errors import EmptyCorpus
from .graph import TypedDigraph, UndirectedView, undirected_view

DEFAULT_DIAMETER_CAP = 20_000
_BFS_BATCH = 256


def _adjacency(view: UndirectedView) -> sparse.csr_matrix:
    n = view.n_nodes
    if view.edges.shape[0] == 0:
        return sparse.csr_matrix((n, n), dtype=np.int8)
    src = view.edges[:, 0]
    dst = view.edges[:, 1]
    data = np.ones(2 * len(src), dtype=np.int8)
    rows = np.concatenate([src, dst])
    cols = np.concatenate([dst, src])
    return sparse.csr_matrix((data, (rows, cols)), shape=(n, n))


def connected_component_count(view: UndirectedView) -> int:
    if view.n_nodes == 0:
        return 0
    count, _ = csgraph.connected_components(_adjacency(view), directed=False)
    return int(count)


def undirected_diameter(view: UndirectedView,
                        cap: int | None = DEFAULT_DIAMETER_CAP) -> int | None:
    """Largest finite BFS distance between any node pair, or None if capped.

    Disconnected pairs are infinite and ignored, so the result is the
    maximum over the per-component diameters.
    """
    if cap is not None and view.n_nodes > cap:
        return None
    if view.n_nodes == 0:
        return None
    adj = _adjacency(view)
    best = 0
    # Batched all-sources BFS keeps memory at O(batch * n) instead of O(n^2).
    for start in range(0, view.n_nodes, _BFS_BATCH):
        indices = np.arange(start, min(start + _BFS_BATCH, view.n_nodes))
        dist = csgraph.dijkstra(adj, directed=False, unweighted=True,
                                indices=indices)
        finite = dist[np.isfinite(dist)]
        if finite.size:
            best = max(best, int(finite.max()))
    return best


@dataclass(frozen=True)
class GraphStats:
    """Per-graph record; diameter is None when skipped by the cap."""

    name: str
    family: str
    n_nodes: int
    n_edges: int
    n_undirected_edges: int
    avg_degree: float
    n_components: int
    diameter: int | None


def graph_stats(graph: TypedDigraph, *, name: str = "",
                diameter_cap: int | None = DEFAULT_DIAMETER_CAP) -> GraphStats:
    view = undirected_view(graph)
    n = graph.n_nodes
    und = view.edges.shape[0]
    return GraphStats(
        name=name,
        family=graph.family,
        n_nodes=n,
        n_edges=graph.n_edges,
        n_undirected_edges=und,
        avg_degree=(2.0 * und / n) if n else 0.0,
        n_components=connected_component_count(view),
        diameter=undirected_diameter(view, cap=diameter_cap),
    )


@dataclass(frozen=True)
class CorpusStats:
    """Aggregates over a list of per-graph records.

    Standard deviations are population (ddof=0); diameter aggregates cover
    only the records whose diameter was actually computed.
    """

    n_graphs: int
    total_nodes: int
    max_nodes: int
    mean_nodes: float
    std_nodes: float
    total_edges: int
    max_edges: int
    mean_edges: float
    std_edges: float
    mean_avg_degree: float
    std_avg_degree: float
    mean_components: float
    std_components: float
    frac_over_1000_nodes: float
    frac_diameter_computed: float
    max_diameter: int | None
    mean_diameter: float | None
    std_diameter: float | None


def corpus_stats(records: list[GraphStats]) -> CorpusStats:
    if not records:
        raise EmptyCorpus("cannot aggregate statistics over zero graphs")
    nodes = np.array([r.n_nodes for r in records], dtype=np.int64)
    edges = np.array([r.n_edges for r in records], dtype=np.int64)
    degrees = np.array([r.avg_degree for r in records], dtype=np.float64)
    components = np.array([r.n_components for r in records], dtype=np.int64)
    diameters = np.array([r.diameter for r in records
                          if r.diameter is not None], dtype=np.int64)
    return CorpusStats(
        n_graphs=len(records),
        total_nodes=int(nodes.sum()),
        max_nodes=int(nodes.max()),
        mean_nodes=float(nodes.mean()),
        std_nodes=float(nodes.std()),
        total_edges=int(edges.sum()),
        max_edges=int(edges.max()),
        mean_edges=float(edges.mean()),
        std_edges=float(edges.std()),
        mean_avg_degree=float(degrees.mean()),
        std_avg_degree=float(degrees.std()),
        mean_components=float(components.mean()),
        std_components=float(components.std()),
        frac_over_1000_nodes=float((nodes > 1000).mean()),
        frac_diameter_computed=diameters.size / len(records),
        max_diameter=int(diameters.max()) if diameters.size else None,
        mean_diameter=float(diameters.mean()) if diameters.size else None,
        std_diameter=float(diameters.std()) if diameters.size else None,
    )


def sample_stds(records: list[GraphStats]) -> dict[str, float | None]:
    """Sample standard deviations (ddof=1) for the same columns; needs n>=2."""
    if not records:
        raise EmptyCorpus("cannot aggregate statistics over zero graphs")

    def _std(values: list[float]) -> float | None:
        if len(values) < 2:
            return None
        return float(np.std(np.asarray(values, dtype=np.float64), ddof=1))

    return {
        "sample_std_nodes": _std([r.n_nodes for r in records]),
        "sample_std_edges": _std([r.n_edges for r in records]),
        "sample_std_avg_degree": _std([r.avg_degree for r in records]),
        "sample_std_components": _std([r.n_components for r in records]),
        "sample_std_diameter": _std([r.diameter for r in records
                                     if r.diameter is not None]),
    }


def size_quantiles(records: list[GraphStats],
                   qs: tuple[float, ...] = (0.0, 0.25, 0.5, 0.75, 1.0),
                   ) -> list[float]:
    """Node-count quantiles with linear interpolation between order stats."""
    if not records:
        raise EmptyCorpus("cannot take quantiles over zero graphs")
    for q in qs:
        if not 0.0 <= q <= 1.0:
            raise ValueError(f"quantile {q} outside [0, 1]")
    nodes = np.array([r.n_nodes for r in records], dtype=np.float64)
    return [float(v) for v in np.quantile(nodes, list(qs))]


@dataclass(frozen=True)
class SizeDistribution:
    """Box-plot row of the node-count distribution for one graph family."""

    family: str
    n_graphs: int
    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean: float
    frac_over_1000: float


def size_distribution(records: list[GraphStats]) -> list[SizeDistribution]:
    """One quartile row per family, families in first-appearance order."""
    if not records:
        raise EmptyCorpus("cannot take a distribution over zero graphs")
    by_family: dict[str, list[GraphStats]] = {}
    for r in records:
        by_family.setdefault(r.family, []).append(r)
    rows = []
    for family, group in by_family.items():
        lo, q1, med, q3, hi = size_quantiles(group)
        nodes = np.array([r.n_nodes for r in group], dtype=np.int64)
        rows.append(SizeDistribution(
            family=family, n_graphs=len(group), min=lo, q1=q1, median=med,
            q3=q3, max=hi, mean=float(nodes.mean()),
            frac_over_1000=float((nodes > 1000).mean())))
    return rows
