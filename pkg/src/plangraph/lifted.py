"""Lifted structure graphs: a DAG encoding of a recursive structure value.

Each distinct sub-structure becomes one node (structural identity via the
construction-time digests; see :mod:`plangraph.structures`). A set node gets
one edge to each member. A tuple node expands into a chain of fresh auxiliary
nodes encoding component order: tuple -> aux_1 -> aux_2 -> ... with aux_i ->
component_i. All edges point from structures to sub-structures, so the result
is acyclic by construction; :func:`assert_acyclic` verifies that loudly.

Two sharing modes: the default reuses one node per distinct structure
(symbols are necessarily shared either way); ``share=False`` duplicates
composite structures per occurrence. Auxiliary nodes are never shared across
tuple nodes.
"""

from __future__ import annotations

import heapq

import numpy as np

from .errors import CycleError, SharingOverflow
from .graph import LIFTED_FAMILY, TypedDigraph, make_graph
from .structures import SetStruct, Structure, Symbol, TupleStruct

DEFAULT_STRUCTURE_CAP = 10_000_000


def build_lifted_graph(root: Structure, *, share: bool = True,
                       max_structures: int = DEFAULT_STRUCTURE_CAP) -> TypedDigraph:
    """Construct the lifted graph of a structure value.

    Node ids follow a deterministic depth-first traversal: a composite is
    numbered before its children; a tuple's auxiliary chain is numbered
    before the components; set members are visited in canonical digest
    order, tuple components in position order.
    """
    kinds: list[str] = []
    provenance: list[str] = []
    edges: list[tuple[int, int]] = []
    node_of: dict[bytes, int] = {}
    n_structures = 0

    def alloc(kind: str, origin: str) -> int:
        kinds.append(kind)
        provenance.append(origin)
        return len(kinds) - 1

    # Work stack: (structure, edge source or None). Children are pushed in
    # reverse so they pop in canonical order.
    stack: list[tuple[Structure, int | None]] = [(root, None)]
    while stack:
        struct, src = stack.pop()
        reuse = share or isinstance(struct, Symbol)
        if reuse and struct.digest in node_of:
            if src is not None:
                edges.append((src, node_of[struct.digest]))
            continue

        n_structures += 1
        if n_structures > max_structures:
            raise SharingOverflow(
                f"distinct-structure count exceeded the cap of {max_structures}")

        if isinstance(struct, Symbol):
            nid = alloc(f"symbol_{struct.type}", f"{struct.type} {struct.name}")
        elif isinstance(struct, SetStruct):
            nid = alloc("set", f"set(n={len(struct.children)})")
        else:
            nid = alloc("tuple", f"tuple(n={len(struct.children)})")
        if reuse:
            node_of[struct.digest] = nid
        if src is not None:
            edges.append((src, nid))

        if isinstance(struct, Symbol):
            continue
        if isinstance(struct, SetStruct):
            for child in reversed(struct.children):
                stack.append((child, nid))
            continue

        # Tuple: allocate the auxiliary chain up front, then queue components.
        n = len(struct.children)
        aux = [alloc("aux", f"aux {i + 1}/{n}") for i in range(n)]
        if aux:
            edges.append((nid, aux[0]))
        for i in range(1, n):
            edges.append((aux[i - 1], aux[i]))
        for i in range(n - 1, -1, -1):
            stack.append((struct.children[i], aux[i]))

    return make_graph(LIFTED_FAMILY, kinds, edges, provenance)


def assert_acyclic(g: TypedDigraph) -> np.ndarray:
    """Return a topological order of ``g`` or raise CycleError with a witness.

    A cycle here indicates a builder bug, never bad input, hence the
    internal-error classification of CycleError.
    """
    n = g.n_nodes
    out_start = np.searchsorted(g.edges[:, 0], np.arange(n + 1))
    indegree = np.bincount(g.edges[:, 1], minlength=n) if g.n_edges else \
        np.zeros(n, dtype=np.int64)

    ready = [i for i in range(n) if indegree[i] == 0]
    heapq.heapify(ready)
    indegree = indegree.copy()
    order = np.empty(n, dtype=np.int64)
    filled = 0
    while ready:
        node = heapq.heappop(ready)
        order[filled] = node
        filled += 1
        for k in range(out_start[node], out_start[node + 1]):
            dst = int(g.edges[k, 1])
            indegree[dst] -= 1
            if indegree[dst] == 0:
                heapq.heappush(ready, dst)

    if filled < n:
        raise CycleError("graph contains a cycle", _find_cycle(g, indegree))
    return order


def _find_cycle(g: TypedDigraph, indegree: np.ndarray) -> list[int]:
    """Walk the unprocessed subgraph until a node repeats; return that loop."""
    remaining = set(np.flatnonzero(indegree > 0).tolist())
    out_start = np.searchsorted(g.edges[:, 0], np.arange(g.n_nodes + 1))
    node = min(remaining)
    path: list[int] = []
    seen_at: dict[int, int] = {}
    while node not in seen_at:
        seen_at[node] = len(path)
        path.append(node)
        for k in range(out_start[node], out_start[node + 1]):
            dst = int(g.edges[k, 1])
            if dst in remaining:
                node = dst
                break
    return path[seen_at[node]:] + [node]
