"""Shared test utilities: random generators and independent oracles.

The oracles here deliberately re-derive expected values through a different
route than the library (plain dict/set bookkeeping, hand-rolled
Floyd-Warshall, recursive counting) so tests never compare the code against
itself.
"""

from __future__ import annotations

import random
from pathlib import Path

import numpy as np

from plangraph import SetStruct, Symbol, TupleStruct
from plangraph.sas import SasTask

FIXTURES = Path(__file__).parent / "fixtures"


# ---------------------------------------------------------------------------
# Random SAS tasks (rendered as translator text, then parsed by the library)
# ---------------------------------------------------------------------------

def random_sas_text(rng: random.Random, max_vars: int = 50) -> str:
    """A syntactically valid translator file with random content.

    Uses prevail conditions, effect conditions, per-effect preconditions,
    axioms on derived variables, and both metric settings.
    """
    metric = rng.randint(0, 1)
    n_vars = rng.randint(1, max_vars)
    n_derived = rng.randint(0, min(3, n_vars - 1)) if n_vars > 1 else 0
    layers = [-1] * (n_vars - n_derived) + [0] * n_derived
    rng.shuffle(layers)
    domains = [rng.randint(1, 5) for _ in range(n_vars)]

    lines = ["begin_version", "3", "end_version",
             "begin_metric", str(metric), "end_metric", str(n_vars)]
    for v in range(n_vars):
        lines += ["begin_variable", f"var{v}", str(layers[v]),
                  str(domains[v])]
        lines += [f"Atom p{v}({d})" for d in range(domains[v])]
        lines += ["end_variable"]

    n_mutexes = rng.randint(0, 2)
    lines.append(str(n_mutexes))
    for _ in range(n_mutexes):
        size = rng.randint(1, 3)
        lines += ["begin_mutex_group", str(size)]
        for _ in range(size):
            v = rng.randrange(n_vars)
            lines.append(f"{v} {rng.randrange(domains[v])}")
        lines.append("end_mutex_group")

    lines.append("begin_state")
    lines += [str(rng.randrange(domains[v])) for v in range(n_vars)]
    lines.append("end_state")

    goal_vars = sorted(rng.sample(range(n_vars),
                                  rng.randint(0, min(4, n_vars))))
    lines += ["begin_goal", str(len(goal_vars))]
    lines += [f"{v} {rng.randrange(domains[v])}" for v in goal_vars]
    lines.append("end_goal")

    n_ops = rng.randint(0, 6)
    lines.append(str(n_ops))
    for o in range(n_ops):
        lines += ["begin_operator", f"op{o} x{rng.randrange(9)}"]
        prevail_vars = rng.sample(range(n_vars),
                                  rng.randint(0, min(3, n_vars)))
        lines.append(str(len(prevail_vars)))
        lines += [f"{v} {rng.randrange(domains[v])}"
                  for v in sorted(prevail_vars)]
        # effect variables must avoid the prevail variables
        free = [v for v in range(n_vars) if v not in prevail_vars]
        n_effs = rng.randint(1, min(3, len(free))) if free else 0
        eff_vars = rng.sample(free, n_effs)
        lines.append(str(n_effs))
        for v in eff_vars:
            cond_pool = [c for c in range(n_vars) if c != v]
            conds = rng.sample(cond_pool,
                               rng.randint(0, min(2, len(cond_pool))))
            parts = [str(len(conds))]
            for c in sorted(conds):
                parts += [str(c), str(rng.randrange(domains[c]))]
            old = rng.choice([-1, rng.randrange(domains[v])])
            new = rng.randrange(domains[v])
            parts += [str(v), str(old), str(new)]
            lines.append(" ".join(parts))
        lines.append(str(rng.randint(0, 10) if metric else 1))
        lines.append("end_operator")

    derived = [v for v in range(n_vars) if layers[v] >= 0]
    n_axioms = rng.randint(0, 3) if derived else 0
    lines.append(str(n_axioms))
    for _ in range(n_axioms):
        head = rng.choice(derived)
        body_pool = [c for c in range(n_vars) if c != head]
        body = rng.sample(body_pool, rng.randint(0, min(2, len(body_pool))))
        lines += ["begin_rule", str(len(body))]
        lines += [f"{c} {rng.randrange(domains[c])}" for c in sorted(body)]
        lines.append(f"{head} -1 {rng.randrange(domains[head])}")
        lines.append("end_rule")
    return "\n".join(lines) + "\n"


def reference_grounded_edges(task: SasTask) -> list[tuple[int, int]]:
    """Naive re-derivation of the five edge families with plain dicts."""
    n_init, n_goal = 0, 1
    var_node = {}
    next_id = 2
    for v in range(len(task.variables)):
        var_node[v] = next_id
        next_id += 1
    fact_node = {}
    for v, var in enumerate(task.variables):
        for d in range(len(var.values)):
            fact_node[(v, d)] = next_id
            next_id += 1
    op_node = {}
    for o in range(len(task.operators)):
        op_node[o] = next_id
        next_id += 1
    eff_node = {}
    for o, op in enumerate(task.operators):
        for e in range(len(op.effects)):
            eff_node[(o, e)] = next_id
            next_id += 1
    axiom_node = {}
    for a in range(len(task.axioms)):
        axiom_node[a] = next_id
        next_id += 1

    edges = set()
    for v, d in enumerate(task.initial_state):
        edges.add((n_init, fact_node[(v, d)]))
    for v, d in task.goal:
        edges.add((n_goal, fact_node[(v, d)]))
    for v, var in enumerate(task.variables):
        for d in range(len(var.values)):
            edges.add((var_node[v], fact_node[(v, d)]))
    for a, axiom in enumerate(task.axioms):
        for v, d in axiom.body:
            edges.add((axiom_node[a], fact_node[(v, d)]))
        edges.add((axiom_node[a], fact_node[(axiom.var, axiom.value)]))
    for o, op in enumerate(task.operators):
        for v, d in op.precondition:
            edges.add((op_node[o], fact_node[(v, d)]))
        for e, eff in enumerate(op.effects):
            edges.add((op_node[o], eff_node[(o, e)]))
            for v, d in eff.conditions:
                edges.add((fact_node[(v, d)], eff_node[(o, e)]))
            edges.add((eff_node[(o, e)], fact_node[(eff.var, eff.value)]))
    return sorted(edges)


def reference_grounded_kinds(task: SasTask) -> list[str]:
    kinds = ["init", "goal"]
    kinds += ["variable"] * len(task.variables)
    for var in task.variables:
        kinds += ["fact"] * len(var.values)
    kinds += ["operator"] * len(task.operators)
    for op in task.operators:
        kinds += ["operator_effect"] * len(op.effects)
    kinds += ["axiom"] * len(task.axioms)
    return kinds


# ---------------------------------------------------------------------------
# Random abstract structures and the node/edge count oracle
# ---------------------------------------------------------------------------

_SYMBOL_TYPES = ("predicate", "function", "number", "variable", "constant")


def random_structure(rng: random.Random, max_depth: int = 8,
                     max_width: int = 6, symbol_pool: int = 12):
    """Random structure; a small symbol pool makes sharing common."""

    def symbol():
        name = f"s{rng.randrange(symbol_pool)}"
        return Symbol(name, rng.choice(_SYMBOL_TYPES))

    def build(depth: int):
        if depth <= 0 or rng.random() < 0.3:
            return symbol()
        width = rng.randint(0, max_width)
        children = tuple(build(depth - 1) for _ in range(width))
        if rng.random() < 0.5:
            return TupleStruct(children)
        return SetStruct(children)

    return build(rng.randint(0, max_depth))


def structure_graph_counts(root, share: bool) -> tuple[int, int]:
    """Recursive oracle for expected (nodes, edges) of the structure graph.

    Shared mode counts each distinct sub-structure once; unshared mode
    counts each composite occurrence separately while symbols stay shared.
    A tuple of arity n adds n aux nodes and 2n edges; a set of arity n adds
    n edges.
    """
    if share:
        seen = {}

        def visit(s):
            if s.digest in seen:
                return
            seen[s.digest] = s
            if isinstance(s, (TupleStruct, SetStruct)):
                for child in s.children:
                    visit(child)

        visit(root)
        nodes = 0
        edges = 0
        for s in seen.values():
            nodes += 1
            if isinstance(s, TupleStruct):
                nodes += len(s.children)
                edges += 2 * len(s.children)
            elif isinstance(s, SetStruct):
                edges += len(s.children)
        return nodes, edges

    symbols = set()

    def occurrence(s) -> tuple[int, int]:
        if isinstance(s, Symbol):
            symbols.add(s.digest)
            return 0, 0
        nodes, edges = 1, 0
        arity = len(s.children)
        if isinstance(s, TupleStruct):
            nodes += arity
            edges += 2 * arity
        else:
            edges += arity
        for child in s.children:
            dn, de = occurrence(child)
            nodes += dn
            edges += de
        return nodes, edges

    nodes, edges = occurrence(root)
    return nodes + len(symbols), edges


# ---------------------------------------------------------------------------
# Graph stats oracles (Floyd-Warshall and friends)
# ---------------------------------------------------------------------------

def random_typed_graph(rng: random.Random, max_nodes: int = 200):
    """Random grounded-family graph, possibly disconnected, with loops."""
    from plangraph import make_graph

    n = rng.randint(1, max_nodes)
    kinds = [rng.choice(("init", "goal", "variable", "fact", "operator",
                         "operator_effect", "axiom")) for _ in range(n)]
    m = rng.randint(0, 3 * n)
    edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    return make_graph("grounded", kinds, edges)


def undirected_pairs(graph) -> set[tuple[int, int]]:
    pairs = set()
    for s, d in graph.edges:
        if s != d:
            pairs.add((min(int(s), int(d)), max(int(s), int(d))))
    return pairs


def floyd_warshall_distances(n: int,
                             pairs: set[tuple[int, int]]) -> np.ndarray:
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for u, v in pairs:
        dist[u, v] = 1.0
        dist[v, u] = 1.0
    for k in range(n):
        np.minimum(dist, dist[:, k, None] + dist[None, k, :], out=dist)
    return dist


def oracle_diameter(graph) -> int:
    dist = floyd_warshall_distances(graph.n_nodes, undirected_pairs(graph))
    finite = dist[np.isfinite(dist)]
    return int(finite.max()) if finite.size else 0


def oracle_components(graph) -> int:
    parent = list(range(graph.n_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in undirected_pairs(graph):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(x) for x in range(graph.n_nodes)})


def oracle_avg_degree(graph) -> float:
    if graph.n_nodes == 0:
        return 0.0
    return 2.0 * len(undirected_pairs(graph)) / graph.n_nodes
