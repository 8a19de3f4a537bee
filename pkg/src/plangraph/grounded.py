"""Grounded task graphs: a lossless digraph encoding of a SAS+ task.

Nodes: one init node, one goal node, one node per variable, per fact
(variable/value pair), per operator, per operator effect, and per axiom.
Edges: init -> initial facts, goal -> goal facts, variable -> its facts,
axiom -> body and head facts, operator -> precondition facts, operator ->
its effect nodes, condition fact -> effect node, effect node -> target fact.
Edge families are sets, so duplicate pairs collapse.

Node ids follow one deterministic construction order (init, goal, variables
in file order, facts in variable-then-value order, operators in file order,
effects in operator-then-index order, axioms in file order), so equal inputs
serialize to equal bytes.
"""

from __future__ import annotations

from .graph import GROUNDED_FAMILY, TypedDigraph, make_graph
from .sas import SasTask


def build_grounded_graph(task: SasTask) -> TypedDigraph:
    """Construct the grounded graph of a parsed SAS+ task."""
    kinds: list[str] = []
    provenance: list[str] = []

    def add(kind: str, origin: str) -> int:
        kinds.append(kind)
        provenance.append(origin)
        return len(kinds) - 1

    init_node = add("init", "init")
    goal_node = add("goal", "goal")

    var_node = [add("variable", f"var {task.variables[v].name}")
                for v in range(len(task.variables))]

    fact_node: dict[tuple[int, int], int] = {}
    for v, variable in enumerate(task.variables):
        for d in range(variable.domain_size):
            fact_node[(v, d)] = add("fact", f"fact v{v}={d}")

    op_node = [add("operator", f"op {op.name}") for op in task.operators]
    eff_node: dict[tuple[int, int], int] = {}
    for o, op in enumerate(task.operators):
        for e in range(len(op.effects)):
            eff_node[(o, e)] = add("operator_effect", f"op {op.name} eff {e}")

    axiom_node = [add("axiom", f"axiom {a}") for a in range(len(task.axioms))]

    edges: list[tuple[int, int]] = []

    for v, d in enumerate(task.initial_state):
        edges.append((init_node, fact_node[(v, d)]))

    for v, d in task.goal:
        edges.append((goal_node, fact_node[(v, d)]))

    for v, variable in enumerate(task.variables):
        for d in range(variable.domain_size):
            edges.append((var_node[v], fact_node[(v, d)]))

    for a, axiom in enumerate(task.axioms):
        for v, d in axiom.body:
            edges.append((axiom_node[a], fact_node[(v, d)]))
        edges.append((axiom_node[a], fact_node[(axiom.var, axiom.value)]))

    for o, op in enumerate(task.operators):
        for v, d in op.precondition:
            edges.append((op_node[o], fact_node[(v, d)]))
        for e, effect in enumerate(op.effects):
            edges.append((op_node[o], eff_node[(o, e)]))
            for v, d in effect.conditions:
                edges.append((fact_node[(v, d)], eff_node[(o, e)]))
            edges.append((eff_node[(o, e)], fact_node[(effect.var, effect.value)]))

    return make_graph(GROUNDED_FAMILY, kinds, edges, provenance)


def grounded_node_count(task: SasTask) -> int:
    """Closed-form node count; always equals ``build_grounded_graph(task).n_nodes``.

    2 (init, goal) + |variables| + sum of domain sizes + |operators|
    + total effect count + |axioms|.
    """
    return (2
            + len(task.variables)
            + sum(v.domain_size for v in task.variables)
            + len(task.operators)
            + sum(len(op.effects) for op in task.operators)
            + len(task.axioms))
