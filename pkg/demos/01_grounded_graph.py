"""Compile a SAS+ translator file into a grounded graph, step by step.

Run from the repository root: python3 demos/01_grounded_graph.py
"""

from pathlib import Path

from plangraph import build_grounded_graph, grounded_node_count, parse_sas

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def main() -> None:
    text = (FIXTURES / "flip.sas").read_text()
    print("input: a one-variable task whose single operator flips v0")
    print("-" * 60)

    task = parse_sas(text)
    print(f"parsed: {len(task.variables)} variable(s), "
          f"{len(task.operators)} operator(s), {len(task.axioms)} axiom(s)")
    print(f"initial state: {task.initial_state}")
    print(f"goal: {task.goal}")

    print()
    print("the node count is known before building the graph:")
    print(f"  2 + |V| + sum(domains) + |O| + sum(effects) + |A| "
          f"= {grounded_node_count(task)}")

    g = build_grounded_graph(task)
    print()
    print(f"built graph: {g.n_nodes} nodes, {g.n_edges} edges")
    for i in range(g.n_nodes):
        print(f"  node {i}: {g.kind_of(i):16s} {g.provenance[i]}")
    print("edges (src -> dst):")
    for src, dst in g.edges.tolist():
        print(f"  {src} -> {dst}")

    print()
    print("the same fixture with an axiom gains one axiom node and the")
    print("axiom's body/head edges:")
    axiom_task = parse_sas((FIXTURES / "axiom.sas").read_text())
    ag = build_grounded_graph(axiom_task)
    print(f"  {ag.n_nodes} nodes, {ag.n_edges} edges; "
          f"kind counts: {ag.kind_counts()}")


if __name__ == "__main__":
    main()
