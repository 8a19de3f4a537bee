"""Per-graph and corpus-level statistics over a small mixed corpus.

Run from the repository root: python3 demos/03_statistics.py
"""

from pathlib import Path

from plangraph import (build_grounded_graph, build_lifted_graph, corpus_stats,
                       graph_stats, parse_pddl, parse_sas, size_distribution,
                       to_abstract_structure)

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def main() -> None:
    records = []
    for name in ("flip.sas", "condeff.sas", "axiom.sas"):
        task = parse_sas((FIXTURES / name).read_text())
        records.append(graph_stats(build_grounded_graph(task),
                                    name=name.removesuffix(".sas")))
    for stem in ("delivery", "circuits"):
        doc = parse_pddl((FIXTURES / f"{stem}-domain.pddl").read_text(),
                         (FIXTURES / f"{stem}-p01.pddl").read_text())
        graph = build_lifted_graph(to_abstract_structure(doc))
        records.append(graph_stats(graph, name=stem))

    print(f"{'name':12s} {'family':9s} {'nodes':>6s} {'edges':>6s} "
          f"{'deg':>6s} {'cc':>3s} {'diam':>4s}")
    for r in records:
        diameter = "-" if r.diameter is None else r.diameter
        print(f"{r.name:12s} {r.family:9s} {r.n_nodes:6d} {r.n_edges:6d} "
              f"{r.avg_degree:6.2f} {r.n_components:3d} {diameter:>4}")

    print()
    agg = corpus_stats(records)
    print(f"corpus: {agg.n_graphs} graphs, {agg.total_nodes} nodes total, "
          f"largest {agg.max_nodes}")
    print(f"mean nodes {agg.mean_nodes:.1f} (population std "
          f"{agg.std_nodes:.1f}); mean degree {agg.mean_avg_degree:.2f}")
    print(f"diameters computed for {agg.frac_diameter_computed:.0%} of "
          f"graphs; largest {agg.max_diameter}")

    print()
    print("per-family node-count quartiles:")
    for row in size_distribution(records):
        print(f"  {row.family}: min {row.min:.0f}, median {row.median:.0f}, "
              f"max {row.max:.0f}, mean {row.mean:.1f}, "
              f"{row.frac_over_1000:.0%} over 1000 nodes")


if __name__ == "__main__":
    main()
