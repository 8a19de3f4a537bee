"""Grounded graph construction against hand-expanded fixtures and oracles."""

import random

import numpy as np

from plangraph import (build_grounded_graph, grounded_node_count,
                       one_hot_features, parse_sas)
from helpers import (FIXTURES, random_sas_text, reference_grounded_edges,
                     reference_grounded_kinds)

LEGAL_EDGE_KINDS = {
    ("init", "fact"), ("goal", "fact"), ("variable", "fact"),
    ("axiom", "fact"), ("operator", "fact"),
    ("operator", "operator_effect"), ("fact", "operator_effect"),
    ("operator_effect", "fact"),
}


def build_fixture(name: str):
    return build_grounded_graph(parse_sas((FIXTURES / name).read_text()))


def test_minimal_fixture_exact():
    """init=0, goal=1, var=2, facts 3-4, operator=5, effect=6."""
    g = build_fixture("flip.sas")
    assert g.n_nodes == 7
    assert [g.kind_of(i) for i in range(7)] == [
        "init", "goal", "variable", "fact", "fact", "operator",
        "operator_effect"]
    assert g.edges.tolist() == [[0, 3], [1, 4], [2, 3], [2, 4], [5, 3],
                                [5, 6], [6, 4]]


def test_empty_goal_drops_goal_edges():
    g = build_fixture("flip_nogoal.sas")
    assert g.n_nodes == 7
    assert g.n_edges == 6
    assert not any(src == 1 for src, _ in g.edges.tolist())


def test_conditional_effect_fixture_exact():
    """Adds variable w (nodes 3, 6, 7) and the condition edge w=1 -> effect."""
    g = build_fixture("condeff.sas")
    assert g.n_nodes == 10
    assert g.edges.tolist() == [[0, 4], [0, 6], [1, 5], [2, 4], [2, 5],
                                [3, 6], [3, 7], [7, 9], [8, 4], [8, 9],
                                [9, 5]]


def test_axiom_fixture_exact():
    """Adds axiom node 10 with one body-fact edge and one head-fact edge."""
    g = build_fixture("axiom.sas")
    assert g.n_nodes == 11
    assert g.edges.tolist() == [[0, 4], [0, 6], [1, 5], [2, 4], [2, 5],
                                [3, 6], [3, 7], [8, 4], [8, 9], [9, 5],
                                [10, 5], [10, 7]]


def test_one_hot_features_of_minimal_fixture():
    features = one_hot_features(build_fixture("flip.sas"))
    assert features.shape == (7, 7)
    assert features.sum(axis=1).tolist() == [1.0] * 7
    assert features.sum(axis=0).tolist() == [1.0, 1.0, 1.0, 2.0, 1.0, 1.0,
                                             0.0]


def test_node_count_formula_on_fixtures():
    for name in ("flip.sas", "flip_nogoal.sas", "condeff.sas", "axiom.sas"):
        task = parse_sas((FIXTURES / name).read_text())
        assert grounded_node_count(task) == build_grounded_graph(task).n_nodes


def test_degenerate_task_node_count():
    text = (FIXTURES / "flip.sas").read_text()
    # strip the operator: 0 operators, 0 axioms, one binary variable
    text = text.replace(
        "1\nbegin_operator\nflip\n0\n1\n0 0 0 1\n1\nend_operator\n0\n",
        "0\n0\n")
    task = parse_sas(text)
    assert grounded_node_count(task) == 5
    assert task.operators == ()


def test_random_tasks_match_reference_builder():
    """Edges and kinds re-derived independently with plain dict bookkeeping."""
    rng = random.Random(20240817)
    for _ in range(25):
        task = parse_sas(random_sas_text(rng, max_vars=12))
        g = build_grounded_graph(task)
        assert [g.kind_of(i) for i in range(g.n_nodes)] == \
            reference_grounded_kinds(task)
        assert g.edges.tolist() == [list(e)
                                    for e in reference_grounded_edges(task)]


def test_random_tasks_edge_kind_pairs_and_degrees():
    rng = random.Random(99)
    for _ in range(25):
        task = parse_sas(random_sas_text(rng, max_vars=10))
        g = build_grounded_graph(task)
        pairs = {(g.kind_of(s), g.kind_of(d)) for s, d in g.edges.tolist()}
        assert pairs <= LEGAL_EDGE_KINDS
        out_degree = np.bincount(g.edges[:, 0], minlength=g.n_nodes)
        assert out_degree[0] == len(task.variables)
        assert out_degree[1] == len(task.goal)
        n_vars = len(task.variables)
        var_total = out_degree[2:2 + n_vars].sum()
        assert var_total == sum(v.domain_size for v in task.variables)


def test_duplicate_edges_collapse():
    """An axiom whose head fact also appears in its body yields one edge."""
    text = (FIXTURES / "axiom.sas").read_text().replace(
        "begin_rule\n1\n0 1\n1 -1 1",
        "begin_rule\n1\n1 1\n1 -1 1")
    task = parse_sas(text)
    axiom, = task.axioms
    assert axiom.body == ((1, 1),)
    g = build_grounded_graph(task)
    axiom_edges = [e for e in g.edges.tolist() if e[0] == 10]
    assert axiom_edges == [[10, 7]]
