"""Tests for the file-level inputs and outputs of the learner.

Every fixture here is written by hand in the documented formats
(`*.graph.json`, `labels.csv`, `split.json`, `preds.csv`); the learner is
coupled to the graph toolkit only through these files.
"""

from __future__ import annotations

import csv
import json

import numpy as np
import pytest

from plangraph_learner.errors import DimensionMismatch, FormatError
from plangraph_learner.io import (_normalized_adjacency, load_graphs,
                                  load_labels_csv, load_split_json,
                                  read_graph_json, write_predictions_csv)

VOCAB = ["alpha", "beta", "gamma"]


def graph_payload(kinds, edges, vocabulary=None):
    """A minimal but complete graph JSON object in the documented shape."""
    vocabulary = VOCAB if vocabulary is None else vocabulary
    return {
        "meta": {
            "family": "grounded",
            "kind_vocabulary": vocabulary,
            "n_nodes": len(kinds),
            "n_edges": len(edges),
        },
        "nodes": [{"id": i, "kind": k} for i, k in enumerate(kinds)],
        "edges": [list(e) for e in edges],
    }


def write_graph(path, kinds, edges, vocabulary=None):
    path.write_text(json.dumps(graph_payload(kinds, edges, vocabulary)))
    return path


class TestNormalizedAdjacency:
    def test_single_edge_undirected_matches_hand_computation(self):
        """(0,1) plus self-loops: both degrees 2, every entry 1/2."""
        mat = _normalized_adjacency(2, np.array([[0, 1]]), directed=False)
        assert np.allclose(mat.toarray(), [[0.5, 0.5], [0.5, 0.5]])

    def test_single_edge_directed_matches_hand_computation(self):
        """Row degrees (2,1), column degrees (1,2) normalize their sides."""
        mat = _normalized_adjacency(2, np.array([[0, 1]]), directed=True)
        s = 1.0 / np.sqrt(2.0)
        expected = [[s, 0.5], [0.0, s]]
        assert np.allclose(mat.toarray(), expected)

    def test_undirected_matrix_is_symmetric(self):
        rng = np.random.default_rng(4)
        edges = rng.integers(0, 12, size=(30, 2))
        mat = _normalized_adjacency(12, edges, directed=False).toarray()
        assert np.allclose(mat, mat.T)

    def test_duplicate_and_antiparallel_edges_collapse(self):
        """(0,1) listed twice plus (1,0) is the same as one edge."""
        once = _normalized_adjacency(3, np.array([[0, 1]]), directed=False)
        multi = _normalized_adjacency(
            3, np.array([[0, 1], [0, 1], [1, 0]]), directed=False)
        assert np.allclose(once.toarray(), multi.toarray())

    def test_isolated_nodes_keep_self_loop_weight_one(self):
        mat = _normalized_adjacency(3, np.empty((0, 2), dtype=np.int64),
                                    directed=False)
        assert np.allclose(mat.toarray(), np.eye(3))


class TestReadGraphJson:
    def test_features_are_one_hot_rows_in_vocabulary_order(self, tmp_path):
        path = write_graph(tmp_path / "t1.graph.json",
                           ["beta", "alpha", "beta"], [[0, 1], [1, 2]])
        g = read_graph_json(path)
        assert g.name == "t1"
        assert g.n_nodes == 3
        assert g.feature_dim == len(VOCAB)
        expected = [[0, 1, 0], [1, 0, 0], [0, 1, 0]]
        assert np.array_equal(g.features, np.array(expected, dtype=float))

    def test_propagation_shape_matches_node_count(self, tmp_path):
        path = write_graph(tmp_path / "t2.graph.json",
                           ["alpha"] * 4, [[0, 1], [2, 3]])
        g = read_graph_json(path)
        assert g.propagation.shape == (4, 4)

    def test_directed_flag_changes_propagation(self, tmp_path):
        path = write_graph(tmp_path / "t3.graph.json",
                           ["alpha", "beta"], [[0, 1]])
        sym = read_graph_json(path, directed=False)
        directed = read_graph_json(path, directed=True)
        assert not np.allclose(sym.propagation.toarray(),
                               directed.propagation.toarray())

    def test_invalid_json_is_a_format_error(self, tmp_path):
        path = tmp_path / "bad.graph.json"
        path.write_text("{not json")
        with pytest.raises(FormatError, match="invalid JSON"):
            read_graph_json(path)

    def test_missing_sections_are_format_errors(self, tmp_path):
        path = tmp_path / "bad.graph.json"
        path.write_text(json.dumps({"nodes": [], "edges": []}))
        with pytest.raises(FormatError, match="missing meta"):
            read_graph_json(path)

    def test_unknown_node_kind_is_a_format_error(self, tmp_path):
        payload = graph_payload(["alpha", "delta"], [[0, 1]])
        path = tmp_path / "bad.graph.json"
        path.write_text(json.dumps(payload))
        with pytest.raises(FormatError, match="node 1"):
            read_graph_json(path)

    def test_edge_endpoint_out_of_range_is_a_format_error(self, tmp_path):
        path = write_graph(tmp_path / "bad.graph.json",
                           ["alpha", "beta"], [[0, 5]])
        with pytest.raises(FormatError, match="out of range"):
            read_graph_json(path)


class TestLoadLabelsCsv:
    def test_happy_path_keeps_file_order(self, tmp_path):
        path = tmp_path / "labels.csv"
        path.write_text("task_id,domain,p1,p2\n"
                        "b,dom1,0,1\n"
                        "a,dom2,1,0\n")
        labels = load_labels_csv(path)
        assert labels.task_ids == ("b", "a")
        assert labels.planners == ("p1", "p2")
        assert np.array_equal(labels.labels, [[0.0, 1.0], [1.0, 0.0]])
        assert labels.row_index() == {"b": 0, "a": 1}

    def test_header_must_start_with_task_id_and_domain(self, tmp_path):
        path = tmp_path / "labels.csv"
        path.write_text("id,domain,p1\nx,d,0\n")
        with pytest.raises(FormatError, match="task_id,domain"):
            load_labels_csv(path)

    def test_at_least_one_planner_column_required(self, tmp_path):
        path = tmp_path / "labels.csv"
        path.write_text("task_id,domain\nx,d\n")
        with pytest.raises(FormatError, match="no planner columns"):
            load_labels_csv(path)

    @pytest.mark.parametrize("cell", ["2", "0.0", "yes", ""])
    def test_cells_outside_zero_one_are_rejected(self, tmp_path, cell):
        path = tmp_path / "labels.csv"
        path.write_text(f"task_id,domain,p1\nx,d,{cell}\n")
        with pytest.raises(FormatError, match="must be 0 or 1"):
            load_labels_csv(path)

    def test_ragged_row_is_rejected(self, tmp_path):
        path = tmp_path / "labels.csv"
        path.write_text("task_id,domain,p1,p2\nx,d,0\n")
        with pytest.raises(FormatError, match="row 2"):
            load_labels_csv(path)


class TestLoadSplitJson:
    def test_happy_path(self, tmp_path):
        path = tmp_path / "split.json"
        path.write_text(json.dumps({"mode": "random", "seed": 3,
                                    "train": ["a", "b"], "val": ["c"],
                                    "test": ["d"]}))
        split = load_split_json(path)
        assert split.train == ("a", "b")
        assert split.val == ("c",)
        assert split.test == ("d",)

    @pytest.mark.parametrize("missing", ["train", "val", "test"])
    def test_missing_side_is_a_format_error(self, tmp_path, missing):
        payload = {"train": [], "val": [], "test": []}
        del payload[missing]
        path = tmp_path / "split.json"
        path.write_text(json.dumps(payload))
        with pytest.raises(FormatError, match=missing):
            load_split_json(path)

    def test_invalid_json_is_a_format_error(self, tmp_path):
        path = tmp_path / "split.json"
        path.write_text("[[[")
        with pytest.raises(FormatError, match="invalid JSON"):
            load_split_json(path)


class TestLoadGraphs:
    def test_loads_one_file_per_task_id(self, tmp_path):
        write_graph(tmp_path / "a.graph.json", ["alpha"], [])
        write_graph(tmp_path / "b.graph.json", ["beta", "beta"], [[0, 1]])
        graphs = load_graphs(tmp_path, ("a", "b"))
        assert set(graphs) == {"a", "b"}
        assert graphs["a"].n_nodes == 1
        assert graphs["b"].n_nodes == 2

    def test_missing_graph_file_is_a_format_error(self, tmp_path):
        write_graph(tmp_path / "a.graph.json", ["alpha"], [])
        with pytest.raises(FormatError, match="ghost"):
            load_graphs(tmp_path, ("a", "ghost"))

    def test_mixed_feature_widths_are_a_dimension_mismatch(self, tmp_path):
        write_graph(tmp_path / "a.graph.json", ["alpha"], [])
        write_graph(tmp_path / "b.graph.json", ["x"], [],
                    vocabulary=["x", "y", "z", "w"])
        with pytest.raises(DimensionMismatch, match="feature columns"):
            load_graphs(tmp_path, ("a", "b"))


class TestWritePredictionsCsv:
    def test_header_and_rows_roundtrip_exactly(self, tmp_path):
        path = tmp_path / "preds.csv"
        probs = np.array([[0.125, 0.875], [1.0 / 3.0, 0.2]])
        write_predictions_csv(path, ("t1", "t2"), ("p1", "p2"), probs)
        text = path.read_text()
        assert "\r" not in text
        assert text.endswith("\n")
        rows = list(csv.reader(text.splitlines()))
        assert rows[0] == ["task_id", "p1", "p2"]
        assert rows[1][0] == "t1" and rows[2][0] == "t2"
        parsed = np.array([[float(c) for c in row[1:]] for row in rows[1:]])
        assert np.array_equal(parsed, probs)
