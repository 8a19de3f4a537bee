"""End-to-end command-line runs, in-process via main(argv)."""

import json
import shutil

import pytest

from plangraph import PLANNER_COUNT, load_labels, read_graph, split_from_json
from plangraph.cli import main
from helpers import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def targets_csv_text(n_tasks=10, n_domains=3):
    header = "task_id,domain," + ",".join(
        f"p{j}" for j in range(PLANNER_COUNT))
    lines = [header]
    for i in range(n_tasks):
        runtimes = [(i * PLANNER_COUNT + j * 131) % 3600
                    for j in range(PLANNER_COUNT)]
        lines.append(f"t{i},d{i % n_domains}," +
                     ",".join(str(v) for v in runtimes))
    return "\n".join(lines) + "\n"


def test_compile_grounded_json(tmp_path, capsys):
    code, out, err = run(capsys, "compile-grounded",
                         str(FIXTURES / "flip.sas"), "--out-dir",
                         str(tmp_path), "--jobs", "1")
    assert code == 0 and err == ""
    target = tmp_path / "flip.graph.json"
    assert f"wrote {target}" in out
    g = read_graph(target)
    assert g.n_nodes == 7 and g.n_edges == 7


def test_compile_grounded_edge_csv(tmp_path, capsys):
    code, _, _ = run(capsys, "compile-grounded", str(FIXTURES / "flip.sas"),
                     "--out-dir", str(tmp_path), "--format", "edge_csv",
                     "--jobs", "1")
    assert code == 0
    assert (tmp_path / "flip.edges.csv").exists()
    assert (tmp_path / "flip.nodes.csv").exists()
    assert read_graph(tmp_path / "flip.edges.csv").n_nodes == 7


def test_compile_grounded_many_inputs_parallel(tmp_path, capsys):
    names = ("flip.sas", "flip_nogoal.sas", "condeff.sas", "axiom.sas")
    serial = tmp_path / "serial"
    parallel = tmp_path / "parallel"
    for out_dir, jobs in ((serial, "1"), (parallel, "4")):
        code, out, _ = run(capsys, "compile-grounded",
                           *(str(FIXTURES / n) for n in names),
                           "--out-dir", str(out_dir), "--jobs", jobs)
        assert code == 0
        assert out.count("wrote ") == len(names)
    for n in names:
        stem = n[:-len(".sas")]
        a = (serial / f"{stem}.graph.json").read_bytes()
        b = (parallel / f"{stem}.graph.json").read_bytes()
        assert a == b


def test_out_dir_env_variable(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PLANGRAPH_OUT_DIR", str(tmp_path / "nested/out"))
    code, _, _ = run(capsys, "compile-grounded", str(FIXTURES / "flip.sas"),
                     "--jobs", "1")
    assert code == 0
    assert (tmp_path / "nested/out/flip.graph.json").exists()


def test_duplicate_output_stems_rejected(tmp_path, capsys):
    other = tmp_path / "copy"
    other.mkdir()
    shutil.copy(FIXTURES / "flip.sas", other / "flip.sas")
    code, _, err = run(capsys, "compile-grounded",
                       str(FIXTURES / "flip.sas"), str(other / "flip.sas"),
                       "--out-dir", str(tmp_path), "--jobs", "1")
    assert code == 1
    assert "same output" in err
    assert not (tmp_path / "flip.graph.json").exists()  # nothing written


def test_compile_grounded_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.sas"
    bad.write_text("begin_version\n99\nend_version\n")
    code, _, err = run(capsys, "compile-grounded", str(bad), "--out-dir",
                       str(tmp_path), "--jobs", "1")
    assert code == 1
    assert "bad.sas" in err and "version" in err


def test_compile_grounded_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "compile-grounded",
                       str(tmp_path / "ghost.sas"), "--jobs", "1")
    assert code == 1
    assert "ghost.sas" in err


def test_compile_lifted(tmp_path, capsys):
    code, out, _ = run(capsys, "compile-lifted",
                       str(FIXTURES / "delivery-domain.pddl"),
                       str(FIXTURES / "delivery-p01.pddl"),
                       "--out-dir", str(tmp_path), "--jobs", "1")
    assert code == 0
    g = read_graph(tmp_path / "delivery-p01.graph.json")
    assert g.family == "lifted"
    code, _, _ = run(capsys, "compile-lifted",
                     str(FIXTURES / "delivery-domain.pddl"),
                     str(FIXTURES / "delivery-p01.pddl"),
                     "--out-dir", str(tmp_path / "ns"), "--no-sharing",
                     "--jobs", "1")
    assert code == 0
    unshared = read_graph(tmp_path / "ns" / "delivery-p01.graph.json")
    assert unshared.n_nodes > g.n_nodes


def test_compile_lifted_structure_cap(tmp_path, capsys):
    code, _, err = run(capsys, "compile-lifted",
                       str(FIXTURES / "delivery-domain.pddl"),
                       str(FIXTURES / "delivery-p01.pddl"),
                       "--out-dir", str(tmp_path), "--max-structures", "5",
                       "--jobs", "1")
    assert code == 1
    assert "5" in err


def compile_fixture_graphs(tmp_path, capsys):
    out = tmp_path / "graphs"
    run(capsys, "compile-grounded", str(FIXTURES / "flip.sas"),
        str(FIXTURES / "condeff.sas"), "--out-dir", str(out), "--jobs", "1")
    run(capsys, "compile-lifted", str(FIXTURES / "circuits-domain.pddl"),
        str(FIXTURES / "circuits-p01.pddl"), "--out-dir", str(out),
        "--jobs", "1")
    return sorted(str(p) for p in out.glob("*.graph.json"))


def test_stats_summary_and_tables(tmp_path, capsys):
    graphs = compile_fixture_graphs(tmp_path, capsys)
    assert len(graphs) == 3
    per_graph = tmp_path / "per_graph.csv"
    dist = tmp_path / "dist.csv"
    code, out, _ = run(capsys, "stats", *graphs, "--out", str(per_graph),
                       "--distribution", str(dist), "--jobs", "1")
    assert code == 0
    summary = json.loads(out)
    assert summary["n_graphs"] == 3
    assert summary["total_nodes"] > 0
    assert "mean_avg_degree" in summary and "std_components" in summary
    assert "sample_std_nodes" not in summary  # only with --verbose
    rows = per_graph.read_text().splitlines()
    assert rows[0].startswith("name,family,n_nodes")
    assert len(rows) == 4
    dist_rows = dist.read_text().splitlines()
    assert dist_rows[0].startswith("family,")
    families = {r.split(",")[0] for r in dist_rows[1:]}
    assert families == {"grounded", "lifted"}


def test_stats_verbose_adds_sample_stds(tmp_path, capsys):
    graphs = compile_fixture_graphs(tmp_path, capsys)
    code, out, _ = run(capsys, "stats", *graphs, "--verbose", "--jobs", "1")
    assert code == 0
    summary = json.loads(out)
    assert "sample_std_nodes" in summary
    assert summary["sample_std_nodes"] > 0


def test_stats_distribution_default_filename(tmp_path, capsys, monkeypatch):
    graphs = compile_fixture_graphs(tmp_path, capsys)
    monkeypatch.chdir(tmp_path)
    code, _, _ = run(capsys, "stats", *graphs, "--distribution", "--jobs",
                     "1")
    assert code == 0
    assert (tmp_path / "distribution.csv").exists()


def test_stats_no_inputs_is_an_error(capsys):
    code, _, err = run(capsys, "stats")
    assert code == 1
    assert "no graph files" in err


def test_stats_summary_file(tmp_path, capsys):
    graphs = compile_fixture_graphs(tmp_path, capsys)
    summary_path = tmp_path / "summary.json"
    code, out, _ = run(capsys, "stats", *graphs, "--summary",
                       str(summary_path), "--jobs", "1")
    assert code == 0
    assert summary_path.read_text() == out


def test_labels_binarize(tmp_path, capsys):
    targets = tmp_path / "targets.csv"
    targets.write_text(targets_csv_text())
    out = tmp_path / "labels.csv"
    code, stdout, _ = run(capsys, "labels", "binarize", "--targets",
                          str(targets), "--out", str(out))
    assert code == 0 and "wrote" in stdout
    table = load_labels(out.read_text())
    assert table.n_tasks == 10
    assert set(table.labels.ravel().tolist()) <= {0, 1}
    code, _, err = run(capsys, "labels", "binarize", "--targets",
                       str(targets), "--out", str(out), "--timeout", "-5")
    assert code == 1 and "positive" in err
    code, _, _ = run(capsys, "labels", "binarize", "--targets", str(targets),
                     "--out", str(out), "--timeout", "500")
    assert code == 0
    assert load_labels(out.read_text()).labels.sum() > 0


def test_split_and_eval_select(tmp_path, capsys):
    targets = tmp_path / "targets.csv"
    targets.write_text(targets_csv_text(n_tasks=12))
    split_path = tmp_path / "split.json"
    code, out, _ = run(capsys, "split", "--targets", str(targets), "--mode",
                       "random", "--ratios", "0.75,0.25", "--seed", "3",
                       "--out", str(split_path))
    assert code == 0 and "train=9 val=3" in out
    spec = split_from_json(split_path.read_bytes())
    assert spec.mode == "random" and spec.seed == 3

    preds = tmp_path / "preds.csv"
    header = "task_id," + ",".join(f"p{j}" for j in range(PLANNER_COUNT))
    rows = [header]
    for i in range(12):
        probs = ["1.0"] * PLANNER_COUNT
        probs[i % PLANNER_COUNT] = "0.0"
        rows.append(f"t{i}," + ",".join(probs))
    preds.write_text("\n".join(rows) + "\n")

    result_path = tmp_path / "result.json"
    code, out, _ = run(capsys, "eval-select", "--predictions", str(preds),
                       "--targets", str(targets), "--split", str(split_path),
                       "--subset", "val", "--out", str(result_path))
    assert code == 0
    payload = json.loads(out)
    assert payload["n_tasks"] == 3
    assert payload["timeout"] == 1800.0
    assert 0.0 <= payload["success_rate"] <= 1.0
    assert result_path.read_text() == out


def test_split_with_test_ids_file(tmp_path, capsys):
    targets = tmp_path / "targets.csv"
    targets.write_text(targets_csv_text(n_tasks=10))
    ids = tmp_path / "test_ids.json"
    ids.write_text('["t0", "t5"]')
    split_path = tmp_path / "split.json"
    code, _, _ = run(capsys, "split", "--targets", str(targets), "--mode",
                     "domain", "--test-ids", str(ids), "--out",
                     str(split_path))
    assert code == 0
    spec = split_from_json(split_path.read_bytes())
    assert spec.test_ids == ("t0", "t5")

    plain = tmp_path / "test_ids.txt"
    plain.write_text("t0\nt5\n")
    code, _, _ = run(capsys, "split", "--targets", str(targets), "--mode",
                     "domain", "--test-ids", str(plain), "--out",
                     str(split_path))
    assert code == 0
    assert split_from_json(split_path.read_bytes()).test_ids == ("t0", "t5")


def test_split_bad_ratios(tmp_path, capsys):
    targets = tmp_path / "targets.csv"
    targets.write_text(targets_csv_text())
    for ratios in ("0.5,0.6", "0.8", "a,b"):
        code, _, err = run(capsys, "split", "--targets", str(targets),
                           "--mode", "random", "--ratios", ratios, "--out",
                           str(tmp_path / "s.json"))
        assert code == 1
        assert "ratio" in err


def test_eval_select_empty_split_side(tmp_path, capsys):
    targets = tmp_path / "targets.csv"
    targets.write_text(targets_csv_text(n_tasks=4))
    split_path = tmp_path / "split.json"
    run(capsys, "split", "--targets", str(targets), "--mode", "random",
        "--ratios", "0.5,0.5", "--seed", "0", "--out", str(split_path))
    preds = tmp_path / "preds.csv"
    header = "task_id," + ",".join(f"p{j}" for j in range(PLANNER_COUNT))
    preds.write_text(header + "\n" +
                     "\n".join(f"t{i}," + ",".join(["0.5"] * PLANNER_COUNT)
                               for i in range(4)) + "\n")
    code, _, err = run(capsys, "eval-select", "--predictions", str(preds),
                       "--targets", str(targets), "--split", str(split_path))
    assert code == 1
    assert "test" in err and "empty" in err


def test_unknown_subcommand_exits_one(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1
    assert "error" in capsys.readouterr().err


def test_bad_flag_exits_one(capsys):
    with pytest.raises(SystemExit) as info:
        main(["stats", "--bogus-flag"])
    assert info.value.code == 1
