"""Command-line interface.

Subcommands: compile-grounded, compile-lifted, stats, labels binarize,
split, eval-select. Exit codes: 0 success, 1 invalid input, 2 internal
error. Workers only compute bytes; the parent writes files in input order,
so outputs are byte-identical for any --jobs value.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from pathlib import Path

from . import dataset, stats
from .errors import EmptyCorpus, InputError, PlanGraphError, SchemaError
from .graph import read_graph, serialize, serialize_nodes_csv
from .grounded import build_grounded_graph
from .lifted import DEFAULT_STRUCTURE_CAP, build_lifted_graph
from .pddl import parse_pddl, to_abstract_structure
from .sas import parse_sas

OUT_DIR_ENV = "PLANGRAPH_OUT_DIR"
_SUFFIXES = (".graph.json", ".edges.csv", ".nodes.csv", ".sas", ".pddl")
_DISTRIBUTION_DEFAULT = "distribution.csv"


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; this toolkit reserves 2 for bugs."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _stem(path: str) -> str:
    name = Path(path).name
    for suffix in _SUFFIXES:
        if name.endswith(suffix):
            return name[:-len(suffix)]
    return Path(name).stem


def _out_dir(args) -> Path:
    out = args.out_dir or os.environ.get(OUT_DIR_ENV) or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _default_jobs() -> int:
    return max(1, os.cpu_count() or 1)


def _graph_payload(stem: str, graph, fmt: str) -> list[tuple[str, bytes]]:
    if fmt == "json":
        return [(stem + ".graph.json", serialize(graph, "json"))]
    return [(stem + ".edges.csv", serialize(graph, "edge_csv")),
            (stem + ".nodes.csv", serialize_nodes_csv(graph))]


def _grounded_job(item: tuple[str, str]) -> list[tuple[str, bytes]]:
    path, fmt = item
    task = parse_sas(Path(path).read_text(), filename=path)
    return _graph_payload(_stem(path), build_grounded_graph(task), fmt)


def _lifted_job(item: tuple[str, str, str, bool, int]
                ) -> list[tuple[str, bytes]]:
    domain_path, problem_path, fmt, share, cap = item
    doc = parse_pddl(Path(domain_path).read_text(),
                     Path(problem_path).read_text(),
                     domain_filename=domain_path,
                     problem_filename=problem_path)
    graph = build_lifted_graph(to_abstract_structure(doc), share=share,
                               max_structures=cap)
    return _graph_payload(_stem(problem_path), graph, fmt)


def _run_jobs(fn, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _write_payloads(payloads: list[list[tuple[str, bytes]]],
                    out_dir: Path) -> None:
    seen: set[str] = set()
    for files in payloads:
        for name, _ in files:
            if name in seen:
                raise InputError(f"two inputs map to the same output file "
                                 f"{name!r}; rename one of them")
            seen.add(name)
    for files in payloads:
        for name, data in files:
            (out_dir / name).write_bytes(data)
        print(f"wrote {out_dir / files[0][0]}")


def _cmd_compile_grounded(args) -> int:
    items = [(path, args.format) for path in args.inputs]
    payloads = _run_jobs(_grounded_job, items, args.jobs)
    _write_payloads(payloads, _out_dir(args))
    return 0


def _cmd_compile_lifted(args) -> int:
    items = [(args.domain, path, args.format, not args.no_sharing,
              args.max_structures) for path in args.problems]
    payloads = _run_jobs(_lifted_job, items, args.jobs)
    _write_payloads(payloads, _out_dir(args))
    return 0


def _stats_job(item: tuple[str, int | None]) -> stats.GraphStats:
    path, cap = item
    return stats.graph_stats(read_graph(Path(path)), name=_stem(path),
                             diameter_cap=cap)


def _distribution_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "n_graphs", "min", "q1", "median", "q3",
                     "max", "mean", "frac_over_1000"])
    for row in stats.size_distribution(records):
        writer.writerow([row.family, row.n_graphs, repr(row.min),
                         repr(row.q1), repr(row.median), repr(row.q3),
                         repr(row.max), repr(row.mean),
                         repr(row.frac_over_1000)])
    return buf.getvalue()


def _cmd_stats(args) -> int:
    cap = None if args.diameter_cap < 0 else args.diameter_cap
    items = [(path, cap) for path in args.inputs]
    records = _run_jobs(_stats_job, items, args.jobs)
    if not records:
        raise EmptyCorpus("no graph files given")

    if args.out:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "family", "n_nodes", "n_edges",
                         "n_undirected_edges", "avg_degree", "n_components",
                         "diameter"])
        for r in records:
            writer.writerow([r.name, r.family, r.n_nodes, r.n_edges,
                             r.n_undirected_edges, repr(r.avg_degree),
                             r.n_components,
                             "" if r.diameter is None else r.diameter])
        Path(args.out).write_text(buf.getvalue())

    if args.distribution is not None:
        target = args.distribution or _DISTRIBUTION_DEFAULT
        Path(target).write_text(_distribution_csv(records))

    summary = asdict(stats.corpus_stats(records))
    if args.verbose:
        summary.update(stats.sample_stds(records))
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if args.summary:
        Path(args.summary).write_text(text)
    print(text, end="")
    return 0


def _cmd_labels_binarize(args) -> int:
    table = dataset.load_targets(Path(args.targets).read_text(),
                                 filename=args.targets)
    labels = dataset.binarize_targets(table, timeout=args.timeout)
    Path(args.out).write_text(dataset.labels_to_csv(labels))
    print(f"wrote {args.out}")
    return 0


def _read_id_file(path: str) -> tuple[str, ...]:
    """Held-out ids, as a JSON array of strings or as one id per line."""
    text = Path(path).read_text()
    if text.lstrip().startswith("["):
        try:
            ids = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid id file: {exc}",
                              filename=path) from None
        if not isinstance(ids, list) or any(not isinstance(t, str)
                                            for t in ids):
            raise SchemaError("id file must hold a JSON array of strings",
                              filename=path)
        return tuple(ids)
    return tuple(line.strip() for line in text.splitlines() if line.strip())


def _parse_ratios(text: str) -> float:
    """'0.8,0.2' (train,validation) -> validation fraction."""
    parts = text.split(",")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise InputError(f"ratios {text!r} are not numbers") from None
    if len(values) != 2:
        raise InputError(f"expected two ratios train,val, got {text!r}")
    if abs(sum(values) - 1.0) > 1e-9:
        raise InputError(f"ratios {text!r} must sum to 1")
    return values[1]


def _cmd_split(args) -> int:
    table = dataset.load_targets(Path(args.targets).read_text(),
                                 filename=args.targets)
    test_ids = _read_id_file(args.test_ids) if args.test_ids else ()
    spec = dataset.make_split(table, mode=args.mode,
                              val_fraction=_parse_ratios(args.ratios),
                              seed=args.seed, test_ids=test_ids)
    Path(args.out).write_bytes(dataset.split_to_json(spec))
    print(f"wrote {args.out} (train={len(spec.train_ids)} "
          f"val={len(spec.val_ids)} test={len(spec.test_ids)})")
    return 0


def _cmd_eval_select(args) -> int:
    predictions = dataset.load_predictions(Path(args.predictions).read_text(),
                                           filename=args.predictions)
    targets = dataset.load_targets(Path(args.targets).read_text(),
                                   filename=args.targets)
    task_ids = None
    if args.split:
        spec = dataset.split_from_json(Path(args.split).read_bytes(),
                                       filename=args.split)
        task_ids = {"train": spec.train_ids, "val": spec.val_ids,
                    "test": spec.test_ids}[args.subset]
        if not task_ids:
            raise SchemaError(f"split side {args.subset!r} is empty",
                              filename=args.split)
    result = dataset.evaluate_selection(predictions, targets,
                                        task_ids=task_ids,
                                        timeout=args.timeout)
    payload = {
        "n_tasks": result.n_tasks,
        "n_solved": result.n_solved,
        "success_rate": result.success_rate,
        "timeout": args.timeout,
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    print(text, end="")
    return 0


def _add_common_compile_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out-dir", "-o", default=None,
                        help=f"output directory (default: ${OUT_DIR_ENV} "
                             "or the working directory)")
    parser.add_argument("--format", choices=("json", "edge_csv"),
                        default="json",
                        help="graph file format (default json)")
    parser.add_argument("--jobs", type=int, default=_default_jobs(),
                        help="parallel worker processes (default: machine "
                             "parallelism)")


def build_parser() -> _Parser:
    parser = _Parser(prog="plangraph",
                     description="Compile planning tasks into labeled "
                                 "graphs and run the dataset protocol.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile-grounded",
                       help="translated SAS tasks to grounded graphs")
    p.add_argument("inputs", nargs="+", metavar="SAS_FILE")
    _add_common_compile_flags(p)
    p.set_defaults(func=_cmd_compile_grounded)

    p = sub.add_parser("compile-lifted",
                       help="PDDL pairs to lifted structure graphs")
    p.add_argument("domain", metavar="DOMAIN_PDDL")
    p.add_argument("problems", nargs="+", metavar="PROBLEM_PDDL")
    _add_common_compile_flags(p)
    p.add_argument("--no-sharing", action="store_true",
                   help="duplicate composite substructures instead of "
                        "sharing them")
    p.add_argument("--max-structures", type=int,
                   default=DEFAULT_STRUCTURE_CAP,
                   help="abort when a structure has more distinct parts")
    p.set_defaults(func=_cmd_compile_lifted)

    p = sub.add_parser("stats", help="structural statistics for graph files")
    p.add_argument("inputs", nargs="*", metavar="GRAPH_FILE")
    p.add_argument("--out", "-o", default=None,
                   help="write a per-graph CSV here")
    p.add_argument("--summary", default=None,
                   help="also write the corpus summary JSON here")
    p.add_argument("--diameter-cap", type=int,
                   default=stats.DEFAULT_DIAMETER_CAP,
                   help="skip diameters above this node count; -1 disables "
                        "the cap")
    p.add_argument("--distribution", nargs="?", const="", default=None,
                   metavar="CSV",
                   help="also write per-family box-plot quartiles "
                        f"(default file: {_DISTRIBUTION_DEFAULT})")
    p.add_argument("--verbose", action="store_true",
                   help="add sample standard deviations to the summary")
    p.add_argument("--jobs", type=int, default=_default_jobs(),
                   help="parallel worker processes (default: machine "
                        "parallelism)")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("labels", help="runtime label operations")
    labels_sub = p.add_subparsers(dest="labels_command", required=True)
    b = labels_sub.add_parser("binarize",
                              help="threshold runtimes into 0/1 labels")
    b.add_argument("--targets", required=True, metavar="TARGETS_CSV")
    b.add_argument("--out", "-o", required=True, metavar="LABELS_CSV")
    b.add_argument("--timeout", type=float, default=dataset.DEFAULT_TIMEOUT,
                   help="solved iff runtime <= timeout (default 1800)")
    b.set_defaults(func=_cmd_labels_binarize)

    p = sub.add_parser("split", help="carve train/val/test task id sets")
    p.add_argument("--targets", required=True, metavar="TARGETS_CSV")
    p.add_argument("--mode", required=True, choices=dataset.SPLIT_MODES)
    p.add_argument("--ratios", default="0.8,0.2", metavar="TRAIN,VAL",
                   help="train,validation fractions of the non-test pool "
                        "(default 0.8,0.2)")
    p.add_argument("--seed", type=int, default=0,
                   help="shuffle seed; random mode only")
    p.add_argument("--test-ids", default=None,
                   help="held-out ids: JSON array file or one id per line")
    p.add_argument("--out", "-o", required=True, metavar="SPLIT_JSON")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("eval-select",
                       help="score argmin planner selection against true "
                            "runtimes")
    p.add_argument("--predictions", required=True, metavar="PREDS_CSV")
    p.add_argument("--targets", required=True, metavar="TARGETS_CSV")
    p.add_argument("--split", default=None, metavar="SPLIT_JSON")
    p.add_argument("--subset", choices=("train", "val", "test"),
                   default="test", help="split side to score (default test)")
    p.add_argument("--timeout", type=float, default=dataset.DEFAULT_TIMEOUT,
                   help="success iff selected runtime < timeout "
                        "(default 1800)")
    p.add_argument("--out", "-o", default=None,
                   help="also write the result JSON here")
    p.set_defaults(func=_cmd_eval_select)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(exc.diagnostic(), file=sys.stderr)
        return exc.exit_code
    except PlanGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
