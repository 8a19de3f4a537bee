"""The whole pipeline through the command-line interface, in a temp dir.

Run from the repository root: python3 demos/05_cli_pipeline.py
"""

import random
import subprocess
import sys
import tempfile
from pathlib import Path

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def cli(*args: str) -> str:
    cmd = [sys.executable, "-m", "plangraph.cli", *args]
    print(f"$ plangraph {' '.join(args)}")
    proc = subprocess.run(cmd, check=True, capture_output=True, text=True)
    if proc.stdout:
        print(proc.stdout, end="")
    return proc.stdout


def write_targets(path: Path, n_tasks=12) -> None:
    rng = random.Random(5)
    lines = ["task_id,domain," + ",".join(f"p{j}" for j in range(17))]
    for i in range(n_tasks):
        runtimes = [round(rng.uniform(1, 4000), 1) for _ in range(17)]
        lines.append(f"t{i},dom{i % 3}," + ",".join(map(str, runtimes)))
    path.write_text("\n".join(lines) + "\n")


def write_predictions(path: Path, n_tasks=12) -> None:
    rng = random.Random(6)
    lines = ["task_id," + ",".join(f"p{j}" for j in range(17))]
    for i in range(n_tasks):
        lines.append(f"t{i}," + ",".join(
            str(round(rng.random(), 3)) for _ in range(17)))
    path.write_text("\n".join(lines) + "\n")


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        work = Path(tmp)
        graphs = work / "graphs"

        cli("compile-grounded", str(FIXTURES / "flip.sas"),
            str(FIXTURES / "axiom.sas"), "--out-dir", str(graphs))
        cli("compile-lifted", str(FIXTURES / "delivery-domain.pddl"),
            str(FIXTURES / "delivery-p01.pddl"), "--out-dir", str(graphs))

        print()
        cli("stats", *sorted(str(p) for p in graphs.glob("*.graph.json")),
            "--out", str(work / "per_graph.csv"),
            "--distribution", str(work / "distribution.csv"))

        print()
        targets = work / "targets.csv"
        write_targets(targets)
        cli("labels", "binarize", "--targets", str(targets),
            "--out", str(work / "labels.csv"))
        cli("split", "--targets", str(targets), "--mode", "domain",
            "--ratios", "0.75,0.25", "--out", str(work / "split.json"))

        print()
        preds = work / "preds.csv"
        write_predictions(preds)
        cli("eval-select", "--predictions", str(preds),
            "--targets", str(targets), "--split", str(work / "split.json"),
            "--subset", "val")

        print("files produced:")
        for p in sorted(work.rglob("*")):
            if p.is_file():
                print(f"  {p.relative_to(work)}")


if __name__ == "__main__":
    main()
