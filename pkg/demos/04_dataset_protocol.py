"""The runtime-label protocol: binarize, split, and score planner selection.

Run from the repository root: python3 demos/04_dataset_protocol.py
"""

import random

import numpy as np

from plangraph import (DEFAULT_TIMEOUT, binarize_targets, evaluate_selection,
                       load_targets, make_split)
from plangraph.dataset import CENSORED_RUNTIME, PredictionTable


def synthetic_targets(n_tasks=20, n_planners=17, n_domains=4, seed=9):
    """A censored runtime table: some tasks are easy, some unsolvable."""
    rng = random.Random(seed)
    lines = ["task_id,domain," + ",".join(f"p{j}" for j in range(n_planners))]
    for i in range(n_tasks):
        runtimes = []
        for _ in range(n_planners):
            if rng.random() < 0.4:                  # timed out
                runtimes.append(CENSORED_RUNTIME)
            else:
                runtimes.append(round(rng.uniform(1, 3000), 1))
        lines.append(f"task{i:02d},dom{i % n_domains},"
                     + ",".join(map(str, runtimes)))
    return load_targets("\n".join(lines) + "\n")


def main() -> None:
    targets = synthetic_targets()
    print(f"targets: {targets.n_tasks} tasks x {len(targets.planners)} "
          f"planners, runtimes censored at {CENSORED_RUNTIME:g}s")

    labels = binarize_targets(targets)
    solved = int((labels.labels == 0).sum())
    print(f"binarized at {DEFAULT_TIMEOUT:g}s: {solved} solved cells "
          f"(label 0), {labels.labels.sum()} timeouts (label 1)")
    print("note the boundary: a runtime of exactly 1800 labels as solved,")
    print("but a selection landing on it scores as a failure (strict <).")

    print()
    spec = make_split(targets, mode="domain", val_fraction=0.25)
    print(f"domain split (seed-free): train={len(spec.train_ids)} "
          f"val={len(spec.val_ids)}")
    random_spec = make_split(targets, mode="random", val_fraction=0.25,
                             seed=3)
    print(f"random split, seed 3: val ids {random_spec.val_ids}")

    print()
    runtimes = targets.runtimes
    oracle_probs = np.ones_like(runtimes)
    oracle_probs[np.arange(targets.n_tasks),
                 np.argmin(runtimes, axis=1)] = 0.0
    oracle = PredictionTable(targets.task_ids, targets.planners,
                             oracle_probs)
    result = evaluate_selection(oracle, targets)
    print(f"an oracle that always names the fastest planner solves "
          f"{result.n_solved}/{result.n_tasks} "
          f"({result.success_rate:.0%}) - the ceiling any predictor can hit")

    uniform = PredictionTable(targets.task_ids, targets.planners,
                              np.full_like(runtimes, 0.5))
    always_first = evaluate_selection(uniform, targets)
    print(f"constant predictions fall back to planner 0 and solve "
          f"{always_first.n_solved}/{always_first.n_tasks} "
          f"({always_first.success_rate:.0%})")


if __name__ == "__main__":
    main()
