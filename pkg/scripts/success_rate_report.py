#!/usr/bin/env python3
"""Measure per-algorithm success rates on planted instances, at default
constants and under both edge-selection policies.

Small instances keep this quick (~1 minute at 30 trials); raise --trials for
tighter estimates.
"""

import argparse

from qclab.harness import run_trial
from qclab.hypergraph import gen_planted_cut, gen_planted_hitting_set, gen_planted_packing
from qclab.oracle import EdgeSelectionPolicy

CASES = [
    ("packing", 2, None, lambda s: gen_planted_packing(24, 2, 2, 6, seed=s)[0]),
    ("matching-promised", 2, None, lambda s: gen_planted_packing(24, 2, 2, 0, seed=s)[0]),
    ("vc-promised", 2, None, lambda s: gen_planted_hitting_set(30, 2, 2, 40, seed=s)[0]),
    ("vertex-cover", 2, None, lambda s: gen_planted_hitting_set(30, 2, 2, 40, seed=s)[0]),
    ("vc-decision", 2, None, lambda s: gen_planted_hitting_set(30, 2, 2, 40, seed=s)[0]),
    ("hs-promised", 2, None, lambda s: gen_planted_hitting_set(12, 3, 2, 30, seed=s)[0]),
    ("hitting-set", 2, None, lambda s: gen_planted_hitting_set(10, 3, 2, 25, seed=s)[0]),
    ("cut", 3, 2, lambda s: gen_planted_cut(24, 2, 4, seed=s)[0]),
    ("cut-decision", 3, 2, lambda s: gen_planted_cut(24, 2, 4, seed=s)[0]),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=30)
    args = parser.parse_args()

    print(f"{'algorithm':20s} {'policy':8s} {'success':>8s} {'mean queries':>14s}")
    for name, k, t, make in CASES:
        for policy in (EdgeSelectionPolicy.LEXICOGRAPHIC, EdgeSelectionPolicy.UNIFORM_RANDOM):
            good = 0
            queries = 0
            for seed in range(args.trials):
                hidden = make(seed)
                report, _ = run_trial(name, hidden, k, t=t, seed=seed, policy=policy)
                good += bool(report.success)
                queries += report.bis + report.bise + report.gpis + report.gpise
            print(
                f"{name:20s} {policy.value:8s} {good:>4d}/{args.trials:<3d} "
                f"{queries / args.trials:>14.1f}"
            )


if __name__ == "__main__":
    main()
