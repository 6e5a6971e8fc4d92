#!/usr/bin/env python3
"""Sweep query counts against k and compare fitted exponents with the
nominal bounds.

Writes query_growth.csv and query_growth_summary.json next to this script
by default. Expect a few minutes at the default grid.
"""

import argparse
import json
from pathlib import Path

from qclab.harness import SweepConfig, run_sweep

GRID = dict(
    algorithms=["packing", "vc-promised", "vc-decision", "cut", "cut-decision"],
    n=[40],
    k=[1, 2, 3, 4],
    t=[2],
    trials=5,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", default=str(Path(__file__).parent))
    args = parser.parse_args()

    out = Path(args.out_dir)
    cfg = SweepConfig(
        master_seed=args.seed,
        csv_path=str(out / "query_growth.csv"),
        summary_path=str(out / "query_growth_summary.json"),
        **GRID,
    )
    _, summary = run_sweep(cfg)
    print(f"wrote {cfg.csv_path}")
    for group, fit in summary["exponent_fits"].items():
        print(
            f"{group:24s} fitted k-exponent: "
            f"{fit['fitted_exponent'] if fit['fitted_exponent'] is None else round(fit['fitted_exponent'], 2)}"
            f"  (nominal without log factors: {fit['reference_exponent']})"
        )
    print(json.dumps({g: f for g, f in summary["exponent_fits"].items()}, indent=2))


if __name__ == "__main__":
    main()
