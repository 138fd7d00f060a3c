#!/usr/bin/env python3
"""Sweep the LCPSO swarm size on a blob dataset and print median ARI per size.

The output (and results/sweep/sweep.csv) is plot-ready two-column data.
"""

import argparse

from swarmclust.harness import DatasetSpec, ExperimentConfig, SweepSpec, run_sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--values", default="6,10,20,40,80",
                        help="comma-separated swarm sizes")
    parser.add_argument("--algorithm", default="lcpso", choices=["psoc", "lpso", "lcpso"])
    parser.add_argument("--replicates", type=int, default=10)
    parser.add_argument("--k", type=int, default=3, help="blob cluster count")
    parser.add_argument("--spread", type=float, default=0.08)
    parser.add_argument("--out-dir", default="results/sweep")
    args = parser.parse_args()

    cfg = ExperimentConfig(
        datasets=[DatasetSpec(
            name="blobs_sweep",
            blobs=dict(k=args.k, per_cluster=60, d=2, spread=args.spread, seed=3),
        )],
        algorithms=[args.algorithm],
        replicates=args.replicates,
        sweep=SweepSpec(values=[int(v) for v in args.values.split(",")]),
        out_dir=args.out_dir,
    )
    table = run_sweep(cfg)
    print("swarm_size,ari_median")
    for size, ari in table:
        print(f"{size},{ari:.4f}")


if __name__ == "__main__":
    main()
