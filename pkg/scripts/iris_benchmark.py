#!/usr/bin/env python3
"""Compare all four algorithms on the iris data.

Point --csv at an iris file (150 rows, 4 features, label column last); without
one, the copy bundled with scikit-learn is written to data/iris.csv and used.
"""

import argparse
import csv
import os

from swarmclust.harness import DatasetSpec, ExperimentConfig, run_experiment


def ensure_iris(path):
    if os.path.exists(path):
        return path
    from sklearn.datasets import load_iris

    iris = load_iris()
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sepal_length", "sepal_width", "petal_length", "petal_width", "species"])
        for row, target in zip(iris.data, iris.target):
            writer.writerow([repr(float(v)) for v in row] + [iris.target_names[target]])
    return path


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--csv", default="data/iris.csv")
    parser.add_argument("--replicates", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", default="results/iris")
    args = parser.parse_args()

    path = ensure_iris(args.csv)
    cfg = ExperimentConfig(
        datasets=[DatasetSpec(name="iris", csv=path, has_header=True)],
        algorithms=["kmeans", "psoc", "lpso", "lcpso"],
        replicates=args.replicates,
        base_seed=args.seed,
        out_dir=args.out_dir,
    )
    result = run_experiment(cfg)
    print(f"{'algorithm':<8} {'ari_median':>10} {'ari_mean':>9} {'ari_std':>8}")
    for row in result.summary:
        print(f"{row.algorithm:<8} {row.ari_median:>10.4f} {row.ari_mean:>9.4f} {row.ari_std:>8.4f}")


if __name__ == "__main__":
    main()
