"""Command-line entry point: run experiments, particle sweeps, and blob generation."""

import argparse
import sys

from .data import generate_blobs, save_csv
from .harness import ExperimentConfig, SweepSpec, run_experiment, run_sweep


def _print_summary(rows):
    if not rows:
        print("no successful cells")
        return
    print(f"{'dataset':<20} {'algorithm':<9} {'ari_median':>10} {'fitness_median':>14} {'runs':>5}")
    for row in rows:
        ari = "-" if row.ari_median is None else f"{row.ari_median:.4f}"
        print(f"{row.dataset:<20} {row.algorithm:<9} {ari:>10} {row.fitness_median:>14.6f} {row.replicates:>5}")


def cmd_run(args) -> int:
    cfg = ExperimentConfig.from_json(args.config)
    if args.out_dir is not None:
        cfg.out_dir = args.out_dir
    if args.workers is not None:
        cfg.workers = args.workers
    if args.seed is not None:
        cfg.base_seed = args.seed
    if args.timing:
        cfg.record_timing = True
    result = run_experiment(cfg)
    _print_summary(result.summary)
    if result.n_errors:
        print(f"{result.n_errors} cell(s) errored; see runs.jsonl", file=sys.stderr)
        return 1
    return 0


def cmd_sweep(args) -> int:
    cfg = ExperimentConfig.from_json(args.config)
    if args.out_dir is not None:
        cfg.out_dir = args.out_dir
    if args.values is not None:
        cfg.sweep = SweepSpec(parameter=args.param, values=[int(v) for v in args.values.split(",")])
    elif cfg.sweep is None:
        raise SystemExit("sweep values required (config 'sweep' section or --values)")
    table = run_sweep(cfg)
    print("swarm_size,ari_median")
    for value, ari in table:
        print(f"{value},{ari:.6f}")
    return 0


def cmd_gen_blobs(args) -> int:
    ds = generate_blobs(k=args.k, per_cluster=args.per_cluster, d=args.dim,
                        spread=args.spread, seed=args.seed)
    save_csv(ds, args.out)
    print(f"wrote {ds.n} x {ds.d} points ({args.k} clusters) to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swarmclust",
                                     description="PSO-based clustering benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a benchmark experiment from a JSON config")
    p_run.add_argument("--config", required=True, help="JSON experiment config")
    p_run.add_argument("--out-dir", default=None, help="directory for summary.csv / runs.jsonl")
    p_run.add_argument("--workers", type=int, default=None, help="parallel worker processes")
    p_run.add_argument("--seed", type=int, default=None, help="override base seed")
    p_run.add_argument("--timing", action="store_true",
                       help="populate the summary runtime column (breaks byte-for-byte reproducibility)")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="sweep swarm size for one dataset/algorithm")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--param", default="swarm-size", choices=["swarm-size", "swarm_size"])
    p_sweep.add_argument("--values", default=None, help="comma-separated swarm sizes, e.g. 10,20,50")
    p_sweep.add_argument("--out-dir", default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    p_gen = sub.add_parser("gen-blobs", help="write a synthetic Gaussian blob dataset as CSV")
    p_gen.add_argument("--k", type=int, required=True, help="number of clusters")
    p_gen.add_argument("--per-cluster", type=int, required=True, help="points per cluster")
    p_gen.add_argument("--dim", type=int, required=True, help="feature dimensions")
    p_gen.add_argument("--spread", type=float, default=0.05, help="cluster standard deviation")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True, help="output CSV path")
    p_gen.set_defaults(func=cmd_gen_blobs)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
