"""Experiment runner: multi-algorithm, multi-dataset, multi-seed ARI benchmark.

Replicate r of any (dataset, algorithm) cell always runs with seed
base_seed + r, so results are independent of execution order and worker
count. Summary statistics are written to one CSV, per-run records (including
fitness traces) to a JSON-lines file, and sweep results to a two-column CSV.

Wall-clock timings are always recorded in the per-run file. The summary CSV
is a deterministic function of the config; its runtime column is only
populated when `record_timing` is set, since measured times break
byte-for-byte reproducibility of the file.
"""

import csv
import json
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .data import Dataset, generate_blobs, load_csv, normalize_minmax
from .drivers import ALGORITHMS, ClusterRunConfig, RunResult, fit
from .kmeans import KMeansConfig, kmeans_fit
from .metrics import adjusted_rand_index, quantization_error, sse
from .pso import PsoConfig

SUMMARY_COLUMNS = [
    "dataset",
    "algorithm",
    "ari_median",
    "ari_mean",
    "ari_std",
    "fitness_median",
    "runtime_ms_median",
    "replicates",
    "seed_base",
]

ALL_ALGORITHMS = ("kmeans",) + ALGORITHMS

DEFAULT_SWARM_SIZE = 30  # psoc / lpso
LCPSO_PARTICLES_PER_CLUSTER = 10
DEFAULT_MAX_ITERS = 200


@dataclass
class DatasetSpec:
    """One dataset source: a CSV file or a synthetic blob generator spec."""

    name: str
    csv: str | None = None
    label_column: object = "last"
    has_header: bool = False
    blobs: dict | None = None
    k: int | None = None  # cluster count override; defaults to the label count

    def __post_init__(self):
        if (self.csv is None) == (self.blobs is None):
            raise ValueError(f"dataset {self.name!r}: specify exactly one of csv or blobs")

    @classmethod
    def from_dict(cls, d: dict) -> "DatasetSpec":
        d = dict(d)
        if "name" not in d:
            if "csv" in d:
                d["name"] = os.path.splitext(os.path.basename(d["csv"]))[0]
            else:
                d["name"] = "blobs"
        return cls(**d)

    def resolve(self) -> Dataset:
        if self.csv is not None:
            ds = load_csv(self.csv, label_column=self.label_column, has_header=self.has_header)
        else:
            ds = generate_blobs(**self.blobs)
        return Dataset(ds.points, ds.labels, name=self.name, label_names=ds.label_names)

    def cluster_count(self, ds: Dataset) -> int:
        if self.k is not None:
            return self.k
        if ds.labels is not None:
            return ds.n_classes
        raise ValueError(f"dataset {self.name!r} has no labels; set k explicitly")


@dataclass
class SweepSpec:
    parameter: str = "swarm_size"
    values: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.parameter not in ("swarm_size", "swarm-size"):
            raise ValueError(f"unsupported sweep parameter: {self.parameter!r}")
        self.parameter = "swarm_size"
        self.values = [int(v) for v in self.values]
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("sweep values must be strictly increasing")


@dataclass
class ExperimentConfig:
    datasets: list[DatasetSpec]
    algorithms: list[str] = field(default_factory=lambda: list(ALL_ALGORITHMS))
    replicates: int = 10
    base_seed: int = 0
    normalize: bool = True
    overrides: dict = field(default_factory=dict)  # per-algorithm parameter dicts
    sweep: SweepSpec | None = None
    workers: int = 1
    out_dir: str | None = None
    record_timing: bool = False

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        for algo in self.algorithms:
            if algo not in ALL_ALGORITHMS:
                raise ValueError(f"unknown algorithm: {algo!r}")
        for algo in self.overrides:
            if algo not in ALL_ALGORITHMS:
                raise ValueError(f"override for unknown algorithm: {algo!r}")

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        d["datasets"] = [DatasetSpec.from_dict(s) for s in d.get("datasets", [])]
        if d.get("sweep") is not None:
            d["sweep"] = SweepSpec(**d["sweep"])
        return cls(**d)

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class SummaryRow:
    """Per (dataset, algorithm) aggregate over the replicate runs."""

    dataset: str
    algorithm: str
    ari_median: float | None
    ari_mean: float | None
    ari_std: float | None
    fitness_median: float
    runtime_ms_median: float | None
    replicates: int
    seed_base: int


def _merge_params(defaults: dict, override: dict | None) -> dict:
    out = dict(defaults)
    out.update(override or {})
    return out


def build_run_config(algorithm: str, k: int, seed: int, override: dict | None = None):
    """Materialize the per-algorithm config for one run, applying overrides."""
    if algorithm == "kmeans":
        params = _merge_params({"k": k, "seed": seed}, override)
        return KMeansConfig(**params)
    swarm = DEFAULT_SWARM_SIZE if algorithm != "lcpso" else LCPSO_PARTICLES_PER_CLUSTER * k
    pso_params = _merge_params(
        {"swarm_size": swarm, "max_iters": DEFAULT_MAX_ITERS, "seed": seed},
        override,
    )
    nb_size = pso_params.pop("lpso_neighborhood_size", None)
    return ClusterRunConfig(k=k, pso=PsoConfig(**pso_params), algorithm=algorithm,
                            lpso_neighborhood_size=nb_size)


def run_one(spec: DatasetSpec, algorithm: str, seed: int, normalize: bool = True,
            override: dict | None = None) -> RunResult:
    """Execute one (dataset, algorithm, seed) cell and validate its partition."""
    ds = spec.resolve()
    if normalize:
        ds, _ = normalize_minmax(ds)
    k = spec.cluster_count(ds)
    cfg = build_run_config(algorithm, k, seed, override)
    if algorithm == "kmeans":
        t0 = time.perf_counter()
        centroids, partition, trace = kmeans_fit(ds, cfg)
        elapsed_ms = (time.perf_counter() - t0) * 1000.0
        ari = adjusted_rand_index(partition, ds.labels) if ds.labels is not None else None
        result = RunResult(
            ari=ari,
            quantization_error=quantization_error(ds.points, centroids, partition),
            sse=sse(ds.points, centroids, partition),
            best_fitness_trace=trace,
            runtime_ms=elapsed_ms,
            seed=seed,
            config={"algorithm": "kmeans", **asdict(cfg)},
        )
    else:
        centroids, partition, result = fit(ds, cfg)
    if not partition.is_valid(no_empty=True):
        raise RuntimeError(f"{algorithm} returned an invalid partition on {spec.name}")
    return result


def _run_cell(args):
    spec, algorithm, replicate, seed, normalize, override = args
    record = {
        "dataset": spec.name,
        "algorithm": algorithm,
        "replicate": replicate,
        "seed": seed,
        "error": None,
    }
    try:
        result = run_one(spec, algorithm, seed, normalize, override)
        record.update(result.to_dict())
    except Exception as exc:  # cell failures must not abort the experiment
        record["error"] = f"{type(exc).__name__}: {exc}"
    return record


def _stat_or_none(values, fn):
    xs = [v for v in values if v is not None]
    if not xs:
        return None
    return fn(xs)


def _aggregate(cfg: ExperimentConfig, records: list[dict]) -> list[SummaryRow]:
    rows = []
    for spec in cfg.datasets:
        for algo in cfg.algorithms:
            cell = [r for r in records
                    if r["dataset"] == spec.name and r["algorithm"] == algo and r["error"] is None]
            if not cell:
                continue
            aris = [r["ari"] for r in cell]
            fitnesses = [r["quantization_error"] for r in cell]
            runtime = None
            if cfg.record_timing:
                runtime = statistics.median(r["runtime_ms"] for r in cell)
            rows.append(SummaryRow(
                dataset=spec.name,
                algorithm=algo,
                ari_median=_stat_or_none(aris, statistics.median),
                ari_mean=_stat_or_none(aris, statistics.fmean),
                ari_std=_stat_or_none(aris, lambda xs: statistics.pstdev(xs) if len(xs) > 1 else 0.0),
                fitness_median=statistics.median(fitnesses),
                runtime_ms_median=runtime,
                replicates=len(cell),
                seed_base=cfg.base_seed,
            ))
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_summary_csv(rows: list[SummaryRow], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(getattr(row, col)) for col in SUMMARY_COLUMNS])


def read_summary_csv(path) -> list[SummaryRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = []
        for rec in reader:
            rows.append(SummaryRow(
                dataset=rec["dataset"],
                algorithm=rec["algorithm"],
                ari_median=float(rec["ari_median"]) if rec["ari_median"] else None,
                ari_mean=float(rec["ari_mean"]) if rec["ari_mean"] else None,
                ari_std=float(rec["ari_std"]) if rec["ari_std"] else None,
                fitness_median=float(rec["fitness_median"]),
                runtime_ms_median=float(rec["runtime_ms_median"]) if rec["runtime_ms_median"] else None,
                replicates=int(rec["replicates"]),
                seed_base=int(rec["seed_base"]),
            ))
    return rows


def write_runs_jsonl(records: list[dict], path) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")


@dataclass
class ExperimentResult:
    summary: list[SummaryRow]
    records: list[dict]

    @property
    def n_errors(self) -> int:
        return sum(1 for r in self.records if r["error"] is not None)


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run every (dataset, algorithm, replicate) cell and aggregate.

    Cells are independent jobs; with workers > 1 they run in a process pool.
    A failing cell yields an error record but never aborts the experiment.
    Output files (when out_dir is set): summary.csv and runs.jsonl.
    """
    if not cfg.datasets:
        raise ValueError("config lists no datasets")
    jobs = []
    for spec in cfg.datasets:
        for algo in cfg.algorithms:
            for r in range(cfg.replicates):
                jobs.append((spec, algo, r, cfg.base_seed + r, cfg.normalize,
                             cfg.overrides.get(algo)))
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(_run_cell, jobs))
    else:
        records = [_run_cell(job) for job in jobs]
    # aggregation order is fixed by the config, not by completion order
    summary = _aggregate(cfg, records)
    result = ExperimentResult(summary, records)
    if cfg.out_dir is not None:
        os.makedirs(cfg.out_dir, exist_ok=True)
        write_summary_csv(summary, os.path.join(cfg.out_dir, "summary.csv"))
        write_runs_jsonl(records, os.path.join(cfg.out_dir, "runs.jsonl"))
    return result


def run_sweep(cfg: ExperimentConfig) -> list[tuple[int, float]]:
    """Repeat the experiment for each sweep value of swarm_size.

    Requires exactly one dataset and one PSO algorithm; emits
    (swarm_size, median ARI) pairs and writes them as a two-column CSV when
    out_dir is set.
    """
    if cfg.sweep is None or not cfg.sweep.values:
        raise ValueError("config has no sweep values")
    if len(cfg.algorithms) != 1 or cfg.algorithms[0] not in ALGORITHMS:
        raise ValueError("sweep requires exactly one PSO algorithm (psoc, lpso or lcpso)")
    if len(cfg.datasets) != 1:
        raise ValueError("sweep requires exactly one dataset")
    algo = cfg.algorithms[0]
    out_dir = cfg.out_dir
    table = []
    for value in cfg.sweep.values:
        overrides = {a: dict(o) for a, o in cfg.overrides.items()}
        overrides.setdefault(algo, {})["swarm_size"] = value
        sub = ExperimentConfig(
            datasets=cfg.datasets,
            algorithms=[algo],
            replicates=cfg.replicates,
            base_seed=cfg.base_seed,
            normalize=cfg.normalize,
            overrides=overrides,
            workers=cfg.workers,
            out_dir=None,
            record_timing=cfg.record_timing,
        )
        result = run_experiment(sub)
        if not result.summary or result.summary[0].ari_median is None:
            raise RuntimeError(f"sweep value {value}: no successful labeled runs")
        table.append((value, result.summary[0].ari_median))
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "sweep.csv"), "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["swarm_size", "ari_median"])
            for value, ari in table:
                writer.writerow([value, repr(float(ari))])
    return table
