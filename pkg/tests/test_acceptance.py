"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. The heavyweight benchmark runs are shared through module fixtures so
the whole suite stays inside the stated runtime budgets.
"""

import time

import numpy as np
import pytest

from oracles import ari_by_pair_enumeration
from swarmclust.data import generate_blobs, normalize_minmax
from swarmclust.drivers import lcpso_fit, lpso_fit, psoc_fit
from swarmclust.harness import DatasetSpec, ExperimentConfig, build_run_config, run_experiment
from swarmclust.kmeans import KMeansConfig, kmeans_fit
from swarmclust.metrics import Partition, adjusted_rand_index
from swarmclust.pso import Particle, velocity_update_cog

SEEDS = range(10)
EASY_BLOBS = dict(k=2, per_cluster=50, d=2, spread=0.01, seed=0)

DRIVERS = {"psoc": psoc_fit, "lpso": lpso_fit, "lcpso": lcpso_fit}


def _easy_dataset():
    ds = generate_blobs(**EASY_BLOBS)
    centers_gap = np.linalg.norm(
        ds.points[:50].mean(axis=0) - ds.points[50:].mean(axis=0)
    )
    assert centers_gap > 10 * EASY_BLOBS["spread"], "generator seed gives separated blobs"
    return normalize_minmax(ds)[0]


@pytest.fixture(scope="module")
def easy_runs():
    """Criterion 7 workload: every algorithm on the easy blobs, 10 seeds each."""
    ds = _easy_dataset()
    t0 = time.perf_counter()
    runs = {name: [] for name in ("kmeans", "psoc", "lpso", "lcpso")}
    for seed in SEEDS:
        _, part, _ = kmeans_fit(ds, build_run_config("kmeans", 2, seed))
        runs["kmeans"].append({
            "seed": seed,
            "ari": adjusted_rand_index(part, ds.labels),
            "partition": part,
            "pbest_history": None,
        })
        for name, driver in DRIVERS.items():
            cfg = build_run_config(name, 2, seed)
            history = []
            _, part, result = driver(ds, cfg, on_iteration=lambda t, ps: history.append(
                [p.pbest_fitness for p in ps]))
            runs[name].append({
                "seed": seed,
                "ari": result.ari,
                "partition": part,
                "pbest_history": np.array(history),
                "trace": result.best_fitness_trace,
            })
    runs["elapsed_s"] = time.perf_counter() - t0
    return runs


@pytest.fixture(scope="module")
def iris_runs(iris_csv):
    """Criterion 8 workload: kmeans and LCPSO on the real iris data, 10 seeds."""
    spec = DatasetSpec(name="iris", csv=iris_csv, has_header=True)
    ds = normalize_minmax(spec.resolve())[0]
    assert ds.n == 150 and ds.d == 4 and ds.n_classes == 3
    t0 = time.perf_counter()
    out = {"kmeans": [], "lcpso": []}
    for seed in SEEDS:
        _, part, _ = kmeans_fit(ds, build_run_config("kmeans", 3, seed))
        out["kmeans"].append({"ari": adjusted_rand_index(part, ds.labels), "partition": part})
        _, part, result = lcpso_fit(ds, build_run_config("lcpso", 3, seed))
        out["lcpso"].append({"ari": result.ari, "partition": part})
    out["elapsed_s"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="module")
def kmeans_monotone_runs():
    """Criterion 3 workload: 100 seeded k-means fits over generated blobs."""
    ds = normalize_minmax(generate_blobs(k=3, per_cluster=40, d=2, spread=0.05, seed=1))[0]
    t0 = time.perf_counter()
    traces = []
    partitions = []
    for seed in range(100):
        _, part, trace = kmeans_fit(ds, KMeansConfig(k=3, seed=seed))
        traces.append(trace)
        partitions.append(part)
    return {"traces": traces, "partitions": partitions, "elapsed_s": time.perf_counter() - t0}


def test_criterion_1_ari_oracle_equivalence():
    rng = np.random.default_rng(2024)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(2, 9))
        a = rng.integers(0, n, size=n)
        b = rng.integers(0, n, size=n)
        diff = abs(adjusted_rand_index(a, b) - ari_by_pair_enumeration(a, b))
        worst = max(worst, diff)
    elapsed = time.perf_counter() - t0
    assert worst <= 1e-12
    assert elapsed < 5.0
    print(f"\nPASS criterion 1: contingency ARI == pair-enumeration ARI on 1000 pairs "
          f"(worst diff {worst:.2e}, {elapsed:.2f}s)")


def test_criterion_2_ari_hand_values():
    assert adjusted_rand_index([0, 0, 1, 1], [0, 1, 0, 1]) == -0.5
    assert adjusted_rand_index([0, 0, 1, 1], [0, 0, 1, 1]) == 1.0
    assert adjusted_rand_index([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0
    print("\nPASS criterion 2: ARI hand values exact (-0.5, 1.0, 1.0)")


def test_criterion_3_kmeans_sse_monotone(kmeans_monotone_runs):
    violations = 0
    for trace in kmeans_monotone_runs["traces"]:
        violations += sum(1 for a, b in zip(trace, trace[1:]) if b > a)
    assert violations == 0
    assert kmeans_monotone_runs["elapsed_s"] < 10.0
    print(f"\nPASS criterion 3: SSE trace non-increasing over 100 seeded k-means runs "
          f"({kmeans_monotone_runs['elapsed_s']:.2f}s)")


def test_criterion_4_lpso_full_swarm_reproduces_psoc():
    ds = _easy_dataset()
    t0 = time.perf_counter()
    for seed in range(5):
        p_cfg = build_run_config("psoc", 2, seed)
        l_cfg = build_run_config("lpso", 2, seed,
                                 override={"lpso_neighborhood_size": p_cfg.pso.swarm_size})
        cp, pp, rp = psoc_fit(ds, p_cfg)
        cl, pl, rl = lpso_fit(ds, l_cfg)
        assert np.array_equal(cp, cl)
        assert np.array_equal(pp.assignment, pl.assignment)
        assert rp.best_fitness_trace == rl.best_fitness_trace
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    print(f"\nPASS criterion 4: full-swarm LPSO == PSOC bit-for-bit over 5 seeds ({elapsed:.2f}s)")


def test_criterion_5_pbest_monotone_in_all_drivers(easy_runs):
    violations = 0
    for name in DRIVERS:
        for run in easy_runs[name]:
            diffs = np.diff(run["pbest_history"], axis=0)
            violations += int(np.sum(diffs > 0.0))
    assert violations == 0
    print("\nPASS criterion 5: every particle pbest trace non-increasing in all PSO runs")


def test_criterion_6_partition_validity_everywhere(easy_runs, iris_runs, kmeans_monotone_runs):
    checked = 0
    for name in ("kmeans", "psoc", "lpso", "lcpso"):
        for run in easy_runs[name]:
            part = run["partition"]
            assert isinstance(part, Partition)
            assert part.is_valid(no_empty=True)
            checked += 1
    for name in ("kmeans", "lcpso"):
        for run in iris_runs[name]:
            assert run["partition"].is_valid(no_empty=True)
            checked += 1
    for part in kmeans_monotone_runs["partitions"]:
        assert part.is_valid(no_empty=True)
        checked += 1
    print(f"\nPASS criterion 6: {checked} partitions satisfy coverage/disjoint/no-empty invariants")


def test_criterion_7_easy_instance_recovery(easy_runs):
    perfect = {}
    for name in ("kmeans", "psoc", "lpso", "lcpso"):
        perfect[name] = sum(1 for run in easy_runs[name] if run["ari"] == 1.0)
        assert perfect[name] >= 9, f"{name}: only {perfect[name]}/10 perfect recoveries"
    assert easy_runs["elapsed_s"] < 120.0
    counts = ", ".join(f"{k} {v}/10" for k, v in perfect.items())
    print(f"\nPASS criterion 7: easy blobs recovered ({counts}; {easy_runs['elapsed_s']:.1f}s)")


def test_criterion_8_iris_soft_reproduction(iris_runs):
    kmeans_median = float(np.median([r["ari"] for r in iris_runs["kmeans"]]))
    lcpso_median = float(np.median([r["ari"] for r in iris_runs["lcpso"]]))
    assert 0.40 <= kmeans_median <= 0.80
    assert lcpso_median >= 0.45
    assert iris_runs["elapsed_s"] < 120.0
    print(f"\nPASS criterion 8: iris medians kmeans {kmeans_median:.4f} in [0.40, 0.80], "
          f"lcpso {lcpso_median:.4f} >= 0.45 ({iris_runs['elapsed_s']:.1f}s)")


def test_criterion_9_experiment_determinism(tmp_path):
    def config(out):
        return ExperimentConfig(
            datasets=[DatasetSpec(name="blobs", blobs=dict(EASY_BLOBS))],
            algorithms=["kmeans", "psoc", "lpso", "lcpso"],
            replicates=3,
            base_seed=0,
            overrides={a: {"max_iters": 30, "swarm_size": 10} for a in ("psoc", "lpso", "lcpso")},
            out_dir=str(out),
        )

    run_experiment(config(tmp_path / "first"))
    run_experiment(config(tmp_path / "second"))
    first = (tmp_path / "first" / "summary.csv").read_bytes()
    second = (tmp_path / "second" / "summary.csv").read_bytes()
    assert first == second
    print("\nPASS criterion 9: identical config twice -> byte-identical summary CSV")


def test_criterion_10_cog_velocity_hand_values():
    p = Particle(np.array([2.0]), np.array([1.0]), np.array([4.0]), np.inf)
    assert velocity_update_cog(p, np.array([6.0]), 0.5, 1.0, 1.0).tolist() == [0.5]

    p = Particle(np.array([3.0, -1.0]), np.array([1.25, -2.0]), np.array([0.0, 0.0]), np.inf)
    assert velocity_update_cog(p, np.array([5.0, 5.0]), 1.0, 0.0, 0.0).tolist() == [1.25, -2.0]

    p = Particle(np.array([0.0]), np.array([0.0]), np.array([0.0]), np.inf)
    assert velocity_update_cog(p, np.array([0.0]), 0.5, 1.3, 0.7).tolist() == [0.0]
    print("\nPASS criterion 10: center-of-gravity velocity hand values exact "
          "(0.5 substitution, pure inertia, zero fixed point)")
