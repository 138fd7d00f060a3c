"""Lloyd's k-means baseline."""

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .metrics import Partition, assign_nearest, sse

INIT_RANDOM_POINTS = "random-points"
INIT_RANDOM_UNIFORM = "random-uniform-in-box"


@dataclass
class KMeansConfig:
    k: int
    max_iters: int = 1000
    tol: float = 1e-4
    seed: int = 0
    init: str = INIT_RANDOM_POINTS

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.tol < 0:
            raise ValueError("tol must be >= 0")
        if self.init not in (INIT_RANDOM_POINTS, INIT_RANDOM_UNIFORM):
            raise ValueError(f"unknown init strategy: {self.init!r}")


def repair_empty_clusters(points: np.ndarray, centroids: np.ndarray) -> tuple[np.ndarray, Partition]:
    """Re-seed empty clusters and return centroids plus a full-coverage partition.

    Each empty centroid moves to the data point farthest from it, then points
    are reassigned; repeated until no cluster is empty. This never increases
    the SSE: an empty centroid carries no cost and reassignment only improves.
    """
    points = np.asarray(points, dtype=float)
    centroids = np.array(centroids, dtype=float)
    k = centroids.shape[0]
    partition = assign_nearest(points, centroids)
    for _ in range(2 * k):
        counts = partition.counts()
        empties = np.flatnonzero(counts == 0)
        if empties.size == 0:
            return centroids, partition
        for j in empties:
            d2 = ((points - centroids[j]) ** 2).sum(axis=1)
            centroids[j] = points[np.argmax(d2)]
        partition = assign_nearest(points, centroids)
    raise RuntimeError("could not repair empty clusters (fewer distinct points than clusters?)")


def _init_centroids(points: np.ndarray, cfg: KMeansConfig, rng: np.random.Generator) -> np.ndarray:
    if cfg.init == INIT_RANDOM_POINTS:
        idx = rng.choice(points.shape[0], size=cfg.k, replace=False)
        return points[idx].copy()
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    return rng.uniform(lo, hi, size=(cfg.k, points.shape[1]))


def kmeans_fit(ds: Dataset, cfg: KMeansConfig) -> tuple[np.ndarray, Partition, list[float]]:
    """Run Lloyd's algorithm; returns (centroids, partition, per-iteration SSE trace).

    Stops once the SSE improvement drops below `tol` or after `max_iters`
    update steps. trace[0] is the SSE after the initial assignment; the trace
    is monotonically non-increasing. The returned partition has no empty
    clusters.
    """
    if cfg.k > ds.n:
        raise ValueError(f"k={cfg.k} exceeds number of points n={ds.n}")
    rng = np.random.default_rng(cfg.seed)
    points = ds.points
    centroids = _init_centroids(points, cfg, rng)
    centroids, partition = repair_empty_clusters(points, centroids)
    trace = [sse(points, centroids, partition)]
    for _ in range(cfg.max_iters):
        counts = partition.counts()
        sums = np.zeros_like(centroids)
        np.add.at(sums, partition.assignment, points)
        nonempty = counts > 0
        centroids[nonempty] = sums[nonempty] / counts[nonempty, None]
        centroids, partition = repair_empty_clusters(points, centroids)
        trace.append(sse(points, centroids, partition))
        if trace[-2] - trace[-1] < cfg.tol:
            break
    return centroids, partition, trace
