"""Partition representation, clustering objectives, and the Adjusted Rand Index.

All operations here are pure functions over immutable inputs and safe to call
concurrently.
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class Partition:
    """Hard assignment of n points to clusters 0..k-1.

    The vector representation guarantees that each point belongs to exactly
    one cluster and that the clusters jointly cover the dataset. Empty
    clusters are possible and detectable via `has_empty`.
    """

    assignment: np.ndarray
    k: int

    def __post_init__(self):
        self.assignment = np.asarray(self.assignment, dtype=int)
        if self.assignment.ndim != 1 or self.assignment.size < 1:
            raise ValueError("assignment must be a non-empty 1-D vector")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.assignment.min() < 0 or self.assignment.max() >= self.k:
            raise ValueError("cluster ids must lie in 0..k-1")

    @property
    def n(self) -> int:
        return self.assignment.size

    def counts(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k)

    @property
    def has_empty(self) -> bool:
        return bool(np.any(self.counts() == 0))

    def is_valid(self, no_empty: bool = True) -> bool:
        """Check the partition invariants; with `no_empty`, also require that
        every cluster id 0..k-1 occurs at least once."""
        ok = self.assignment.min() >= 0 and self.assignment.max() < self.k
        if no_empty:
            ok = ok and not self.has_empty
        return bool(ok)


@dataclass
class Contingency:
    """Cross-tabulation of two labelings; intermediate for the ARI."""

    table: np.ndarray
    row_sums: np.ndarray
    col_sums: np.ndarray
    n: int

    @classmethod
    def from_labels(cls, a: np.ndarray, b: np.ndarray) -> "Contingency":
        a = np.asarray(a, dtype=int)
        b = np.asarray(b, dtype=int)
        if a.shape != b.shape or a.ndim != 1:
            raise ValueError("labelings must be 1-D vectors of equal length")
        _, ai = np.unique(a, return_inverse=True)
        _, bi = np.unique(b, return_inverse=True)
        n_a = ai.max() + 1
        n_b = bi.max() + 1
        table = np.bincount(ai * n_b + bi, minlength=n_a * n_b).reshape(n_a, n_b)
        return cls(table, table.sum(axis=1), table.sum(axis=0), int(a.size))


def _labels_of(x) -> np.ndarray:
    if isinstance(x, Partition):
        return x.assignment
    return np.asarray(x, dtype=int)


def _pairs(x: int) -> int:
    return x * (x - 1) // 2


def assign_nearest(points: np.ndarray, centroids: np.ndarray, distance: str = "euclidean") -> Partition:
    """Assign each point to the nearest centroid; ties go to the lowest index."""
    if distance != "euclidean":
        raise ValueError(f"unsupported distance metric: {distance!r}")
    points = np.asarray(points, dtype=float)
    centroids = np.asarray(centroids, dtype=float)
    if centroids.ndim != 2 or centroids.shape[0] < 1:
        raise ValueError("centroids must be a K x d matrix with K >= 1")
    if not np.all(np.isfinite(centroids)):
        raise ValueError("centroids must be finite")
    # squared distances preserve the argmin and are cheaper than norms
    d2 = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    return Partition(np.argmin(d2, axis=1), centroids.shape[0])


def _member_distances(points, centroids, partition):
    diffs = points - centroids[partition.assignment]
    return np.sqrt((diffs**2).sum(axis=1))


def quantization_error(points: np.ndarray, centroids: np.ndarray, partition: Partition) -> float:
    """Mean over non-empty clusters of the mean member-to-centroid distance.

    This is the fitness minimized by the PSO drivers.
    """
    points = np.asarray(points, dtype=float)
    centroids = np.asarray(centroids, dtype=float)
    if partition.k != centroids.shape[0]:
        raise ValueError("partition k does not match number of centroids")
    dist = _member_distances(points, centroids, partition)
    counts = partition.counts()
    if np.all(counts == 0):
        raise ValueError("all clusters are empty")
    sums = np.bincount(partition.assignment, weights=dist, minlength=partition.k)
    nonempty = counts > 0
    return float(np.mean(sums[nonempty] / counts[nonempty]))


def sse(points: np.ndarray, centroids: np.ndarray, partition: Partition) -> float:
    """Sum of squared point-to-assigned-centroid distances (k-means objective)."""
    points = np.asarray(points, dtype=float)
    centroids = np.asarray(centroids, dtype=float)
    if partition.k != centroids.shape[0]:
        raise ValueError("partition k does not match number of centroids")
    diffs = points - centroids[partition.assignment]
    return float((diffs**2).sum())


def adjusted_rand_index(a, b) -> float:
    """Chance-corrected pair-counting agreement between two partitions.

    Uses the Hubert-Arabie permutation-model form computed from the
    contingency table. All pair counts are kept as exact integers with a
    single final division, so results like -0.5 or 1.0 come out exact and
    the value is invariant under relabeling of either argument.

    If both partitions are degenerate in the same way (both single-cluster
    or both all-singletons), the index is 1 by convention.
    """
    la = _labels_of(a)
    lb = _labels_of(b)
    if la.shape != lb.shape:
        raise ValueError("partitions must have equal length")
    if la.size < 2:
        raise ValueError("ARI requires n >= 2")
    ct = Contingency.from_labels(la, lb)
    index = sum(_pairs(int(v)) for v in ct.table.ravel())
    sum_a = sum(_pairs(int(v)) for v in ct.row_sums)
    sum_b = sum(_pairs(int(v)) for v in ct.col_sums)
    total = _pairs(ct.n)
    # ARI = (index - sum_a*sum_b/total) / ((sum_a+sum_b)/2 - sum_a*sum_b/total),
    # cleared of denominators to stay in integer arithmetic.
    numer = 2 * (total * index - sum_a * sum_b)
    denom = total * (sum_a + sum_b) - 2 * sum_a * sum_b
    if denom == 0:
        return 1.0
    return numer / denom
