"""Dataset ingestion, synthetic blob generation, and min-max normalization."""

import csv
import math
import os
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned box, used as the search space for particle initialization."""

    min: np.ndarray
    max: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "min", np.asarray(self.min, dtype=float))
        object.__setattr__(self, "max", np.asarray(self.max, dtype=float))
        if self.min.shape != self.max.shape or self.min.ndim != 1:
            raise ValueError("min and max must be 1-D vectors of equal length")
        if np.any(self.min > self.max):
            raise ValueError("min[j] must not exceed max[j]")

    @property
    def span(self) -> np.ndarray:
        return self.max - self.min


@dataclass
class Dataset:
    """n points in d dimensions with optional integer class labels.

    Treat instances as immutable after construction; they are shared across
    concurrent experiment runs. `labels`, when present, are dense ids
    0..C-1; `label_names[id]` keeps the original label string so a dataset
    can be written back to CSV losslessly.
    """

    points: np.ndarray
    labels: np.ndarray | None = None
    name: str = ""
    label_names: tuple[str, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 2:
            raise ValueError("points must be a 2-D (n, d) array")
        n, d = self.points.shape
        if n < 1 or d < 1:
            raise ValueError("dataset needs n >= 1 points and d >= 1 features")
        if not np.all(np.isfinite(self.points)):
            raise ValueError("points must be finite")
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=int)
            if self.labels.shape != (n,):
                raise ValueError("labels must be a length-n vector")
            if self.label_names is None:
                self.label_names = tuple(str(v) for v in range(self.labels.max() + 1))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def n_classes(self) -> int | None:
        if self.labels is None:
            return None
        return int(len(np.unique(self.labels)))

    def bounding_box(self) -> BoundingBox:
        return BoundingBox(self.points.min(axis=0), self.points.max(axis=0))


def _resolve_label_column(label_column, header: list[str] | None, n_cols: int) -> int | None:
    """Map a column spec (index, name, "last", or None) to a column index."""
    if label_column is None:
        return None
    if label_column == "last":
        return n_cols - 1
    if isinstance(label_column, int):
        idx = label_column if label_column >= 0 else n_cols + label_column
        if not 0 <= idx < n_cols:
            raise ValueError(f"label column index {label_column} out of range for {n_cols} columns")
        return idx
    if isinstance(label_column, str):
        if header is None:
            raise ValueError("label column by name requires has_header=True")
        if label_column not in header:
            raise ValueError(f"no column named {label_column!r} in header {header}")
        return header.index(label_column)
    raise TypeError("label_column must be None, 'last', an int index, or a column name")


def load_csv(path, label_column="last", has_header: bool = False) -> Dataset:
    """Load a comma-separated dataset, optionally extracting a label column.

    Labels are opaque strings mapped to dense integer ids in first-occurrence
    order. Every non-label cell must parse as a finite real; violations are
    reported with their row and column.
    """
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row]
    if not rows:
        raise ValueError(f"{path}: empty file")

    header = None
    if has_header:
        header = [cell.strip() for cell in rows[0]]
        rows = rows[1:]
        if not rows:
            raise ValueError(f"{path}: no data rows after header")

    n_cols = len(rows[0])
    label_idx = _resolve_label_column(label_column, header, n_cols)

    points = []
    raw_labels = []
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise ValueError(f"{path}: row {i} has {len(row)} cells, expected {n_cols}")
        feats = []
        for j, cell in enumerate(row):
            if j == label_idx:
                raw_labels.append(cell.strip())
                continue
            try:
                value = float(cell)
            except ValueError:
                raise ValueError(f"{path}: non-numeric feature cell at row {i}, col {j}: {cell!r}") from None
            if not math.isfinite(value):
                raise ValueError(f"{path}: non-finite feature cell at row {i}, col {j}: {cell!r}")
            feats.append(value)
        points.append(feats)

    labels = None
    label_names = None
    if label_idx is not None:
        ids = {}
        for s in raw_labels:
            if s not in ids:
                ids[s] = len(ids)
        labels = np.array([ids[s] for s in raw_labels], dtype=int)
        label_names = tuple(ids)

    name = os.path.splitext(os.path.basename(path))[0]
    return Dataset(np.asarray(points, dtype=float), labels, name=name, label_names=label_names)


def save_csv(ds: Dataset, path, header: bool = True) -> None:
    """Write a dataset as CSV (label column last, if present).

    Feature values are written with repr precision so a save/load round trip
    is bit-exact.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if header:
            cols = [f"f{j}" for j in range(ds.d)]
            if ds.labels is not None:
                cols.append("label")
            writer.writerow(cols)
        for i in range(ds.n):
            row = [repr(float(v)) for v in ds.points[i]]
            if ds.labels is not None:
                row.append(ds.label_names[ds.labels[i]])
            writer.writerow(row)


def normalize_minmax(ds: Dataset) -> tuple[Dataset, BoundingBox]:
    """Rescale every feature linearly to [0, 1]; constant features map to 0.

    Returns the normalized dataset and the original per-feature bounds.
    """
    lo = ds.points.min(axis=0)
    hi = ds.points.max(axis=0)
    span = hi - lo
    scaled = np.where(span > 0, (ds.points - lo) / np.where(span > 0, span, 1.0), 0.0)
    out = Dataset(scaled, ds.labels, name=ds.name, label_names=ds.label_names)
    return out, BoundingBox(lo, hi)


def generate_blobs(k: int, per_cluster: int, d: int, spread: float, seed: int, name: str | None = None) -> Dataset:
    """Sample k isotropic Gaussian clusters with centers uniform in [0, 1]^d.

    Labels record the generating component (points grouped 0..k-1).
    Deterministic for a fixed seed.
    """
    if k < 1 or per_cluster < 1 or d < 1:
        raise ValueError("k, per_cluster and d must all be >= 1")
    if spread <= 0:
        raise ValueError("spread must be positive")
    rng = np.random.default_rng(seed)
    centers = rng.uniform(0.0, 1.0, size=(k, d))
    points = np.concatenate(
        [centers[i] + rng.normal(0.0, spread, size=(per_cluster, d)) for i in range(k)]
    )
    labels = np.repeat(np.arange(k), per_cluster)
    if name is None:
        name = f"blobs_k{k}x{per_cluster}_d{d}"
    return Dataset(points, labels, name=name)
