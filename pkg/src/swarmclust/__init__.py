"""PSO-based partitional clustering with a k-means baseline and an ARI harness."""

from .data import BoundingBox, Dataset, generate_blobs, load_csv, normalize_minmax, save_csv
from .drivers import ClusterRunConfig, RunResult, fit, lcpso_fit, lpso_fit, psoc_fit
from .kmeans import KMeansConfig, kmeans_fit, repair_empty_clusters
from .metrics import Contingency, Partition, adjusted_rand_index, assign_nearest, quantization_error, sse
from .pso import Particle, PsoConfig, Topology

__all__ = [
    "BoundingBox",
    "ClusterRunConfig",
    "Contingency",
    "Dataset",
    "KMeansConfig",
    "Particle",
    "Partition",
    "PsoConfig",
    "RunResult",
    "Topology",
    "adjusted_rand_index",
    "assign_nearest",
    "fit",
    "generate_blobs",
    "kmeans_fit",
    "lcpso_fit",
    "load_csv",
    "lpso_fit",
    "normalize_minmax",
    "psoc_fit",
    "quantization_error",
    "repair_empty_clusters",
    "save_csv",
    "sse",
]

__version__ = "0.1.0"
