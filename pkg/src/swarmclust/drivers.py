"""The three PSO clustering drivers: PSOC (gbest), LPSO (lbest blocks), LCPSO.

PSOC and LPSO share one full-solution engine (a particle encodes all K
centroids); LPSO with a single full-swarm neighborhood reproduces PSOC
exactly. LCPSO particles are single centroid candidates grouped into K
neighborhoods, one per cluster.
"""

import time
from dataclasses import asdict, dataclass

import numpy as np

from .data import BoundingBox, Dataset
from .kmeans import repair_empty_clusters
from .metrics import Partition, adjusted_rand_index, assign_nearest, quantization_error, sse
from .pso import (
    Particle,
    PsoConfig,
    Topology,
    best_of,
    draw_phi,
    pbest_update,
    position_update,
    velocity_update_cog,
    velocity_update_gbest,
)

ALGORITHMS = ("psoc", "lpso", "lcpso")


@dataclass(frozen=True)
class CentroidsEncoding:
    """Flat particle layout: centroid 0 dims, centroid 1 dims, ..."""

    flat: np.ndarray
    d: int

    def __post_init__(self):
        object.__setattr__(self, "flat", np.asarray(self.flat, dtype=float))
        if self.flat.ndim != 1 or self.flat.size == 0 or self.flat.size % self.d != 0:
            raise ValueError("flat length must be a positive multiple of d")

    @property
    def k(self) -> int:
        return self.flat.size // self.d

    def as_matrix(self) -> np.ndarray:
        return self.flat.reshape(self.k, self.d)

    @classmethod
    def from_matrix(cls, centroids: np.ndarray) -> "CentroidsEncoding":
        centroids = np.asarray(centroids, dtype=float)
        return cls(centroids.reshape(-1), centroids.shape[1])


@dataclass
class ClusterRunConfig:
    k: int
    pso: PsoConfig
    algorithm: str = "psoc"
    lpso_neighborhood_size: int | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm: {self.algorithm!r}")
        if self.algorithm == "lcpso" and self.pso.swarm_size < self.k:
            raise ValueError("lcpso needs swarm_size >= k (one particle per neighborhood)")
        if self.lpso_neighborhood_size is not None:
            if not 2 <= self.lpso_neighborhood_size <= self.pso.swarm_size:
                raise ValueError("lpso_neighborhood_size must be in [2, swarm_size]")


@dataclass
class RunResult:
    """Outcome of one driver run: scores, best-fitness trace, timing, config echo."""

    ari: float | None
    quantization_error: float
    sse: float
    best_fitness_trace: list[float]
    runtime_ms: float
    seed: int
    config: dict

    def to_dict(self) -> dict:
        return {
            "ari": self.ari,
            "quantization_error": self.quantization_error,
            "sse": self.sse,
            "best_fitness_trace": list(self.best_fitness_trace),
            "runtime_ms": self.runtime_ms,
            "seed": self.seed,
            "config": self.config,
        }


def _config_echo(cfg: ClusterRunConfig) -> dict:
    echo = {
        "algorithm": cfg.algorithm,
        "k": cfg.k,
        "lpso_neighborhood_size": cfg.lpso_neighborhood_size,
        "pso": asdict(cfg.pso),
    }
    omega = echo["pso"]["omega"]
    if isinstance(omega, tuple):
        echo["pso"]["omega"] = list(omega)
    return echo


def _v_max_per_dim(cfg: PsoConfig, box: BoundingBox) -> np.ndarray:
    if cfg.v_max is not None:
        return np.full(box.span.shape, float(cfg.v_max))
    return 0.5 * box.span


def _finalize(ds: Dataset, centroids: np.ndarray, trace, started, seed, cfg) -> tuple[np.ndarray, Partition, RunResult]:
    centroids, partition = repair_empty_clusters(ds.points, centroids)
    ari = None
    if ds.labels is not None:
        ari = adjusted_rand_index(partition, ds.labels)
    result = RunResult(
        ari=ari,
        quantization_error=quantization_error(ds.points, centroids, partition),
        sse=sse(ds.points, centroids, partition),
        best_fitness_trace=trace,
        runtime_ms=(time.perf_counter() - started) * 1000.0,
        seed=seed,
        config=_config_echo(cfg),
    )
    return centroids, partition, result


def lpso_block_membership(swarm_size: int, neighborhood_size: int) -> np.ndarray:
    """Static contiguous index blocks; the last block absorbs any remainder."""
    return np.arange(swarm_size) // neighborhood_size


def lcpso_membership(swarm_size: int, k: int) -> np.ndarray:
    """Round-robin split into k neighborhoods; sizes differ by at most one."""
    return np.arange(swarm_size) % k


def _fit_full_solution(ds: Dataset, cfg: ClusterRunConfig, topology: Topology, on_iteration=None,
                       init_positions=None):
    """Shared PSOC/LPSO engine over flat K*d centroid particles.

    `init_positions` optionally seeds the leading particles with known
    centroid sets (rows of shape (m, K*d) or (m, K, d)); the rest of the
    swarm initializes at random data points as usual.
    """
    if cfg.k > ds.n:
        raise ValueError(f"k={cfg.k} exceeds number of points n={ds.n}")
    started = time.perf_counter()
    pso_cfg = cfg.pso
    rng = np.random.default_rng(pso_cfg.seed)
    points = ds.points
    n, d = points.shape
    k = cfg.k

    box = ds.bounding_box()
    flat_box = BoundingBox(np.tile(box.min, k), np.tile(box.max, k))
    v_max = np.tile(_v_max_per_dim(pso_cfg, box), k)

    seeded = np.empty((0, k * d))
    if init_positions is not None:
        seeded = np.asarray(init_positions, dtype=float).reshape(-1, k * d)
        if seeded.shape[0] > pso_cfg.swarm_size:
            raise ValueError("more seeded positions than particles")

    def fitness(flat: np.ndarray) -> float:
        centroids = flat.reshape(k, d)
        part = assign_nearest(points, centroids)
        return quantization_error(points, centroids, part)

    particles = []
    for i in range(pso_cfg.swarm_size):
        if i < seeded.shape[0]:
            position = seeded[i].copy()
        else:
            position = points[rng.choice(n, size=k, replace=False)].reshape(-1)
        pbest = points[rng.choice(n, size=k, replace=False)].reshape(-1)
        velocity = rng.uniform(-v_max, v_max)
        particles.append(Particle(position, velocity, pbest, fitness(pbest)))

    trace = []
    for t in range(pso_cfg.max_iters):
        omega = pso_cfg.omega_at(t)
        for p in particles:
            pbest_update(p, fitness(p.position))
        if on_iteration is not None:
            on_iteration(t, particles)
        if topology.kind == "global":
            scope_best = {None: particles[best_of(topology, particles)].pbest_position}
            scope_of = [None] * len(particles)
        else:
            scope_best = {
                g: particles[best_of(topology, particles, g)].pbest_position
                for g in range(topology.n_neighborhoods)
            }
            scope_of = topology.membership
        trace.append(min(p.pbest_fitness for p in particles))
        for i, p in enumerate(particles):
            phi1 = draw_phi(pso_cfg.ac1, rng, size=k * d)
            phi2 = draw_phi(pso_cfg.ac2, rng, size=k * d)
            p.velocity = velocity_update_gbest(p, scope_best[scope_of[i]], omega, phi1, phi2, v_max)
            p.position, p.velocity = position_update(p, flat_box)

    gbest = best_of(topology, particles, scope=None)
    centroids = particles[gbest].pbest_position.reshape(k, d)
    return _finalize(ds, centroids, trace, started, pso_cfg.seed, cfg)


def psoc_fit(ds: Dataset, cfg: ClusterRunConfig, on_iteration=None, init_positions=None):
    """Global-best PSO over full centroid-set particles."""
    if cfg.algorithm != "psoc":
        raise ValueError("config algorithm must be 'psoc'")
    return _fit_full_solution(ds, cfg, Topology.global_best(), on_iteration, init_positions)


def lpso_fit(ds: Dataset, cfg: ClusterRunConfig, on_iteration=None, init_positions=None):
    """Local-best PSO: like PSOC but the social attractor is the block lbest.

    With a full-swarm neighborhood this reproduces psoc_fit bit for bit under
    the same seed.
    """
    if cfg.algorithm != "lpso":
        raise ValueError("config algorithm must be 'lpso'")
    size = cfg.lpso_neighborhood_size
    if size is None:
        size = max(2, cfg.pso.swarm_size // max(cfg.k, 1))
    if not 2 <= size <= cfg.pso.swarm_size:
        raise ValueError("lpso neighborhood size must be in [2, swarm_size]")
    topology = Topology.neighborhoods(lpso_block_membership(cfg.pso.swarm_size, size))
    return _fit_full_solution(ds, cfg, topology, on_iteration, init_positions)


def _nearest_point_fallback(indices, particles, points) -> int:
    """Among `indices`, the particle whose pbest sits nearest any data point."""
    best_i = None
    best_d = np.inf
    for i in indices:
        d2 = ((points - particles[i].pbest_position) ** 2).sum(axis=1).min()
        if d2 < best_d:
            best_d = d2
            best_i = int(i)
    return best_i


def _lcpso_best_indices(topology, particles, points) -> list[int]:
    picks = []
    for g in range(topology.n_neighborhoods):
        members = topology.members(g)
        if all(np.isinf(particles[i].pbest_fitness) for i in members):
            picks.append(_nearest_point_fallback(members, particles, points))
        else:
            picks.append(best_of(topology, particles, g))
    return picks


def _lcpso_fitness(points, particles, topology) -> np.ndarray:
    """Score each particle against its neighborhood's captured point set.

    Every data point is captured by its nearest particle swarm-wide and
    thereby by that particle's neighborhood; a particle's fitness is the mean
    distance from its own position to all points its neighborhood captured.
    Members of a neighborhood that captured nothing score +inf.
    """
    positions = np.stack([p.position for p in particles])
    d2 = ((points[:, None, :] - positions[None, :, :]) ** 2).sum(axis=2)
    owner = np.argmin(d2, axis=1)
    cluster_of_point = topology.membership[owner]
    fits = np.full(len(particles), np.inf)
    for g in range(topology.n_neighborhoods):
        members = topology.members(g)
        captured = points[cluster_of_point == g]
        if captured.shape[0] == 0:
            continue
        member_pos = positions[members]
        dist = np.sqrt(((captured[:, None, :] - member_pos[None, :, :]) ** 2).sum(axis=2))
        fits[members] = dist.mean(axis=0)
    return fits


def lcpso_fit(ds: Dataset, cfg: ClusterRunConfig, on_iteration=None):
    """Center-of-gravity local PSO: K neighborhoods of single-centroid particles.

    Each neighborhood is responsible for one cluster. Points are captured by
    their nearest particle swarm-wide, which pins down each neighborhood's
    current cluster; members then compete to sit closest to that cluster
    (see _lcpso_fitness). The reported partition assigns points to the K
    neighborhood-best centroids.
    """
    if cfg.algorithm != "lcpso":
        raise ValueError("config algorithm must be 'lcpso'")
    if cfg.pso.swarm_size < cfg.k:
        raise ValueError("lcpso needs swarm_size >= k")
    started = time.perf_counter()
    pso_cfg = cfg.pso
    rng = np.random.default_rng(pso_cfg.seed)
    points = ds.points
    n, d = points.shape
    k = cfg.k

    topology = Topology.neighborhoods(lcpso_membership(pso_cfg.swarm_size, k))
    box = ds.bounding_box()
    v_max = _v_max_per_dim(pso_cfg, box)

    particles = []
    for _ in range(pso_cfg.swarm_size):
        position = points[rng.integers(n)].copy()
        pbest = points[rng.integers(n)].copy()
        velocity = rng.uniform(-v_max, v_max)
        # capture fitness depends on the whole swarm, so pbest starts unscored
        particles.append(Particle(position, velocity, pbest, np.inf))

    trace = []
    for t in range(pso_cfg.max_iters):
        omega = pso_cfg.omega_at(t)
        fits = _lcpso_fitness(points, particles, topology)
        for i, p in enumerate(particles):
            pbest_update(p, fits[i])
        if on_iteration is not None:
            on_iteration(t, particles)
        best_idx = _lcpso_best_indices(topology, particles, points)
        trace.append(min(p.pbest_fitness for p in particles))
        for i, p in enumerate(particles):
            lbest_pos = particles[best_idx[topology.membership[i]]].pbest_position
            phi1 = draw_phi(pso_cfg.ac1, rng, size=d)
            phi2 = draw_phi(pso_cfg.ac2, rng, size=d)
            p.velocity = velocity_update_cog(p, lbest_pos, omega, phi1, phi2, v_max,
                                             variant=pso_cfg.cog_variant)
            p.position, p.velocity = position_update(p, box)

    final_idx = _lcpso_best_indices(topology, particles, points)
    centroids = np.stack([particles[i].pbest_position for i in final_idx])
    return _finalize(ds, centroids, trace, started, pso_cfg.seed, cfg)


def fit(ds: Dataset, cfg: ClusterRunConfig, on_iteration=None):
    """Dispatch to the driver named by cfg.algorithm."""
    driver = {"psoc": psoc_fit, "lpso": lpso_fit, "lcpso": lcpso_fit}[cfg.algorithm]
    return driver(ds, cfg, on_iteration)
