"""Generic PSO state and update rules, parameterized by topology and velocity rule.

A swarm instance is mutated by a single logical thread; distinct swarms own
their RNG and may run concurrently.
"""

from dataclasses import dataclass, field

import numpy as np

from .data import BoundingBox

COG_AS_PRINTED = "as-printed"
COG_MEAN_ATTRACTOR = "mean-attractor"


@dataclass
class PsoConfig:
    """Swarm hyperparameters.

    `omega` is either a constant or a (start, end) pair swept linearly over
    the iterations (defaults to the 0.9 -> 0.4 decreasing schedule).
    `v_max` is an optional symmetric per-dimension velocity clamp; when None
    the drivers clamp at half the search-box extent per dimension.
    """

    swarm_size: int = 30
    omega: float | tuple[float, float] = (0.9, 0.4)
    ac1: float = 1.49
    ac2: float = 1.49
    max_iters: int = 200
    v_max: float | None = None
    seed: int = 0
    # the printed center-of-gravity rule stalls in practice (its second
    # attractor points at the pbest/lbest difference vector), so runs
    # default to the mean-attractor form; set "as-printed" to compare
    cog_variant: str = COG_MEAN_ATTRACTOR

    def __post_init__(self):
        # swarm_size 1 is a degenerate but runnable configuration (the social
        # attractor collapses onto the particle's own pbest)
        if self.swarm_size < 1:
            raise ValueError("swarm_size must be >= 1")
        if self.ac1 < 0 or self.ac2 < 0:
            raise ValueError("acceleration coefficients must be >= 0")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.v_max is not None and self.v_max <= 0:
            raise ValueError("v_max must be positive when set")
        if isinstance(self.omega, (tuple, list)):
            if len(self.omega) != 2:
                raise ValueError("omega schedule must be a (start, end) pair")
            self.omega = (float(self.omega[0]), float(self.omega[1]))
        else:
            self.omega = float(self.omega)
        if self.cog_variant not in (COG_AS_PRINTED, COG_MEAN_ATTRACTOR):
            raise ValueError(f"unknown cog_variant: {self.cog_variant!r}")

    def omega_at(self, t: int) -> float:
        """Inertia weight at iteration t (0-based)."""
        if isinstance(self.omega, float):
            return self.omega
        start, end = self.omega
        if self.max_iters == 1:
            return start
        return start + (end - start) * t / (self.max_iters - 1)


@dataclass
class Particle:
    position: np.ndarray
    velocity: np.ndarray
    pbest_position: np.ndarray
    pbest_fitness: float

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float)
        self.velocity = np.asarray(self.velocity, dtype=float)
        self.pbest_position = np.asarray(self.pbest_position, dtype=float)
        if not (self.position.shape == self.velocity.shape == self.pbest_position.shape):
            raise ValueError("position, velocity and pbest_position must share one length")


@dataclass
class Topology:
    """Best-particle scoping: one global swarm or static neighborhoods.

    For the neighborhoods kind, `membership[i]` is the neighborhood id of
    particle i; ids must be 0..n_neighborhoods-1.
    """

    kind: str
    membership: np.ndarray | None = None
    _groups: list = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.kind == "global":
            if self.membership is not None:
                raise ValueError("global topology takes no membership vector")
        elif self.kind == "neighborhoods":
            self.membership = np.asarray(self.membership, dtype=int)
            if self.membership.ndim != 1 or self.membership.size < 1:
                raise ValueError("membership must be a length-swarm_size vector")
            ids = np.unique(self.membership)
            if ids[0] != 0 or ids[-1] != ids.size - 1:
                raise ValueError("neighborhood ids must be contiguous from 0")
        else:
            raise ValueError(f"unknown topology kind: {self.kind!r}")

    @classmethod
    def global_best(cls) -> "Topology":
        return cls("global")

    @classmethod
    def neighborhoods(cls, membership) -> "Topology":
        return cls("neighborhoods", membership)

    @property
    def n_neighborhoods(self) -> int:
        if self.kind == "global":
            return 1
        return int(self.membership.max()) + 1

    def members(self, g: int) -> np.ndarray:
        """Particle indices of neighborhood g (ascending)."""
        if self._groups is None:
            if self.kind == "global":
                raise ValueError("global topology has no neighborhoods")
            self._groups = [np.flatnonzero(self.membership == i) for i in range(self.n_neighborhoods)]
        return self._groups[g]


def open_unit(rng: np.random.Generator, size=None):
    """Uniform draw on the open interval (0, 1)."""
    u = rng.random(size)
    # random() lives in [0, 1); nudge exact zeros off the boundary
    if size is None:
        while u == 0.0:
            u = rng.random()
        return u
    mask = u == 0.0
    while np.any(mask):
        u[mask] = rng.random(int(mask.sum()))
        mask = u == 0.0
    return u


def draw_phi(ac: float, rng: np.random.Generator, size=None):
    """Acceleration draw rnd*ac with rnd uniform on (0, 1).

    Call with `size` to draw one value per dimension; a fresh draw is taken
    per particle per dimension per iteration.
    """
    if ac < 0:
        raise ValueError("ac must be >= 0")
    return open_unit(rng, size) * ac


def clamp_velocity(velocity: np.ndarray, v_max) -> np.ndarray:
    """Clip each component to [-v_max, v_max]; v_max may be scalar or per-dim."""
    if v_max is None:
        return velocity
    return np.clip(velocity, -np.asarray(v_max, dtype=float), np.asarray(v_max, dtype=float))


def velocity_update_gbest(p: Particle, gbest_pos: np.ndarray, omega, phi1, phi2, v_max=None) -> np.ndarray:
    """Inertia + cognitive pull to pbest + social pull to the swarm best."""
    v = omega * p.velocity + phi1 * (p.pbest_position - p.position) + phi2 * (gbest_pos - p.position)
    return clamp_velocity(v, v_max)


def velocity_update_cog(p: Particle, lbest_pos: np.ndarray, omega, phi1, phi2, v_max=None,
                        variant: str = COG_AS_PRINTED) -> np.ndarray:
    """Center-of-gravity velocity rule used by the LCPSO driver.

    The default form attracts toward (pbest+lbest)/2 and (pbest-lbest)/2.
    The "mean-attractor" variant replaces the second attractor with lbest
    itself, for sensitivity comparison.
    """
    mid = 0.5 * (p.pbest_position + lbest_pos)
    if variant == COG_AS_PRINTED:
        second = 0.5 * (p.pbest_position - lbest_pos)
    elif variant == COG_MEAN_ATTRACTOR:
        second = lbest_pos
    else:
        raise ValueError(f"unknown cog variant: {variant!r}")
    v = omega * p.velocity + phi1 * (mid - p.position) + phi2 * (second - p.position)
    return clamp_velocity(v, v_max)


def reflect(position: np.ndarray, velocity: np.ndarray, box: BoundingBox) -> tuple[np.ndarray, np.ndarray]:
    """Fold a position into the box, reflecting at the violated bounds.

    Each crossing mirrors the overshoot back inside and flips the sign of
    that velocity component; an even number of crossings restores the sign.
    Degenerate dimensions (zero extent) pin to the bound with zero velocity.
    """
    lo, hi = box.min, box.max
    span = hi - lo
    position = np.asarray(position, dtype=float)
    velocity = np.array(velocity, dtype=float)

    degenerate = span == 0
    safe_span = np.where(degenerate, 1.0, span)
    offset = position - lo
    k = np.floor(offset / safe_span)
    frac = offset - k * safe_span
    odd = (k.astype(np.int64) % 2) != 0
    folded = lo + np.where(odd, safe_span - frac, frac)
    flipped = np.where(odd, -velocity, velocity)

    folded = np.where(degenerate, lo, folded)
    flipped = np.where(degenerate, 0.0, flipped)
    # components already inside the box pass through bit-exact
    inside = (position >= lo) & (position <= hi)
    return np.where(inside, position, folded), np.where(inside, velocity, flipped)


def position_update(p: Particle, box: BoundingBox) -> tuple[np.ndarray, np.ndarray]:
    """New position x + v, reflected into the search box.

    Returns (position, velocity); the velocity comes back sign-flipped in the
    components where a reflection occurred.
    """
    return reflect(p.position + p.velocity, p.velocity, box)


def pbest_update(p: Particle, new_fitness: float) -> Particle:
    """Adopt the current position as pbest when strictly better (minimization).

    Ties keep the previous personal best.
    """
    if new_fitness < p.pbest_fitness:
        p.pbest_position = p.position.copy()
        p.pbest_fitness = float(new_fitness)
    return p


def best_of(topology: Topology, particles: list[Particle], scope=None) -> int:
    """Index of the minimum pbest_fitness within scope; ties break low.

    `scope` is a neighborhood id for a neighborhoods topology, or None /
    "global" for the whole swarm.
    """
    if scope is None or scope == "global" or topology.kind == "global":
        indices = np.arange(len(particles))
    else:
        indices = topology.members(int(scope))
    fits = np.array([particles[i].pbest_fitness for i in indices])
    return int(indices[np.argmin(fits)])
