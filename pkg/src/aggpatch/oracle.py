"""Independent particle discretization of the patch dynamics.

The patch is sampled by N equal-mass particles at cell midpoints; each
particle feels half the weight difference between the particles to its
right and to its left (ties exert no force).  Velocities stay constant
while the order is preserved, so exact trajectories are straight lines and
any time stepper reproduces them; the integrator is kept as a check
against that very property.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CollisionError, DomainError
from .intervals import IntervalUnion, measure
from .skeleton import AtomicMeasure


@dataclass
class ParticleSystem:
    """Equal-weight particles, nondecreasing positions at construction."""

    positions: np.ndarray
    weight: float

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float)
        if self.positions.ndim != 1 or self.positions.size == 0:
            raise DomainError("a particle system needs a 1-d nonempty position array")
        if np.any(np.diff(self.positions) < 0):
            raise DomainError("initial positions must be nondecreasing")

    @property
    def count(self) -> int:
        return int(self.positions.size)

    @property
    def total_mass(self) -> float:
        return self.weight * self.count


def discretize(support: IntervalUnion, n: int) -> ParticleSystem:
    """Midpoint sampling: n cells allocated to intervals by largest remainder."""
    if n < 1:
        raise DomainError(f"particle count must be at least 1, got {n}")
    if not support:
        raise DomainError("cannot discretize an empty patch")
    total = measure(support)
    lengths = [iv.length for iv in support]
    quotas = [n * length / total for length in lengths]
    counts = [int(q) for q in quotas]
    shortfall = n - sum(counts)
    by_fraction = sorted(range(len(quotas)), key=lambda i: (counts[i] - quotas[i], i))
    for i in by_fraction[:shortfall]:
        counts[i] += 1
    positions = []
    for iv, ni in zip(support, counts):
        if ni == 0:
            continue
        width = iv.length / ni
        positions.extend(iv.left + (j + 0.5) * width for j in range(ni))
    return ParticleSystem(np.array(positions, dtype=float), weight=total / n)


def particle_velocities(positions: np.ndarray, weight: float) -> np.ndarray:
    """Velocity of every particle: (weight/2) * (#right - #left), ties neutral."""
    x = np.asarray(positions, dtype=float)
    order = np.sort(x)
    left = np.searchsorted(order, x, side="left")
    right = np.searchsorted(order, x, side="right")
    n = x.size
    return (0.5 * weight) * ((n - right) - left)


def particle_velocity(system: ParticleSystem, k: int) -> float:
    """Velocity of particle k in the current configuration."""
    if not 0 <= k < system.count:
        raise DomainError(f"particle index {k} out of range [0, {system.count})")
    return float(particle_velocities(system.positions, system.weight)[k])


def total_momentum(system: ParticleSystem) -> float:
    """weight * sum of velocities; vanishes by the antisymmetry of the forces."""
    v = particle_velocities(system.positions, system.weight)
    return system.weight * float(np.sum(v))


@dataclass
class IntegrationResult:
    """Sampled trajectories: times and the matching position table."""

    times: np.ndarray
    positions: np.ndarray
    weight: float
    steps: int

    @property
    def final_positions(self) -> np.ndarray:
        return self.positions[-1]


def integrate(system: ParticleSystem, dt: float | None, t_final: float,
              scheme: str = "rk4", store_every: int = 1) -> IntegrationResult:
    """Advance the particle system to t_final < 1.

    dt defaults to (1 - t_final) / 100; trajectories are exactly linear
    between order changes, so any stable step size gives the same answer.
    An order violation within a step aborts with the step index: the
    continuum flow never crosses before t = 1, so a crossing flags a
    discretization artifact (reduce t_final or refine).  Positions are
    recorded every `store_every` steps (the initial and final states
    always), which caps memory on long runs.
    """
    if not 0.0 <= t_final < 1.0:
        raise DomainError(f"final time must lie in [0, 1), got {t_final}")
    if dt is None:
        dt = (1.0 - t_final) / 100.0
    if not dt > 0.0:
        raise DomainError(f"step size must be positive, got {dt}")
    if scheme not in ("euler", "rk4"):
        raise DomainError(f"unknown scheme {scheme!r}; use 'euler' or 'rk4'")
    if store_every < 1:
        raise DomainError(f"store_every must be at least 1, got {store_every}")

    w = system.weight
    x = system.positions.copy()
    times = [0.0]
    table = [x.copy()]
    t = 0.0
    step = 0
    while t < t_final - 1e-15:
        h = min(dt, t_final - t)
        if scheme == "euler":
            x_new = x + h * particle_velocities(x, w)
        else:
            k1 = particle_velocities(x, w)
            k2 = particle_velocities(x + 0.5 * h * k1, w)
            k3 = particle_velocities(x + 0.5 * h * k2, w)
            k4 = particle_velocities(x + h * k3, w)
            x_new = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if np.any(np.diff(x_new) < 0):
            raise CollisionError(step)
        x = x_new
        t += h
        step += 1
        if step % store_every == 0 or t >= t_final - 1e-15:
            times.append(t)
            table.append(x.copy())
    return IntegrationResult(np.array(times), np.array(table), weight=w, steps=step)


def cluster(positions: np.ndarray, weight: float, tol: float) -> AtomicMeasure:
    """Greedy left-to-right grouping of positions within tol into atoms.

    A new group starts whenever the gap to the previous position exceeds
    tol; each atom sits at the group mean with mass weight * group size.
    """
    if not tol > 0.0:
        raise DomainError(f"cluster tolerance must be positive, got {tol}")
    x = np.sort(np.asarray(positions, dtype=float))
    if x.size == 0:
        raise DomainError("cannot cluster an empty position set")
    atoms = []
    start = 0
    for i in range(1, x.size + 1):
        if i == x.size or x[i] - x[i - 1] > tol:
            group = x[start:i]
            atoms.append((float(group.mean()), weight * group.size))
            start = i
    return AtomicMeasure(tuple(atoms))
