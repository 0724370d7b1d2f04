"""Velocity field, straight-line characteristics, and patch evolution on [0, 1).

A unit-density patch induces the velocity
    v(x) = (|S right of x| - |S left of x|) / 2,
which is constant along every trajectory, so characteristics are straight
lines x(t) = x0 + v(x0) t. The patch keeps its shape up to an affine
contraction: each material interval shrinks by the factor (1 - t) while
gaps translate rigidly, and the density grows like 1/(1 - t) until every
interval collapses at t = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .intervals import CompactSet, Interval, IntervalUnion, SupportSet, mass_left_of, measure


@dataclass(frozen=True)
class FlowSnapshot:
    """Evolved support at one time, with the uniform density level on it."""

    t: float
    support: SupportSet
    density_level: float


def velocity(support: SupportSet, x: float) -> float:
    """Velocity induced at x by the unit-density patch on `support`.

    Equals +half the total mass left of the set, -half right of it, and is
    nonincreasing and 1-Lipschitz in between.  The two-sided mass formula
    is convention-free: the kernel's value at 0 never enters.
    """
    return 0.5 * measure(support) - mass_left_of(support, x)


def trajectory(support: SupportSet, start: float, t: float) -> float:
    """Position at time t of the particle starting at `start` (t in [0, 1]).

    t = 1 is allowed here: the limit position is finite even though the
    density is not.
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"trajectory time must lie in [0, 1], got {t}")
    return start + velocity(support, start) * t


def snapshot_velocity(snap: FlowSnapshot, x: float) -> float:
    """Velocity field of the evolved patch at time snap.t, evaluated at x."""
    return snap.density_level * velocity(snap.support, x)


def _check_evolve_time(t: float) -> float:
    if not 0.0 <= t < 1.0:
        raise DomainError(f"evolution time must lie in [0, 1), got {t} (density diverges at 1)")
    return 1.0 - t


def evolve(support: SupportSet, t: float) -> FlowSnapshot:
    """Evolved patch at time t < 1.

    Interval unions: each interval's left endpoint follows its trajectory
    and the interval is laid out with its exact contracted length
    (1 - t) * length, which keeps the contraction identity exact in
    floating point.  Compact sets: the hull shrinks symmetrically and each
    gap translates rigidly at its constant velocity.
    """
    one_minus_t = _check_evolve_time(t)
    if isinstance(support, CompactSet):
        return _evolve_compact(support, t, one_minus_t)

    half = 0.5 * measure(support)
    moved = []
    prefix = 0.0
    for iv in support.intervals:
        left = iv.left + (half - prefix) * t
        moved.append(Interval.from_length(left, one_minus_t * iv.length))
        prefix += iv.length
    return FlowSnapshot(t=t, support=IntervalUnion(tuple(moved)), density_level=1.0 / one_minus_t)


def _evolve_compact(support: CompactSet, t: float, one_minus_t: float) -> FlowSnapshot:
    half = 0.5 * measure(support)
    a, b = support.hull.left, support.hull.right
    hull_t = Interval(a + half * t, b - half * t)
    moved = []
    gap_prefix = 0.0
    for gap in support.gaps:
        # material strictly left of the gap: hull part minus earlier gaps
        v = half - ((gap.left - a) - gap_prefix)
        left = gap.left + v * t
        moved.append(Interval.from_length(left, gap.length))
        gap_prefix += gap.length
    return FlowSnapshot(
        t=t,
        support=CompactSet(hull_t, IntervalUnion(tuple(moved))),
        density_level=1.0 / one_minus_t,
    )


def snapshot_to_json(snap: FlowSnapshot) -> dict:
    from .intervals import compact_set_to_json, interval_union_to_json

    if isinstance(snap.support, CompactSet):
        support = compact_set_to_json(snap.support)
    else:
        support = interval_union_to_json(snap.support)
    return {"t": snap.t, "density": snap.density_level, "support": support}
