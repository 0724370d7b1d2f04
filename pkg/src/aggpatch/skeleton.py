"""Blow-up skeleton of an open patch: the atomic limit measure at t = 1.

Every interval of the initial union collapses to a single point carrying
the interval's length as mass.  The collapse point of (a_i, b_i) is
a_i + v(a_i); it does not depend on which point of the closed interval is
followed, so the left endpoint is used verbatim.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import DomainError, NearCoincidenceWarning
from .intervals import IntervalUnion, hull, measure

# Atoms closer than this are reported (never merged): exact arithmetic
# guarantees strict separation, so near-coincidence flags roundoff.
COINCIDENCE_THRESHOLD = 1e-12


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite positive combination of point masses, ordered by position."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        for x, c in self.atoms:
            if not c > 0.0:
                raise DomainError(f"atom at {x} has nonpositive mass {c}")
        for (x0, _), (x1, _) in zip(self.atoms, self.atoms[1:]):
            if not x0 < x1:
                raise DomainError(f"atom positions must be strictly increasing: {x0} then {x1}")

    @property
    def positions(self) -> tuple[float, ...]:
        return tuple(x for x, _ in self.atoms)

    @property
    def masses(self) -> tuple[float, ...]:
        return tuple(c for _, c in self.atoms)

    @property
    def total_mass(self) -> float:
        total = 0.0
        for _, c in self.atoms:
            total += c
        return total

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)


def skeleton(support: IntervalUnion) -> AtomicMeasure:
    """Limit measure of the patch on `support` at the blow-up time.

    One atom per interval: position = left endpoint + its velocity, mass =
    interval length.  Positions are strictly increasing for a normalized
    union (consecutive atoms are separated by exactly the gap between the
    source intervals).
    """
    if not support:
        raise DomainError("cannot collapse an empty patch")
    half = 0.5 * measure(support)
    atoms = []
    prefix = 0.0
    for iv in support.intervals:
        atoms.append((iv.left + (half - prefix), iv.length))
        prefix += iv.length
    for (x0, _), (x1, _) in zip(atoms, atoms[1:]):
        if x1 - x0 < COINCIDENCE_THRESHOLD:
            warnings.warn(
                f"atoms at {x0} and {x1} are closer than {COINCIDENCE_THRESHOLD}; "
                "roundoff may have degraded the separation",
                NearCoincidenceWarning,
                stacklevel=2,
            )
    return AtomicMeasure(tuple(atoms))


def skeleton_bounds(support: IntervalUnion) -> tuple[float, float]:
    """Closed interval [a + L, b - L] containing every skeleton atom.

    [a, b] is the hull and 2L the total mass.  Returned as a plain pair:
    the bounds collapse to a single point when the support is one interval.
    """
    h = hull(support)
    half = 0.5 * measure(support)
    return (h.left + half, h.right - half)


def atomic_measure_from_pairs(pairs, sort: bool = True) -> AtomicMeasure:
    """Build an AtomicMeasure from (position, mass) pairs, sorting if asked.

    Duplicate positions are rejected: two atoms at one point are not a
    valid target for the inverse construction.
    """
    items = [(float(x), float(c)) for x, c in pairs]
    if sort:
        items.sort()
    return AtomicMeasure(tuple(items))


def atomic_measure_to_json(mu: AtomicMeasure, bounds: tuple[float, float] | None = None) -> dict:
    doc: dict = {"atoms": [{"x": x, "mass": c} for x, c in mu]}
    if bounds is not None:
        doc["bounds"] = [bounds[0], bounds[1]]
    return doc


def atomic_measure_from_json(data: dict) -> AtomicMeasure:
    return atomic_measure_from_pairs((a["x"], a["mass"]) for a in data["atoms"])
