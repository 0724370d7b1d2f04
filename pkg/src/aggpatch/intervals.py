"""Finite unions of disjoint open intervals and compact hull-minus-gaps sets.

Every set handled by the package is one of two shapes: a finite union of
disjoint open intervals, or a compact set written as a closed hull with a
union of open gaps removed from its interior.  Construction normalizes the
representative: overlapping or touching intervals merge, so (0,1) u (1,2)
is stored as (0,2).  Endpoint comparisons are exact floating point; callers
must not rely on near-touching intervals being merged.

All types are immutable and all operations are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import DomainError


@dataclass(frozen=True, order=True)
class Interval:
    """Nonempty bounded open interval (left, right).

    An interval built by `from_length` also stores its exact width: a
    contracted width like (1 - t) * length is generally not recoverable
    from two endpoint floats once t is close to 1, and the conservation
    identities downstream need it verbatim.
    """

    left: float
    right: float
    stored_length: float | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.left) and math.isfinite(self.right)):
            raise DomainError(f"interval endpoints must be finite, got ({self.left}, {self.right})")
        if not self.left < self.right:
            raise DomainError(f"empty or degenerate interval ({self.left}, {self.right})")
        if self.stored_length is not None and not self.stored_length > 0.0:
            raise DomainError(f"interval length must be positive, got {self.stored_length}")

    @classmethod
    def from_length(cls, left: float, length: float) -> "Interval":
        """Interval [left, left + length) carrying the exact width."""
        return cls(left, left + length, length)

    @property
    def length(self) -> float:
        if self.stored_length is not None:
            return self.stored_length
        return self.right - self.left

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.left + self.right)

    def __contains__(self, x: float) -> bool:
        return self.left < x < self.right


RawInterval = Union[Interval, Sequence[float]]


def _coerce(item: RawInterval) -> Interval:
    if isinstance(item, Interval):
        return item
    left, right = item
    return Interval(float(left), float(right))


@dataclass(frozen=True)
class IntervalUnion:
    """Ordered union of disjoint open intervals with positive gaps between them."""

    intervals: tuple[Interval, ...] = ()

    def __post_init__(self):
        for prev, nxt in zip(self.intervals, self.intervals[1:]):
            if not prev.right < nxt.left:
                raise DomainError(
                    f"intervals must be separated by positive gaps: "
                    f"({prev.left}, {prev.right}) then ({nxt.left}, {nxt.right})"
                )

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)


@dataclass(frozen=True)
class CompactSet:
    """Closed hull [a, b] minus an open union of gaps strictly inside (a, b)."""

    hull: Interval
    gaps: IntervalUnion = field(default_factory=IntervalUnion)

    def __post_init__(self):
        for gap in self.gaps:
            if not (self.hull.left < gap.left and gap.right < self.hull.right):
                raise DomainError(
                    f"gap ({gap.left}, {gap.right}) not strictly inside hull "
                    f"[{self.hull.left}, {self.hull.right}]"
                )

    def blocks(self) -> tuple[tuple[float, float], ...]:
        """Maximal closed material intervals, left to right."""
        out = []
        cursor = self.hull.left
        for gap in self.gaps:
            out.append((cursor, gap.left))
            cursor = gap.right
        out.append((cursor, self.hull.right))
        return tuple(out)


SupportSet = Union[IntervalUnion, CompactSet]


def normalize(raw: Iterable[RawInterval]) -> IntervalUnion:
    """Sort intervals and merge overlapping or touching ones.

    Rejects any item with left >= right.  The result satisfies the
    IntervalUnion invariants and covers the same point set (up to the
    merged shared endpoints, which carry no length).
    """
    items = sorted(_coerce(item) for item in raw)
    if not items:
        return IntervalUnion()
    merged: list[list[float]] = [[items[0].left, items[0].right]]
    for iv in items[1:]:
        if iv.left <= merged[-1][1]:
            if iv.right > merged[-1][1]:
                merged[-1][1] = iv.right
        else:
            merged.append([iv.left, iv.right])
    return IntervalUnion(tuple(Interval(a, b) for a, b in merged))


def measure(s: SupportSet) -> float:
    """Total length of the set; 0 for the empty union."""
    if isinstance(s, CompactSet):
        return s.hull.length - measure(s.gaps)
    total = 0.0
    for iv in s.intervals:
        total += iv.length
    return total


def mass_left_of(s: SupportSet, x: float) -> float:
    """Length of the part of the set strictly left of x.

    Nondecreasing in x; equals measure(s) once x passes the right end.
    Computed with the same summation order as measure() so the two agree
    bit for bit at the right end of the hull.
    """
    if isinstance(s, CompactSet):
        a, b = s.hull.left, s.hull.right
        if x <= a:
            return 0.0
        return (min(x, b) - a) - mass_left_of(s.gaps, x)
    total = 0.0
    for iv in s.intervals:
        if x <= iv.left:
            break
        total += (min(x, iv.right) - iv.left) if x < iv.right else iv.length
    return total


def hull(s: SupportSet) -> Interval:
    """Smallest closed interval containing the set (as an Interval pair)."""
    if isinstance(s, CompactSet):
        return s.hull
    if not s.intervals:
        raise DomainError("the empty union has no hull")
    return Interval(s.intervals[0].left, s.intervals[-1].right)


@dataclass(frozen=True)
class TruncationResult:
    """Outcome of trimming a union to a finite storage budget."""

    union: IntervalUnion
    dropped_mass: float
    dropped_count: int

    def report(self) -> dict:
        return {"dropped_mass": self.dropped_mass, "dropped_count": self.dropped_count}


def truncate(u: IntervalUnion, max_intervals: int | None = None,
             min_length: float = 0.0) -> TruncationResult:
    """Drop intervals shorter than min_length, then keep the longest max_intervals.

    The dropped total length is reported, not silently discarded; downstream
    results computed from the truncated union carry that mass defect.
    """
    kept = [iv for iv in u if iv.length >= min_length]
    if max_intervals is not None and len(kept) > max_intervals:
        by_size = sorted(kept, key=lambda iv: (-iv.length, iv.left))
        kept = sorted(by_size[:max_intervals])
    dropped = [iv for iv in u if iv not in set(kept)]
    dropped_mass = 0.0
    for iv in dropped:
        dropped_mass += iv.length
    return TruncationResult(IntervalUnion(tuple(kept)), dropped_mass, len(dropped))


def interval_union_to_json(u: IntervalUnion) -> list[list[float]]:
    return [[iv.left, iv.right] for iv in u]


def interval_union_from_json(data: Iterable[Sequence[float]]) -> IntervalUnion:
    return normalize(data)


def compact_set_to_json(k: CompactSet) -> dict:
    return {"hull": [k.hull.left, k.hull.right], "gaps": interval_union_to_json(k.gaps)}


def compact_set_from_json(data: dict) -> CompactSet:
    a, b = data["hull"]
    return CompactSet(Interval(float(a), float(b)), normalize(data.get("gaps", [])))
