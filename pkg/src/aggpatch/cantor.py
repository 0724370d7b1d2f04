"""Middle-alpha Cantor sets: gap enumeration and the devil's-staircase CDF.

The middle-alpha construction removes the central fraction `middle` of
every surviving cell.  Its natural measure splits mass evenly between the
two child cells, so the CDF is the classical devil's staircase (exactly
the base-3 to base-2 digit map when middle = 1/3).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .intervals import Interval


def staircase(u: float, middle: float = 1.0 / 3.0, max_depth: int = 64) -> float:
    """Devil's-staircase CDF on [0, 1] of the middle-`middle` Cantor measure.

    Resolves `max_depth` construction levels; the value is exact once the
    argument falls in a gap, and otherwise determined within 2**-max_depth
    (the mass of the unresolved cell).
    """
    if not 0.0 < middle < 1.0:
        raise DomainError(f"middle fraction must lie in (0, 1), got {middle}")
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return 1.0
    side = 0.5 * (1.0 - middle)
    acc = 0.0
    weight = 1.0
    for _ in range(max_depth):
        if u < side:
            u /= side
            weight *= 0.5
        elif u > 1.0 - side:
            u = (u - (1.0 - side)) / side
            acc += 0.5 * weight
            weight *= 0.5
        else:
            return acc + 0.5 * weight
        if u <= 0.0:
            return acc
        if u >= 1.0:
            return acc + weight
    return acc + 0.5 * weight


@dataclass(frozen=True)
class CantorGapGenerator:
    """Enumerates the gaps of a middle-`middle` Cantor set by depth."""

    middle: float = 1.0 / 3.0
    hull: Interval = Interval(0.0, 1.0)

    def __post_init__(self):
        if not 0.0 < self.middle < 1.0:
            raise DomainError(f"middle fraction must lie in (0, 1), got {self.middle}")

    @property
    def side(self) -> float:
        return 0.5 * (1.0 - self.middle)

    def gaps(self, depth: int) -> tuple[Interval, ...]:
        """All gaps created in the first `depth` subdivision levels, sorted."""
        if depth < 0:
            raise DomainError(f"depth must be nonnegative, got {depth}")
        out: list[Interval] = []
        side = self.side

        def descend(lo: float, hi: float, level: int) -> None:
            if level > depth:
                return
            width = hi - lo
            gap_left = lo + side * width
            gap_right = hi - side * width
            descend(lo, gap_left, level + 1)
            out.append(Interval(gap_left, gap_right))
            descend(gap_right, hi, level + 1)

        descend(self.hull.left, self.hull.right, 1)
        return tuple(out)

    def residual_length(self, depth: int) -> float:
        """Total length of the gaps not yet enumerated at this depth."""
        return self.hull.length * (2.0 * self.side) ** depth

    def cell_width(self, depth: int) -> float:
        """Width of one unresolved cell at this depth."""
        return self.hull.length * self.side ** depth

    def cell_mass(self, depth: int, total_mass: float) -> float:
        """Measure carried by one unresolved cell at this depth."""
        return total_mass * 0.5 ** depth

    def box_dimension(self) -> float:
        """Similarity dimension log 2 / log(1/side)."""
        import math

        return math.log(2.0) / math.log(1.0 / self.side)

    def natural_measure(self, total_mass: float, resolution_depth: int = 60):
        """The self-similar measure on this set as a CDF oracle."""
        from .inverse_compact import CDFMeasure

        lo, width = self.hull.left, self.hull.length
        middle = self.middle

        def cdf(x: float) -> float:
            return total_mass * staircase((x - lo) / width, middle, resolution_depth)

        return CDFMeasure(
            hull=self.hull,
            total_mass=total_mass,
            cdf=cdf,
            resolution_depth=resolution_depth,
        )
