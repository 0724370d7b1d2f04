"""Compact initial sets whose patch evolution collapses onto a target measure.

Inputs: a compact null target K1 inside its hull [c, d], described by the
enumerable gaps of its complement, and a measure on K1 of total mass 2L
given through a monotone CDF oracle.  Each gap of K1 is assigned the
constant velocity

    v = L - cdf(gap midpoint),

and the initial compact set is [c - L, d + L] minus the gaps translated
backwards by their velocities.  Gap lengths are preserved; under the patch
flow the gaps drift back to their target positions while the material
between them contracts onto K1, carrying exactly the prescribed mass.

Enumeration is finite: the gaps of depth > `depth` stay unresolved, which
leaves the constructed set heavier than 2L by the reported residual
length.  The limit map is evaluated exactly on every enumerated gap and by
monotone interpolation across unresolved blocks, and the pushforward CDF
normalizes the initial mass to 2L, so both are certified to one unresolved
cell of mass.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable

from .errors import DomainError, VerificationError
from .intervals import CompactSet, Interval, IntervalUnion, mass_left_of, measure, normalize

BISECTION_TOL = 1e-12


@dataclass(frozen=True)
class CDFMeasure:
    """Measure on a compact hull given by a monotone CDF oracle.

    `cdf(x)` returns the mass of (-inf, x]; it must be 0 left of the hull,
    `total_mass` at its right end, and constant across every gap of the
    support.  `resolution_depth` records how many construction levels the
    oracle resolves; the mass of one unresolved cell bounds its error.
    """

    hull: Interval
    total_mass: float
    cdf: Callable[[float], float]
    resolution_depth: int

    def __post_init__(self):
        if not self.total_mass > 0.0:
            raise DomainError(f"total mass must be positive, got {self.total_mass}")

    def mass_left(self, x: float) -> float:
        if x <= self.hull.left:
            return 0.0
        if x >= self.hull.right:
            return self.total_mass
        return self.cdf(x)


def gap_velocity(mu: CDFMeasure, gap: Interval) -> float:
    """Constant velocity assigned to one gap of the target's complement.

    Half the mass difference across the gap midpoint: L - cdf(midpoint).
    The midpoint lies in a gap of the support, so the CDF value there is
    unambiguous (no mass sits at the split point).
    """
    if not (mu.hull.left < gap.left and gap.right < mu.hull.right):
        raise DomainError(
            f"gap ({gap.left}, {gap.right}) is not inside the hull "
            f"({mu.hull.left}, {mu.hull.right})"
        )
    return 0.5 * mu.total_mass - mu.cdf(gap.midpoint)


@dataclass(frozen=True)
class CompactConstruction:
    """Constructed initial set together with the exact gap pairing.

    `initial_set` is the artifact; the parallel gap arrays keep the exact
    correspondence (moved gap, source gap, velocity) that defines the
    limit map even when touching moved gaps merge inside the CompactSet.
    """

    initial_set: CompactSet
    target_measure: CDFMeasure
    source_gaps: tuple[Interval, ...]
    moved_gaps: tuple[Interval, ...]
    velocities: tuple[float, ...]
    residual_length: float
    resolution_mass: float

    @property
    def target_hull(self) -> Interval:
        return self.target_measure.hull

    @property
    def total_mass(self) -> float:
        return self.target_measure.total_mass

    @cached_property
    def _nodes(self) -> tuple[tuple[float, ...], tuple[float, ...]]:
        # Monotone piecewise-linear node list for the limit map: hull ends
        # anchor to the target hull, every moved gap maps onto its source
        # gap with slope exactly 1, and unresolved blocks interpolate.
        a, b = self.initial_set.hull.left, self.initial_set.hull.right
        c, d = self.target_hull.left, self.target_hull.right
        xs: list[float] = [a]
        ys: list[float] = [c]
        for moved, src in zip(self.moved_gaps, self.source_gaps):
            xs.extend((moved.left, moved.right))
            ys.extend((src.left, src.right))
        xs.append(b)
        ys.append(d)
        return tuple(xs), tuple(ys)

    def limit_map(self, x: float) -> float:
        """Blow-up limit position of the particle starting at x.

        Continuous, nondecreasing, maps the initial hull [a, b] onto the
        target hull [c, d]; outside [a, b] it translates by +/- L.
        """
        xs, ys = self._nodes
        if x <= xs[0]:
            return ys[0] + (x - xs[0])
        if x >= xs[-1]:
            return ys[-1] + (x - xs[-1])
        i = bisect_right(xs, x)
        x0, x1 = xs[i - 1], xs[i]
        y0, y1 = ys[i - 1], ys[i]
        if x1 == x0:
            return y1
        return y0 + (x - x0) * ((y1 - y0) / (x1 - x0))

    def fiber(self, y: float, tol: float = BISECTION_TOL) -> tuple[float, float]:
        """Bisection brackets [x-, x+] of the preimage of y under the limit map.

        x- is the leftmost and x+ the rightmost point mapping to y (within
        `tol` in coordinate); outside the target hull the preimage is the
        single point of the translation branches.
        """
        xs, _ = self._nodes
        a, b = xs[0], xs[-1]
        c, d = self.target_hull.left, self.target_hull.right
        if y < c:
            x = a + (y - c)
            return (x, x)
        if y > d:
            x = b + (y - d)
            return (x, x)
        # rightmost point with value <= y
        lo, hi = a, b
        if self.limit_map(b) <= y:
            x_plus = b
        else:
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if self.limit_map(mid) <= y:
                    lo = mid
                else:
                    hi = mid
            x_plus = lo
        # leftmost point with value >= y
        lo, hi = a, b
        if self.limit_map(a) >= y:
            x_minus = a
        else:
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if self.limit_map(mid) >= y:
                    hi = mid
                else:
                    lo = mid
            x_minus = hi
        return (x_minus, x_plus)

    def pushforward_cdf(self, y: float, tol: float = BISECTION_TOL) -> float:
        """Mass of (-inf, y] for the image of the initial patch under the limit map.

        The initial measure is the length measure on the constructed set
        normalized to the target total 2L, compensating the reported
        truncation residual; for the self-similar generators the
        normalization distributes the residual exactly cell by cell.
        """
        _, x_plus = self.fiber(y, tol)
        k0 = self.initial_set
        if x_plus <= k0.hull.left:
            return 0.0
        if x_plus >= k0.hull.right:
            return self.total_mass
        scale = self.total_mass / measure(k0)
        return scale * mass_left_of(k0, x_plus)

    def verification_tolerance(self, bisection_slack: float = 1e-9) -> float:
        return self.resolution_mass + bisection_slack

    def to_json(self) -> dict:
        from .intervals import compact_set_to_json

        return {
            "initial_set": compact_set_to_json(self.initial_set),
            "target_hull": [self.target_hull.left, self.target_hull.right],
            "total_mass": self.total_mass,
            "gaps": [
                {
                    "source": [s.left, s.right],
                    "moved": [m.left, m.right],
                    "velocity": v,
                }
                for s, m, v in zip(self.source_gaps, self.moved_gaps, self.velocities)
            ],
            "residual_length": self.residual_length,
            "resolution_mass": self.resolution_mass,
        }


def inverse_compact_from_gaps(
    gaps: Iterable[Interval],
    mu: CDFMeasure,
    resolution_mass: float | None = None,
) -> CompactConstruction:
    """Run the construction on an explicit sorted gap enumeration."""
    source = tuple(sorted(gaps))
    for prev, nxt in zip(source, source[1:]):
        if not prev.right <= nxt.left:
            raise DomainError("target gaps must be pairwise disjoint")
    velocities = tuple(gap_velocity(mu, g) for g in source)
    moved: list[Interval] = []
    for g, v in zip(source, velocities):
        left = g.left - v
        moved.append(Interval.from_length(left, g.length))
    for prev, nxt in zip(moved, moved[1:]):
        if prev.right > nxt.left:
            raise DomainError(
                "translated gaps overlap; the CDF is not monotone on the gap enumeration"
            )
    half = 0.5 * mu.total_mass
    c, d = mu.hull.left, mu.hull.right
    hull0 = Interval(c - half, d + half)
    gap_total = 0.0
    for g in source:
        gap_total += g.length
    residual = mu.hull.length - gap_total
    if resolution_mass is None:
        resolution_mass = mu.total_mass * 0.5 ** mu.resolution_depth
    initial = CompactSet(hull0, normalize(moved) if moved else IntervalUnion())
    return CompactConstruction(
        initial_set=initial,
        target_measure=mu,
        source_gaps=source,
        moved_gaps=tuple(moved),
        velocities=velocities,
        residual_length=residual,
        resolution_mass=resolution_mass,
    )


def inverse_compact(generator, mu: CDFMeasure, depth: int) -> CompactConstruction:
    """Run the construction on a gap generator truncated at `depth` levels.

    The generator's hull must coincide with the measure's hull.  The mass
    of one unresolved cell (generator mass split at `depth`) certifies the
    pushforward verification tolerance.
    """
    if generator.hull != mu.hull:
        raise DomainError(
            f"generator hull ({generator.hull.left}, {generator.hull.right}) does not "
            f"match measure hull ({mu.hull.left}, {mu.hull.right})"
        )
    if depth < 0:
        raise DomainError(f"depth must be nonnegative, got {depth}")
    gaps = generator.gaps(depth)
    resolution_mass = generator.cell_mass(depth, mu.total_mass)
    return inverse_compact_from_gaps(gaps, mu, resolution_mass=resolution_mass)


def limit_map(construction: CompactConstruction, x: float) -> float:
    return construction.limit_map(x)


def fiber(construction: CompactConstruction, y: float,
          tol: float = BISECTION_TOL) -> tuple[float, float]:
    return construction.fiber(y, tol)


def pushforward_cdf(construction: CompactConstruction, y: float,
                    tol: float = BISECTION_TOL) -> float:
    return construction.pushforward_cdf(y, tol)


@dataclass(frozen=True)
class PushforwardReport:
    """Pushforward-versus-target comparison at the retained gap endpoints."""

    rows: tuple[tuple[float, float, float, float], ...]  # (y, pushforward, target, error)
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance

    def to_json(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "max_error": self.max_error,
            "passed": self.passed,
            "rows": [
                {"y": y, "pushforward": p, "target": t, "error": e}
                for y, p, t, e in self.rows
            ],
        }


def verify_pushforward(construction: CompactConstruction,
                       bisection_slack: float = 1e-9,
                       raise_on_failure: bool = False) -> PushforwardReport:
    """Compare the pushforward CDF with the target CDF at every retained gap endpoint.

    The certified tolerance is the mass of one unresolved cell plus the
    bisection slack.
    """
    mu = construction.target_measure
    rows = []
    max_error = 0.0
    for g in construction.source_gaps:
        for y in (g.left, g.right):
            push = construction.pushforward_cdf(y)
            target = mu.mass_left(y)
            err = abs(push - target)
            rows.append((y, push, target, err))
            if err > max_error:
                max_error = err
    report = PushforwardReport(tuple(rows), max_error,
                               construction.verification_tolerance(bisection_slack))
    if raise_on_failure and not report.passed:
        raise VerificationError(
            f"pushforward mismatch {report.max_error:.3e} exceeds tolerance "
            f"{report.tolerance:.3e}"
        )
    return report
