"""Polynomial test-function pairings and weak-convergence error reporting.

Test functions are polynomials of degree at most 8 so every pairing with a
patch snapshot is an exact antiderivative evaluation; no quadrature error
enters the convergence tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .flow import FlowSnapshot, evolve
from .intervals import CompactSet, IntervalUnion, hull, measure
from .skeleton import AtomicMeasure, skeleton

MAX_DEGREE = 8
LIPSCHITZ_SAMPLES = 10_000


@dataclass(frozen=True)
class PolynomialTestFunction:
    """Univariate polynomial in ascending-power coefficients, degree <= 8."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        if len(self.coefficients) > MAX_DEGREE + 1:
            raise DomainError(
                f"degree {len(self.coefficients) - 1} exceeds the cap {MAX_DEGREE}"
            )
        for c in self.coefficients:
            if not math.isfinite(c):
                raise DomainError(f"non-finite coefficient {c}")

    def __call__(self, x: float) -> float:
        value = 0.0
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def derivative(self) -> "PolynomialTestFunction":
        coeffs = tuple(k * c for k, c in enumerate(self.coefficients) if k >= 1)
        return PolynomialTestFunction(coeffs or (0.0,))

    def shifted(self, center: float) -> "PolynomialTestFunction":
        """Coefficients of x -> f(center + x), by repeated synthetic division."""
        work = list(self.coefficients)
        out = []
        for _ in range(len(work)):
            for i in range(len(work) - 2, -1, -1):
                work[i] += center * work[i + 1]
            out.append(work.pop(0))
        return PolynomialTestFunction(tuple(out))

    def integral_centered(self, mid: float, half: float) -> float:
        """Exact integral over [mid - half, mid + half].

        Evaluated about the midpoint (odd powers cancel), which avoids the
        cancellation of an antiderivative difference when the interval is
        much shorter than its distance to the origin.
        """
        local = self.shifted(mid).coefficients
        total = 0.0
        h2 = half * half
        power = half  # half**(k+1) for even k
        for k in range(0, len(local), 2):
            total += 2.0 * local[k] * power / (k + 1)
            power *= h2
        return total

    def integral(self, lo: float, hi: float) -> float:
        """Exact integral over [lo, hi]."""
        return self.integral_centered(0.5 * (lo + hi), 0.5 * (hi - lo))


MONOMIAL_X = PolynomialTestFunction((0.0, 1.0))
MONOMIAL_X2 = PolynomialTestFunction((0.0, 0.0, 1.0))
MONOMIAL_X3 = PolynomialTestFunction((0.0, 0.0, 0.0, 1.0))
# Degree-8 Taylor polynomial of cos: a smooth, non-monomial test function.
COS_SURROGATE = PolynomialTestFunction(
    (1.0, 0.0, -1.0 / 2.0, 0.0, 1.0 / 24.0, 0.0, -1.0 / 720.0, 0.0, 1.0 / 40320.0)
)


def pair_snapshot(f: PolynomialTestFunction, snap: FlowSnapshot) -> float:
    """Pairing of f with the evolved patch: density times the exact integrals.

    Interval widths are taken from the intervals' exact stored lengths, so
    the density factor never amplifies an endpoint-cancellation error.
    """
    total = 0.0
    if isinstance(snap.support, CompactSet):
        for lo, hi in snap.support.blocks():
            total += f.integral(lo, hi)
    else:
        for iv in snap.support:
            half = 0.5 * iv.length
            total += f.integral_centered(iv.left + half, half)
    return snap.density_level * total


def pair_atoms(f: PolynomialTestFunction, mu: AtomicMeasure) -> float:
    """Pairing of f with an atomic measure: sum of mass * f(position)."""
    total = 0.0
    for x, c in mu:
        total += c * f(x)
    return total


def weak_error(support: IntervalUnion, f: PolynomialTestFunction, t: float) -> float:
    """|<f, patch at t> - <f, limit atoms>|, exact up to float rounding."""
    return abs(pair_snapshot(f, evolve(support, t)) - pair_atoms(f, skeleton(support)))


def lipschitz_constant(f: PolynomialTestFunction, lo: float, hi: float,
                       samples: int = LIPSCHITZ_SAMPLES) -> float:
    """max |f'| on [lo, hi] by dense sampling plus the endpoints."""
    df = f.derivative()
    best = max(abs(df(lo)), abs(df(hi)))
    if hi > lo:
        step = (hi - lo) / samples
        for i in range(1, samples):
            v = abs(df(lo + i * step))
            if v > best:
                best = v
    return best


def weak_error_bound(support: IntervalUnion, f: PolynomialTestFunction, t: float) -> float:
    """Certified bound Lip(f) * (1 - t) * sum of squared interval lengths.

    The Lipschitz constant is taken on the hull expanded by the mass radius
    L on each side, which contains every evolved support and every atom.
    """
    h = hull(support)
    half = 0.5 * measure(support)
    lip = lipschitz_constant(f, h.left - half, h.right + half)
    sq = 0.0
    for iv in support:
        sq += iv.length * iv.length
    return lip * (1.0 - t) * sq


def convergence_table(support: IntervalUnion, functions: dict[str, PolynomialTestFunction],
                      k_values: range | list[int]) -> list[dict]:
    """Rows (k, t, f_id, pairing, limit, error, bound) on the dyadic t-ladder."""
    atoms = skeleton(support)
    rows = []
    for k in k_values:
        t = 1.0 - 0.5 ** k
        snap = evolve(support, t)
        for name, f in functions.items():
            pairing = pair_snapshot(f, snap)
            limit = pair_atoms(f, atoms)
            rows.append({
                "k": k,
                "t": t,
                "f_id": name,
                "pairing": pairing,
                "limit": limit,
                "error": abs(pairing - limit),
                "bound": weak_error_bound(support, f, t),
            })
    return rows
