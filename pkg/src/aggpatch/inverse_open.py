"""Open initial sets realizing a prescribed finite atomic limit measure.

Given target atoms (x_i, c_i) with total mass 2L, sorted by position, let
l_i be the mass strictly left of x_i.  The union of the intervals

    (x_i + l_i - L,  x_i + l_i - L + c_i)

collapses exactly onto the requested atoms.  Consecutive intervals are
separated by the atom spacing x_{i+1} - x_i, so for strictly separated
atoms the construction is always a valid disjoint union; only roundoff can
make two of them touch, in which case normalization merges them and the
input is reported as non-invertible.
"""

from __future__ import annotations

import warnings
from typing import Iterable, Sequence, Union

from .errors import NonInvertibleMeasureWarning
from .intervals import IntervalUnion, normalize
from .skeleton import AtomicMeasure, atomic_measure_from_pairs

AtomsLike = Union[AtomicMeasure, Iterable[Sequence[float]]]


def inverse_open(mu: AtomicMeasure | AtomsLike) -> IntervalUnion:
    """Bounded open set whose skeleton is the given atomic measure.

    Accepts an AtomicMeasure or raw (position, mass) pairs; raw pairs are
    sorted first.  The result lies inside [c - L, d + L] where [c, d] is
    the atom hull, has measure equal to the total mass, and round-trips
    through the forward skeleton exactly up to roundoff.
    """
    if not isinstance(mu, AtomicMeasure):
        mu = atomic_measure_from_pairs(mu)
    half = 0.5 * mu.total_mass
    raw = []
    prefix = 0.0
    for x, c in mu:
        left = x + prefix - half
        raw.append((left, left + c))
        prefix += c
    out = normalize(raw)
    if len(out) < len(mu):
        warnings.warn(
            f"constructed intervals touched and merged: {len(mu)} atoms requested, "
            f"{len(out)} intervals produced; the skeleton of the result has fewer atoms",
            NonInvertibleMeasureWarning,
            stacklevel=2,
        )
    return out
