"""Shared corpus generators for property and acceptance tests."""

import random

import pytest

from aggpatch import IntervalUnion, normalize
from aggpatch.skeleton import AtomicMeasure, atomic_measure_from_pairs

CORPUS_SEED = 20260809


def random_union(rng: random.Random, max_intervals: int = 10,
                 lo: float = -10.0, hi: float = 10.0) -> IntervalUnion:
    """Random normalized union with endpoints in [lo, hi].

    Lengths and gaps are bounded away from zero so separation-sensitive
    assertions are not dominated by roundoff.
    """
    n = rng.randint(1, max_intervals)
    lengths = [rng.uniform(0.05, 0.8) for _ in range(n)]
    gaps = [rng.uniform(0.05, 0.8) for _ in range(n - 1)]
    span = sum(lengths) + sum(gaps)
    start = rng.uniform(lo, hi - span)
    raw = []
    cursor = start
    for i, length in enumerate(lengths):
        raw.append((cursor, cursor + length))
        cursor += length
        if i < len(gaps):
            cursor += gaps[i]
    return normalize(raw)


def random_atoms(rng: random.Random, max_atoms: int = 10) -> AtomicMeasure:
    """Random atomic measure with separated positions and positive masses."""
    n = rng.randint(1, max_atoms)
    positions = []
    cursor = rng.uniform(-10.0, 5.0)
    for _ in range(n):
        positions.append(cursor)
        cursor += rng.uniform(0.05, 1.0)
    masses = [rng.uniform(0.1, 2.5) for _ in range(n)]
    return atomic_measure_from_pairs(zip(positions, masses), sort=False)


@pytest.fixture(scope="session")
def union_corpus():
    rng = random.Random(CORPUS_SEED)
    return [random_union(rng) for _ in range(200)]


@pytest.fixture(scope="session")
def atoms_corpus():
    rng = random.Random(CORPUS_SEED + 1)
    return [random_atoms(rng) for _ in range(200)]
