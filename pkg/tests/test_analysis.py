import math

import pytest

from aggpatch import (
    CantorGapGenerator,
    CompactSet,
    DomainError,
    Interval,
    IntervalUnion,
    box_count,
    box_dimension,
    normalize,
    skeleton,
)
from aggpatch.skeleton import AtomicMeasure

GEN = CantorGapGenerator()


def cantor_set(depth):
    return CompactSet(GEN.hull, IntervalUnion(GEN.gaps(depth)))


class TestBoxCount:
    def test_cantor_self_similar_counts(self):
        target = cantor_set(10)
        for k in range(0, 11):
            assert box_count(target, 3.0 ** -k) == 2 ** k

    def test_two_atoms(self):
        assert box_count(AtomicMeasure(((1.0, 1.0), (2.0, 1.0))), 0.5) == 2

    def test_full_interval(self):
        assert box_count(CompactSet(Interval(0.0, 1.0)), 0.1) == 10
        assert box_count(normalize([(0.0, 1.0)]), 0.1) == 10

    def test_interval_union_with_gap(self):
        # boxes fully inside the hole do not count
        u = normalize([(0.0, 1.0), (2.0, 3.0)])
        assert box_count(u, 0.5) == 4

    def test_raw_coordinates(self):
        assert box_count([0.0, 0.1, 0.9], 0.5) == 2

    def test_bad_eps(self):
        with pytest.raises(DomainError):
            box_count([0.0], 0.0)


class TestBoxDimension:
    def test_cantor_dimension(self):
        fit = box_dimension(cantor_set(10), [3.0 ** -k for k in range(2, 9)])
        assert fit.dimension == pytest.approx(math.log(2) / math.log(3), abs=0.02)
        assert fit.residual < 1e-9

    def test_middle_halves_dimension(self):
        gen = CantorGapGenerator(middle=0.5)
        target = CompactSet(gen.hull, IntervalUnion(gen.gaps(10)))
        fit = box_dimension(target, [0.25 ** k for k in range(1, 6)])
        assert fit.dimension == pytest.approx(0.5, abs=0.02)

    def test_atoms_dimension_decays_to_zero(self):
        atoms = skeleton(normalize([(0, 1), (2, 3)]))
        dims = []
        for m in range(3, 12):
            ladder = [0.5 ** k for k in range(1, m + 1)]
            dims.append(box_dimension(atoms, ladder).dimension)
        assert all(b <= a + 1e-9 for a, b in zip(dims, dims[1:]))
        assert dims[-1] < 0.05

    def test_needs_three_scales(self):
        with pytest.raises(DomainError):
            box_dimension(cantor_set(5), [0.1, 0.01])

    def test_resolution_floor_enforced(self):
        target = cantor_set(5)
        with pytest.raises(DomainError):
            box_dimension(target, [3.0 ** -k for k in range(4, 9)],
                          min_scale=GEN.cell_width(5))

    def test_positive_counts_required(self):
        # an empty point list cannot be fitted
        with pytest.raises(DomainError):
            box_dimension([], [0.5, 0.25, 0.125])
