import pytest

from aggpatch import (
    DomainError,
    Interval,
    IntervalUnion,
    NearCoincidenceWarning,
    evolve,
    hull,
    measure,
    normalize,
    skeleton,
    skeleton_bounds,
)
from aggpatch.skeleton import AtomicMeasure, atomic_measure_from_json, atomic_measure_to_json


class TestAtomicMeasure:
    def test_requires_increasing_positions(self):
        with pytest.raises(DomainError):
            AtomicMeasure(((1.0, 1.0), (1.0, 2.0)))

    def test_requires_positive_masses(self):
        with pytest.raises(DomainError):
            AtomicMeasure(((0.0, 0.0),))

    def test_total_mass(self):
        mu = AtomicMeasure(((0.0, 1.5), (2.0, 0.5)))
        assert mu.total_mass == 2.0
        assert mu.positions == (0.0, 2.0)
        assert mu.masses == (1.5, 0.5)

    def test_json_round_trip(self):
        mu = AtomicMeasure(((1.0, 1.0), (2.0, 1.0)))
        doc = atomic_measure_to_json(mu, bounds=(1.0, 2.0))
        assert doc == {"atoms": [{"x": 1.0, "mass": 1.0}, {"x": 2.0, "mass": 1.0}],
                       "bounds": [1.0, 2.0]}
        assert atomic_measure_from_json(doc) == mu


class TestSkeleton:
    def test_two_interval_example(self):
        assert skeleton(normalize([(0, 1), (2, 3)])).atoms == ((1.0, 1.0), (2.0, 1.0))

    def test_symmetric_single_interval(self):
        assert skeleton(normalize([(-1, 1)])).atoms == ((0.0, 2.0),)

    def test_unequal_masses(self):
        # second interval: one unit of mass to its right, two to its left,
        # so it drifts left at speed 1/2 and lands on the upper bound 2.5
        assert skeleton(normalize([(0, 2), (3, 4)])).atoms == ((1.5, 2.0), (2.5, 1.0))

    def test_empty_raises(self):
        with pytest.raises(DomainError):
            skeleton(IntervalUnion())

    def test_total_mass_exact(self, union_corpus):
        for u in union_corpus:
            assert skeleton(u).total_mass == measure(u)

    def test_atom_separation_equals_source_gaps(self, union_corpus):
        for u in union_corpus:
            atoms = skeleton(u)
            for (x0, _), (x1, _), iv0, iv1 in zip(
                atoms, atoms.atoms[1:], u.intervals, u.intervals[1:]
            ):
                assert x1 - x0 == pytest.approx(iv1.left - iv0.right, abs=1e-12)
                assert x1 > x0

    def test_containment(self, union_corpus):
        for u in union_corpus:
            lo, hi = skeleton_bounds(u)
            for x, _ in skeleton(u):
                assert lo - 1e-12 <= x <= hi + 1e-12

    def test_midpoint_convergence(self):
        # evolved midpoints approach the atoms at the exact linear rate
        # (1 - t) |source midpoint - atom|; the classical ladder t = 1 - 2^-k
        u = normalize([(0, 1), (2, 3), (4, 5)])
        atoms = skeleton(u)
        for k in range(1, 21):
            t = 1.0 - 0.5 ** k
            snap = evolve(u, t)
            for iv0, ivt, (x, _) in zip(u, snap.support, atoms):
                mid_t = ivt.left + 0.5 * ivt.length
                expected = (1.0 - t) * abs(iv0.midpoint - x)
                assert abs(mid_t - x) <= expected + 1e-12

    def test_midpoint_rate_bound_when_atom_interior(self):
        # when the atom lies inside its source interval the error is also
        # bounded by (1 - t) * length / 2
        u = normalize([(0, 1), (2, 3)])
        atoms = skeleton(u)
        for k in range(1, 21):
            t = 1.0 - 0.5 ** k
            snap = evolve(u, t)
            for iv0, ivt, (x, _) in zip(u, snap.support, atoms):
                assert iv0.left <= x <= iv0.right
                mid_t = ivt.left + 0.5 * ivt.length
                assert abs(mid_t - x) <= (1.0 - t) * iv0.length / 2 + 1e-12

    def test_near_coincidence_warns_but_keeps_atoms(self):
        u = IntervalUnion((Interval(0.0, 1.0), Interval(1.0 + 1e-13, 2.0 + 1e-13)))
        with pytest.warns(NearCoincidenceWarning):
            atoms = skeleton(u)
        assert len(atoms) == 2
        assert atoms.positions[1] > atoms.positions[0]


class TestSkeletonBounds:
    def test_two_intervals(self):
        assert skeleton_bounds(normalize([(0, 1), (2, 3)])) == (1.0, 2.0)

    def test_degenerate_full_interval(self):
        assert skeleton_bounds(normalize([(-1, 1)])) == (0.0, 0.0)

    def test_asymmetric(self):
        assert skeleton_bounds(normalize([(0, 2), (3, 4)])) == (1.5, 2.5)

    def test_bounds_inside_hull(self, union_corpus):
        for u in union_corpus[:50]:
            lo, hi = skeleton_bounds(u)
            h = hull(u)
            assert h.left <= lo <= hi <= h.right
