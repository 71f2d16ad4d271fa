"""Filtrations, bundles, constructors, twisting, sums, tensors, duals."""

from fractions import Fraction

import pytest

from klyachko import (
    Filtration,
    ShiftingIndices,
    Subspace,
    ToricBundle,
    c1,
    line_bundle,
    projective_fan,
    rank2_bundle,
    structure_sheaf,
    tangent_bundle,
)

from conftest import random_bundle, random_delta


W0 = Subspace([[1, 0]], 2)
W1 = Subspace([[0, 1]], 2)
W2 = Subspace([[1, 1]], 2)
FULL2 = Subspace.full(2)


class TestFiltrationValidation:
    def test_first_step_must_be_full(self):
        with pytest.raises(ValueError, match="full"):
            Filtration(2, ((0, W0),))

    def test_untils_strictly_increase(self):
        with pytest.raises(ValueError, match="strictly increase"):
            Filtration(2, ((0, FULL2), (0, W0)))

    def test_spaces_strictly_decrease(self):
        with pytest.raises(ValueError, match="strictly decrease"):
            Filtration(2, ((0, FULL2), (1, W0), (2, W1)))

    def test_zero_space_is_implicit(self):
        with pytest.raises(ValueError, match="implicit"):
            Filtration(2, ((0, FULL2), (1, Subspace.zero(2))))

    def test_needs_a_step(self):
        with pytest.raises(ValueError):
            Filtration(2, ())

    def test_rank_zero_is_empty(self):
        f = Filtration(0, ())
        assert f.at(17).is_zero()


class TestEval:
    def test_tangent_ray0(self):
        f = tangent_bundle(2).filtration(0)
        assert f.at(1) == W0
        assert f.at(0).is_full()
        assert f.at(2).is_zero()
        assert f.at(-100).is_full()

    def test_tangent_last_ray(self):
        f = tangent_bundle(2).filtration(2)
        assert f.at(1) == Subspace([[-1, -1]], 2)

    def test_weakly_decreasing(self, rng):
        for _ in range(10):
            bundle = random_bundle(rng, rng.randint(1, 4))
            for f in bundle.filtrations:
                for j in range(-6, 7):
                    assert f.at(j + 1) <= f.at(j)
            # extremes
            for f in bundle.filtrations:
                assert f.at(f.full_until).is_full()
                assert not f.at(f.full_until + 1).is_full()
                assert not f.at(f.nonzero_until).is_zero()
                assert f.at(f.nonzero_until + 1).is_zero()


class TestLineBundle:
    def test_structure_sheaf_thresholds(self):
        o = structure_sheaf(2)
        assert [f.full_until for f in o.filtrations] == [0, 0, 0]
        assert o.rank == 1

    def test_last_divisor(self):
        e = line_bundle((0, 0, 1))
        assert [f.full_until for f in e.filtrations] == [0, 0, 1]

    def test_negative_divisor(self):
        e = line_bundle((-1, -1, 0))
        assert [f.full_until for f in e.filtrations] == [-1, -1, 0]


class TestTangent:
    def test_shifting_indices(self):
        assert tangent_bundle(2).shifting_indices().flat == (0, 1, 0, 1, 0, 1)

    def test_not_split(self):
        assert not tangent_bundle(2).is_split()

    def test_higher_dimensional_locally_free(self):
        assert tangent_bundle(3).is_locally_free()
        assert not tangent_bundle(3).is_split()


class TestShiftingIndices:
    def test_parse_and_format(self):
        delta = ShiftingIndices.parse("-1,0;-1,0;0,2")
        assert delta.flat == (-1, 0, -1, 0, 0, 2)
        assert str(delta) == "-1,0;-1,0;0,2"

    def test_rejects_empty_band(self):
        with pytest.raises(ValueError, match="band"):
            ShiftingIndices((0, 0, 0), (1, 0, 1))

    def test_parse_errors(self):
        with pytest.raises(ValueError):
            ShiftingIndices.parse("-1,0;-1,0")
        with pytest.raises(ValueError):
            ShiftingIndices.parse("-1,0;-1,0;a,b")

    def test_table_one_bundle(self):
        # full plane through -1, the fixed line at 0 (rays 0, 1); one later on ray 2
        e = rank2_bundle(ShiftingIndices.parse("-1,0;-1,0;0,1"))
        assert e.at(0, -1).is_full() and e.at(0, 0) == W0 and e.at(0, 1).is_zero()
        assert e.at(1, 0) == W1
        assert e.at(2, 0).is_full() and e.at(2, 1) == W2 and e.at(2, 2).is_zero()

    def test_table_three_bundle(self):
        e = rank2_bundle(ShiftingIndices.parse("-1,0;-1,0;0,2"))
        assert e.at(2, 1) == W2 and e.at(2, 2) == W2 and e.at(2, 3).is_zero()

    def test_round_trip(self, rng):
        for _ in range(20):
            delta = random_delta(rng)
            assert rank2_bundle(delta).shifting_indices() == delta


class TestExtraction:
    def test_twisted_tangent(self):
        e = tangent_bundle(2).twist((-1, -1, 0))
        assert e.shifting_indices().flat == (-1, 0, -1, 0, 0, 1)

    def test_split_has_no_indices(self):
        e = line_bundle((0, 0, 1)).direct_sum(line_bundle((0, 0, 2)))
        with pytest.raises(ValueError, match="split"):
            e.shifting_indices()

    def test_wrong_rank(self):
        with pytest.raises(ValueError, match="rank"):
            line_bundle((0, 0, 0)).shifting_indices()


class TestTwist:
    def test_zero_twist_is_identity(self, rng):
        e = random_bundle(rng, 2)
        assert e.twist((0, 0, 0)) == e

    def test_inverse(self, rng):
        e = random_bundle(rng, 3)
        assert e.twist((2, -1, 3)).twist((-2, 1, -3)) == e

    def test_additive(self, rng):
        e = random_bundle(rng, 2)
        assert e.twist((1, 2, 3)).twist((0, -1, 1)) == e.twist((1, 1, 4))

    def test_commutes_with_direct_sum(self, rng):
        a = random_bundle(rng, 2)
        b = random_bundle(rng, 1)
        d = (1, -2, 0)
        assert a.direct_sum(b).twist(d) == a.twist(d).direct_sum(b.twist(d))


class TestDirectSum:
    def test_two_line_bundles_profile(self):
        e = line_bundle((1, 0, 0)).direct_sum(line_bundle((3, 0, -2)))
        # ray 0: dims 2 then 1 dropping at 1 and 3; ray 1: straight 2 -> 0
        assert e.filtration(0).dimension_profile() == ((1, 2), (3, 1))
        assert e.filtration(1).dimension_profile() == ((0, 2),)
        assert e.filtration(2).dimension_profile() == ((-2, 2), (0, 1))

    def test_rank_additive(self, rng):
        a = random_bundle(rng, 2)
        b = random_bundle(rng, 3)
        assert a.direct_sum(b).rank == 5

    def test_split_detection(self):
        e = line_bundle((1, 2, 3)).direct_sum(line_bundle((0, 0, 0)))
        assert e.is_split()

    def test_values_are_sums(self, rng):
        a = random_bundle(rng, 2)
        b = random_bundle(rng, 2)
        s = a.direct_sum(b)
        for i in range(3):
            for j in range(-5, 6):
                assert s.at(i, j).dim == a.at(i, j).dim + b.at(i, j).dim

    def test_fan_mismatch(self):
        with pytest.raises(ValueError, match="fan"):
            line_bundle((0, 0, 0)).direct_sum(line_bundle((0, 0, 0, 0), n=3))


class TestTensor:
    def test_with_line_bundle_is_twist(self, rng):
        for _ in range(10):
            e = rank2_bundle(random_delta(rng))
            d = tuple(rng.randint(-2, 2) for _ in range(3))
            assert e.tensor(line_bundle(d)) == e.twist(d)

    def test_line_times_line(self):
        a, b = (1, 0, -2), (0, 2, 1)
        lhs = line_bundle(a).tensor(line_bundle(b))
        rhs = line_bundle((1, 2, -1))
        assert lhs == rhs

    def test_rank_multiplicative(self, rng):
        e = rank2_bundle(random_delta(rng))
        f = rank2_bundle(random_delta(rng))
        assert e.tensor(f).rank == 4

    def test_tensor_values_decrease(self, rng):
        e = rank2_bundle(random_delta(rng))
        f = rank2_bundle(random_delta(rng))
        t = e.tensor(f)
        for i in range(3):
            for j in range(-8, 9):
                assert t.at(i, j + 1) <= t.at(i, j)


class TestDual:
    def test_line_bundle(self):
        assert line_bundle((2, -1, 0)).dual() == line_bundle((-2, 1, 0))

    def test_involution(self, rng):
        for _ in range(10):
            e = random_bundle(rng, rng.randint(1, 3))
            assert e.dual().dual() == e

    def test_c1_negates(self, rng):
        for _ in range(10):
            e = rank2_bundle(random_delta(rng))
            assert c1(e.dual()) == -c1(e)

    def test_tensor_with_dual_contains_trivial(self):
        t = tangent_bundle(2)
        endo = t.tensor(t.dual())
        # the trivial character: every value at j <= 0 contains the identity vector
        for i in range(3):
            assert endo.at(i, 0).dim >= 1


class TestSplitAndLocallyFree:
    def test_rank1_always_split(self):
        assert line_bundle((5, -3, 2)).is_split()

    def test_rank2_on_p2_locally_free(self, rng):
        for _ in range(10):
            assert random_bundle(rng, 2).is_locally_free()

    def test_line_bundle_any_dimension(self):
        assert line_bundle((1, 0, -1, 2), n=3).is_locally_free()

    def test_three_lines_needed_to_not_split(self):
        # two distinct lines only: splits
        f0 = Filtration(2, ((0, FULL2), (1, W0)))
        f1 = Filtration(2, ((0, FULL2), (2, W1)))
        f2 = Filtration(2, ((-1, FULL2), (0, W0)))
        e = ToricBundle(projective_fan(2), (f0, f1, f2))
        assert e.is_split()

    def test_split_iff_at_most_two_lines(self, rng):
        for _ in range(10):
            delta = random_delta(rng)
            assert not rank2_bundle(delta).is_split()


class TestSlopeStability:
    def test_tangent_twist_stable(self):
        assert rank2_bundle(ShiftingIndices.parse("-1,0;-1,0;0,1")).is_slope_stable()

    def test_semistable_boundary(self):
        assert not rank2_bundle(ShiftingIndices.parse("-1,0;-1,0;0,2")).is_slope_stable()

    def test_wildly_unbalanced(self):
        assert not rank2_bundle(ShiftingIndices.parse("0,1;0,1;0,5")).is_slope_stable()

    def test_split_bundle_rejected(self):
        e = line_bundle((0, 0, 0)).direct_sum(line_bundle((1, 0, 0)))
        with pytest.raises(ValueError, match="split"):
            e.is_slope_stable()


def test_bundle_validation():
    fan = projective_fan(2)
    f = Filtration(1, ((0, Subspace.full(1)),))
    with pytest.raises(ValueError, match="3 filtrations"):
        ToricBundle(fan, (f, f))
    g = Filtration(2, ((0, FULL2),))
    with pytest.raises(ValueError, match="ambient"):
        ToricBundle(fan, (f, f, g))


def test_fraction_entries_canonicalized():
    half = Subspace([[Fraction(1, 2), Fraction(1, 2)]], 2)
    assert half == W2
