"""Two-term resolutions: divisor extraction and consistency reports."""

from klyachko import (
    ShiftingIndices,
    chi_line_bundle,
    enumerate_si,
    format_sequence,
    perling_resolution,
    verify_resolution,
)

from conftest import random_delta


class TestPerlingResolution:
    def test_euler_sequence_twist(self):
        res = perling_resolution(ShiftingIndices.parse("-1,0;-1,0;0,1"))
        assert res.left == (-1, -1, 0)
        assert res.middle == ((-1, -1, 1), (0, -1, 0), (-1, 0, 0))
        assert res.left_degree == -2
        assert sorted(res.middle_degrees) == [-1, -1, -1]

    def test_extension_example(self):
        res = perling_resolution(ShiftingIndices.parse("-1,0;-1,0;0,2"))
        assert res.left == (-1, -1, 0)
        assert res.middle == ((-1, -1, 2), (0, -1, 0), (-1, 0, 0))

    def test_cyclic_rule(self):
        res = perling_resolution(ShiftingIndices.parse("-1,0;-1,1;0,1"))
        # (i,j,k) term: full_until on rays i and j, line_until on ray k
        assert res.middle == ((-1, -1, 1), (0, -1, 0), (-1, 1, 0))
        assert res.left_degree == -2

    def test_degree_identity(self, rng):
        # sum of middle degrees = c1 + left degree, symbolically
        for _ in range(25):
            delta = random_delta(rng)
            res = perling_resolution(delta)
            assert sum(res.middle_degrees) - res.left_degree == sum(delta.flat)
            assert res.left_degree == sum(delta.full_until)


class TestChiLineBundle:
    def test_triangle_numbers(self):
        assert [chi_line_bundle(k) for k in range(0, 5)] == [1, 3, 6, 10, 15]

    def test_duality_zeros(self):
        assert chi_line_bundle(-1) == chi_line_bundle(-2) == 0
        assert chi_line_bundle(-3) == 1


class TestVerify:
    def test_extension_euler_characteristic(self):
        report = verify_resolution(ShiftingIndices.parse("-1,0;-1,0;0,2"))
        assert report.ok
        by_twist = {t: res_chi for t, res_chi, _ in report.chi_rows}
        # chi(O) + 2 chi(O(-1)) - chi(O(-2)) = 1 at twist 0
        assert by_twist[0] == 1

    def test_all_census_entries_verify(self):
        for d in range(2, 7):
            for entry in enumerate_si(d):
                report = verify_resolution(entry.delta)
                assert report.ok, (entry.delta, report)

    def test_random_deltas_verify(self, rng):
        for _ in range(10):
            report = verify_resolution(random_delta(rng), twists=range(-2, 3))
            assert report.rank_ok and report.c1_ok and report.chi_ok


def test_format_sequence():
    res = perling_resolution(ShiftingIndices.parse("-1,0;-1,0;0,2"))
    text = format_sequence(res)
    assert text == (
        "0 -> O(-D0 - D1) -> O(-D0 - D1 + 2*D2) (+) O(-D1) (+) O(-D0) -> E -> 0"
    )
