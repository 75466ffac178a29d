"""Tests for planarity, upper bounds and the glb condition."""

import itertools

import pytest

from src.brackets import (
    brute_force_upper_bound,
    crossing_quadruple,
    glb_condition,
    is_planar,
    is_planar_on,
    on_geodesic,
    orientation,
    upper_bound_status,
)
from src.combinatorics import SignedDomain, SignedPermutation, doubled, is_below


def _plain(n, cycles):
    d = SignedDomain(n)
    return SignedPermutation.from_cycles(d, cycles, points=d.positive())


def _all_perms(n):
    d = SignedDomain(n)
    points = d.positive()
    for image in itertools.permutations(points):
        yield SignedPermutation(d, dict(zip(points, image)))


class TestPlanarity:
    def test_crossing_pattern(self):
        assert not is_planar(_plain(4, [[1, 2, 3, 4]]), _plain(4, [[1, 3], [2, 4]]))

    def test_noncrossing_pairing(self):
        assert is_planar(_plain(4, [[1, 2, 3, 4]]), _plain(4, [[1, 2], [3, 4]]))

    def test_inverse_is_planar(self):
        pi = _plain(5, [[1, 3, 5], [2, 4]])
        assert is_planar(pi, pi.inverse())

    def test_crossing_quadruple_reported(self):
        result = is_planar_on(_plain(4, [[1, 2, 3, 4]]), _plain(4, [[1, 3], [2, 4]]))
        assert not result.planar
        assert result.crossing == (1, 2, 3, 4)

    def test_no_quadruple_when_planar(self):
        assert crossing_quadruple(_plain(4, [[1, 2, 3, 4]]), _plain(4, [[1, 2], [3, 4]])) is None


class TestPremapPlanarity:
    """Planarity of premaps on an orientation witness."""

    def test_crossing_premaps(self):
        d = SignedDomain(4)
        pi = SignedPermutation.from_cycles(d, [[1, 2, 3, 4], [-4, -3, -2, -1]])
        rho = SignedPermutation.from_cycles(d, [[1, 3], [-3, -1], [2, 4], [-4, -2]])
        assert not is_planar_on(pi, rho).planar

    def test_witness_holds_one_sign_per_symbol(self):
        d = SignedDomain(3)
        face = SignedPermutation.from_cycles(d, [[1, -2, 3]], points=[1, -2, 3])
        p = doubled(face)
        result = is_planar_on(p, p.inverse())
        assert result.planar
        assert result.witness == frozenset({1, -2, 3})

    def test_sign_conflict(self, face):
        re = face(4, [["inf"], [1, 3], [2, 4]])
        tr = face(4, [["inf"], [1, -2, 3, 4]])
        result = is_planar_on(re, tr.inverse())
        assert not result.planar
        assert result.sign_conflict is not None

    def test_orientation_keeps_positive_infinity(self, face):
        p = face(2, [["inf", -1], [2]])
        chosen = orientation(p, p)
        assert 3 in chosen.witness
        assert -1 in chosen.witness


class TestUpperBounds:
    """The equivalent upper-bound conditions agree."""

    def test_equal_permutations(self):
        pi = _plain(4, [[1, 2], [3, 4]])
        status = upper_bound_status(pi, pi)
        assert status is not None
        assert status.sigma == pi

    def test_crossing_has_no_bound(self):
        assert upper_bound_status(_plain(4, [[1, 2, 3, 4]]), _plain(4, [[1, 3], [2, 4]])) is None

    def test_worked_example_has_bound(self):
        d = SignedDomain(10, has_infinity=True)
        points = d.positive()
        pi = SignedPermutation.from_cycles(d, [["inf", 1, 3, 4], [2], [5, 6, 7, 8, 9, 10]], points=points)
        rho = SignedPermutation.from_cycles(d, [["inf", 1, 2, 3, 4], [5, 6, 7, 8], [9, 10]], points=points)
        status = upper_bound_status(pi, rho)
        assert status is not None
        assert status.consistent
        assert is_below(pi, status.sigma) and is_below(rho, status.sigma)

    @pytest.mark.parametrize("n", [3, 4])
    def test_conditions_agree_exhaustively(self, n):
        perms = list(_all_perms(n))
        for pi, rho in itertools.product(perms, repeat=2):
            brute = brute_force_upper_bound(pi, rho)
            status = upper_bound_status(pi, rho)
            assert (brute is None) == (status is None), (str(pi), str(rho))
            if status is not None:
                assert on_geodesic(pi, rho, status.sigma)

    @pytest.mark.slow
    def test_conditions_agree_on_s5(self):
        perms = list(_all_perms(5))
        for pi, rho in itertools.product(perms[::7], perms):
            assert (brute_force_upper_bound(pi, rho) is None) == (upper_bound_status(pi, rho) is None)


class TestGlb:
    def test_equal_permutations(self):
        pi = _plain(4, [[1, 2], [3, 4]])
        assert glb_condition(pi, pi)

    def test_worked_example(self):
        d = SignedDomain(10, has_infinity=True)
        points = d.positive()
        pi = SignedPermutation.from_cycles(d, [["inf", 1, 3, 4], [2], [5, 6, 7, 8, 9, 10]], points=points)
        rho = SignedPermutation.from_cycles(d, [["inf", 1, 2, 3, 4], [5, 6, 7, 8], [9, 10]], points=points)
        assert glb_condition(pi, rho)

    def test_violation(self):
        # both cycles of one cut across both cycles of the other
        pi = _plain(4, [[1, 2], [3, 4]])
        rho = _plain(4, [[1, 3], [2, 4]])
        assert not glb_condition(pi, rho)
