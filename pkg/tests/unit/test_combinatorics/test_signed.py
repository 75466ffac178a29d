"""Tests for signed domains and permutations."""

import pytest

from src.combinatorics import SignedDomain, SignedPermutation, compose, delta, delta_eps
from src.exceptions import DomainMismatchError, InvalidPermutationError


@pytest.fixture
def d3():
    return SignedDomain(3)


@pytest.fixture
def d3_inf():
    return SignedDomain(3, has_infinity=True)


class TestSignedDomain:
    """Carrier, infinity sentinel and symbol parsing."""

    def test_carrier_interleaves_signs(self, d3):
        assert d3.carrier() == (1, -1, 2, -2, 3, -3)

    def test_infinity_is_sentinel(self, d3_inf):
        assert d3_inf.infinity == 4
        assert d3_inf.positive() == (1, 2, 3, 4)
        assert d3_inf.is_infinite(-4)
        assert not SignedDomain(3).is_infinite(4)

    @pytest.mark.parametrize("raw,expected", [("inf", 4), ("-inf", -4), ("∞", 4), ("-2", -2), (3, 3)])
    def test_parse(self, d3_inf, raw, expected):
        assert d3_inf.parse(raw) == expected

    @pytest.mark.parametrize("raw", [0, 5, "x", "inf"])
    def test_parse_rejects_outside(self, d3, raw):
        with pytest.raises(InvalidPermutationError):
            d3.parse(raw)

    def test_label_round_trip(self, d3_inf):
        assert [d3_inf.label(k) for k in (4, -4, 2)] == ["inf", "-inf", 2]


class TestSignedPermutation:
    """Construction, composition and cycle structure."""

    def test_from_cycles_fixes_unmentioned(self, d3):
        p = SignedPermutation.from_cycles(d3, [[1, -2]])
        assert p(1) == -2
        assert p(-2) == 1
        assert p(3) == 3
        assert p.size == 6

    def test_from_cycles_rejects_repeats(self, d3):
        with pytest.raises(InvalidPermutationError):
            SignedPermutation.from_cycles(d3, [[1, 2], [2, 3]])

    def test_non_bijection_rejected(self, d3):
        with pytest.raises(InvalidPermutationError):
            SignedPermutation(d3, {1: 2, 2: 2})

    def test_composition_is_right_to_left(self, d3):
        a = SignedPermutation.from_cycles(d3, [[1, 2]])
        b = SignedPermutation.from_cycles(d3, [[2, 3]])
        ab = a * b
        assert ab(2) == a(b(2)) == 3
        assert ab(3) == 1
        assert ab(1) == 2

    def test_compose_requires_same_points(self, d3):
        a = SignedPermutation.identity(d3, points=[1, 2])
        b = SignedPermutation.identity(d3)
        with pytest.raises(DomainMismatchError):
            compose(a, b)

    def test_inverse(self, d3):
        p = SignedPermutation.from_cycles(d3, [[1, 2, -3]])
        assert (p * p.inverse()).is_identity()

    def test_cycles_start_at_infinity(self, d3_inf):
        p = SignedPermutation.from_cycles(d3_inf, [[3, "inf", 1]])
        assert p.cycles()[0] == (4, 1, 3)
        assert str(p).startswith("(inf,1,3)")

    def test_cycle_type_and_sign(self, d3):
        p = SignedPermutation.from_cycles(d3, [[1, 2, 3], [-1, -2]])
        assert p.cycle_type() == (3, 2, 1)
        assert p.sign() == -1

    def test_induced_skips_outside_points(self, d3):
        p = SignedPermutation.from_cycles(d3, [[1, 2, 3]], points=[1, 2, 3])
        assert p.induced([1, 3]).cycles() == ((1, 3),)
        assert p.restrict([1, 3]) == p.induced([1, 3])

    def test_conjugate_by_relabels_cycles(self, d3):
        p = SignedPermutation.from_cycles(d3, [[1, 2]])
        g = SignedPermutation.from_cycles(d3, [[2, 3]])
        assert p.conjugate_by(g) == SignedPermutation.from_cycles(d3, [[1, 3]])

    def test_orbit_of_unknown_point(self, d3):
        p = SignedPermutation.identity(d3, points=[1])
        with pytest.raises(DomainMismatchError):
            p.orbit_of(2)

    def test_equality_and_hash(self, d3):
        a = SignedPermutation.from_cycles(d3, [[1, 2]])
        b = SignedPermutation.from_cycles(d3, [[2, 1]])
        assert a == b
        assert len({a, b}) == 1


class TestNegation:
    """δ and its twisted variant."""

    def test_delta_is_involution(self, d3):
        d = delta(d3)
        assert d.is_involution()
        assert d(2) == -2

    def test_delta_eps_twists_selected_symbols(self, d3_inf):
        d = delta_eps(d3_inf, {1: -1, 2: 1, 3: -1})
        assert d(1) == -1
        assert d(2) == 2
        assert d(4) == 4

    def test_delta_eps_rejects_bad_sign(self, d3):
        with pytest.raises(InvalidPermutationError):
            delta_eps(d3, {1: 2})
