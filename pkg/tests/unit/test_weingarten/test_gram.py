"""Tests for Gram matrices over pairings."""

from fractions import Fraction

import pytest
import sympy

from src.combinatorics import SignedDomain, alternating_pairings, enumerate_alternating_premaps, haar_lambda
from src.exceptions import CapExceededError, WeingartenError
from src.weingarten import N, gram, join_lambda, pairings_of_degree


def test_degree_two_is_two_n():
    g = gram(2)
    assert len(g) == 1
    assert sympy.simplify(g.entries[0, 0] - 2 * N) == 0


def test_degree_four_entries():
    g = gram(4)
    for i in range(3):
        for j in range(3):
            expected = 4 * N**2 if i == j else -2 * N
            assert sympy.simplify(g.entries[i, j] - expected) == 0


def test_fixed_n_is_exact():
    g = gram(4, at=3)
    assert g.entries[0, 0] == Fraction(36)
    assert g.entries[0, 1] == Fraction(-6)


@pytest.mark.parametrize("n", [4, 6])
def test_symmetric(n):
    assert gram(n, at=5).is_symmetric()


def test_diagonal_has_maximal_join():
    pairings = pairings_of_degree(6)
    g = gram(6, at=2)
    for i, p in enumerate(pairings):
        assert len(join_lambda(p, p)) == 3
        assert g.entries[i, i] == Fraction(-1) * Fraction(-4) ** 3


def test_odd_degree_rejected():
    with pytest.raises(WeingartenError):
        gram(3)


def test_degree_over_cap():
    with pytest.raises(CapExceededError):
        gram(12)


def test_haar_lambda_matches_join_of_alternating_pairings():
    for alpha in enumerate_alternating_premaps(SignedDomain(6)):
        assert haar_lambda(alpha) == join_lambda(*alternating_pairings(alpha))
