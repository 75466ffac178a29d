"""Tests for closed-form cumulant weights."""

from fractions import Fraction

import pytest
import sympy

from src.combinatorics import PreMap, SignedDomain, SignedPermutation
from src.ensembles import (
    EnsembleKind,
    EnsembleSpec,
    GinibreCumulant,
    GseCumulant,
    HaarCumulant,
    IdentityCumulant,
    cumulant_function,
    f_ginibre,
    f_gse,
    f_haar,
    f_identity,
    f_wishart,
)
from src.exceptions import EnsembleError
from src.quaternion import QuaternionMatrix
from src.weingarten import N, ScalarField, weingarten_table

D2 = SignedDomain(2)
SWAP = SignedPermutation.from_cycles(D2, [[1, 2], [-2, -1]])
CROSS = SignedPermutation.from_cycles(D2, [[1, -2], [2, -1]])
IDENTITY = SignedPermutation.identity(D2)


def _same(a, b):
    return sympy.simplify(sympy.sympify(a) - sympy.sympify(b)) == 0


class TestGaussianSupports:
    """Ginibre and GSE weights are indicator functions."""

    def test_ginibre_alternating_involution(self):
        assert f_ginibre(CROSS) == 1

    def test_ginibre_rejects_non_alternating(self):
        assert f_ginibre(SWAP) == 0

    def test_four_cycle_is_not_an_involution(self):
        d = SignedDomain(4)
        alpha = SignedPermutation.from_cycles(d, [[1, -2, 3, -4], [4, -3, 2, -1]])
        assert f_ginibre(alpha) == 0
        assert f_gse(alpha) == 0

    @pytest.mark.parametrize("alpha", [SWAP, CROSS])
    def test_gse_accepts_both_orientations(self, alpha):
        assert f_gse(alpha) == 1

    def test_fixed_points_vanish(self):
        assert f_gse(IDENTITY) == 0
        assert f_ginibre(IDENTITY) == 0

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_ginibre_below_gse(self, n):
        d = SignedDomain(n)
        gse = GseCumulant(ScalarField())
        for alpha, _ in GinibreCumulant(ScalarField()).nonzero_terms(d, d.positive()):
            assert gse(alpha) == 1

    @pytest.mark.parametrize("n,count", [(1, 0), (2, 2), (3, 0), (4, 12)])
    def test_gse_support_size(self, n, count):
        d = SignedDomain(n)
        assert len(list(GseCumulant(ScalarField()).nonzero_terms(d, d.positive()))) == count

    @pytest.mark.parametrize("n,count", [(2, 1), (4, 3), (5, 0)])
    def test_ginibre_support_size(self, n, count):
        d = SignedDomain(n)
        assert len(list(GinibreCumulant(ScalarField()).nonzero_terms(d, d.positive()))) == count


class TestIdentity:
    def test_only_identity_survives(self):
        d = SignedDomain(3)
        assert f_identity(SignedPermutation.identity(d)) == 1
        assert f_identity(CROSS) == 0
        terms = list(IdentityCumulant(ScalarField()).nonzero_terms(d, [1, 3]))
        assert len(terms) == 1
        assert terms[0][0].points == frozenset({1, -1, 3, -3})


class TestHaar:
    """wg(Λ(FD(α))) on alternating premaps."""

    def test_transposition_weight_is_one(self):
        assert _same(f_haar(CROSS, weingarten_table(2)), 1)

    def test_non_alternating_vanishes(self):
        assert f_haar(SWAP, weingarten_table(2)) == 0

    def test_four_cycle_weight(self):
        d = SignedDomain(4)
        alpha = SignedPermutation.from_cycles(d, [[1, -2, 3, -4], [4, -3, 2, -1]])
        expected = -((2 * N) ** 2) / ((2 * N + 1) * (2 * N - 2))
        assert _same(f_haar(alpha, weingarten_table(4)), expected)
        assert f_haar(alpha, weingarten_table(4, at=3)) == Fraction(-9, 7)

    def test_all_alternating_premaps_contribute(self):
        d = SignedDomain(4)
        terms = list(HaarCumulant(ScalarField(3)).nonzero_terms(d, d.positive()))
        assert len(terms) == 9

    def test_odd_degree_has_no_candidates(self):
        d = SignedDomain(3)
        assert list(HaarCumulant(ScalarField()).nonzero_terms(d, d.positive())) == []


class TestWishart:
    """Re-trace of the weights along FD(α⁻¹), normalized by N."""

    def test_single_symbol(self):
        d = QuaternionMatrix.from_lists([[[1, 1, 0, 0], [0, 0, 0, 0]], [[0, 0, 0, 0], [2, 0, 0, 0]]], exact=True)
        alpha = PreMap.identity_on(SignedDomain(1), [1])
        assert _same(f_wishart(alpha, [d]), 3 / N)

    @pytest.mark.parametrize("alpha,expected", [(SWAP, 4), (CROSS, 6), (IDENTITY, 9)])
    def test_two_symbols(self, alpha, expected):
        d = QuaternionMatrix.from_lists([[[1, 1, 0, 0], [0, 0, 0, 0]], [[0, 0, 0, 0], [2, 0, 0, 0]]], exact=True)
        power = 2 if alpha == IDENTITY else 1
        assert f_wishart(alpha, [d, d], ScalarField(5)) == Fraction(expected, 5**power)

    @pytest.mark.parametrize("alpha", [SWAP, CROSS, IDENTITY])
    def test_identity_weight_of_size_n_gives_one(self, alpha):
        spec = EnsembleSpec.wishart_identity("W", 2)
        f = cumulant_function(spec, ScalarField(2))
        assert f(alpha) == 1

    def test_weight_count_must_match(self):
        with pytest.raises(EnsembleError):
            f_wishart(CROSS, [QuaternionMatrix.identity(2, exact=True)])

    def test_symbols_away_from_the_front(self):
        d = SignedDomain(5)
        alpha = SignedPermutation(d, {2: -4, -4: 2, 4: -2, -2: 4})
        f = cumulant_function(EnsembleSpec.wishart_identity("W", 3), ScalarField())
        assert _same(f(alpha), 3 / N)


class TestFactory:
    @pytest.mark.parametrize(
        "kind,cls",
        [
            (EnsembleKind.GINIBRE, GinibreCumulant),
            (EnsembleKind.GSE, GseCumulant),
            (EnsembleKind.HAAR, HaarCumulant),
            (EnsembleKind.IDENTITY, IdentityCumulant),
        ],
    )
    def test_kind_dispatch(self, kind, cls):
        assert isinstance(cumulant_function(EnsembleSpec("c", kind), ScalarField()), cls)

    def test_call_outside_support_is_exact_zero(self):
        f = cumulant_function(EnsembleSpec("c", EnsembleKind.GINIBRE), ScalarField(4))
        assert f(SWAP) == Fraction(0)
