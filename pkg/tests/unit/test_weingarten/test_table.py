"""Tests for exact Weingarten tables."""

from fractions import Fraction

import numpy as np
import pytest
import sympy

from src.combinatorics import IntegerPartition, integer_partitions
from src.exceptions import CapExceededError, SingularGramError, WeingartenError
from src.weingarten import (
    N,
    class_residuals,
    gram,
    haar_weight,
    inverse_matrix,
    normalized,
    pairings_of_degree,
    weingarten_table,
    wg_normalized,
)


def _same(a, b):
    return sympy.simplify(sympy.sympify(a) - sympy.sympify(b)) == 0


class TestClosedForms:
    """Small degrees against hand inversion."""

    def test_degree_two(self):
        assert _same(weingarten_table(2)[(1,)], 1 / (2 * N))

    def test_degree_four(self):
        table = weingarten_table(4)
        denom = 2 * N * (2 * N + 1) * (2 * N - 2)
        assert _same(table[(1, 1)], (2 * N - 1) / denom)
        assert _same(table[(2,)], 1 / denom)

    def test_entry_by_pairings(self):
        table = weingarten_table(4, at=3)
        p, q, _ = pairings_of_degree(4)
        assert table.entry(p, p) == Fraction(5, 6 * 7 * 4)
        assert table.entry(p, q) == Fraction(1, 6 * 7 * 4)


class TestGramInverse:
    """Gram·Wg·Gram = Gram and agreement with direct inversion."""

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_symbolic_class_residuals_vanish(self, n):
        assert all(r == 0 for r in class_residuals(weingarten_table(n)))

    @pytest.mark.parametrize("n,at", [(4, 2), (6, 3), (6, 7)])
    def test_pseudoinverse_law_full_matrix(self, n, at):
        g = gram(n, at).entries
        w = weingarten_table(n, at).full_matrix()
        assert (g.dot(w).dot(g) == g).all()

    @pytest.mark.parametrize("n,at", [(4, 3), (6, 4)])
    def test_matches_direct_inverse(self, n, at):
        direct = inverse_matrix(gram(n, at).entries)
        assert (direct == weingarten_table(n, at).full_matrix()).all()

    @pytest.mark.slow
    def test_pseudoinverse_law_degree_eight(self):
        g = gram(8, 5).entries
        w = weingarten_table(8, 5).full_matrix()
        identity = np.array([[Fraction(int(i == j)) for j in range(len(g))] for i in range(len(g))], dtype=object)
        assert (g.dot(w) == identity).all()

    @pytest.mark.parametrize("n,at", [(n, at) for n in (4, 6, 8) for at in range(3, 11) if 2 * at >= n])
    def test_fixed_equals_symbolic_evaluation(self, n, at):
        symbolic = weingarten_table(n).at(at)
        fixed = weingarten_table(n, at)
        assert symbolic.by_partition == fixed.by_partition

    def test_singular_gram_names_n(self):
        with pytest.raises(SingularGramError) as exc_info:
            weingarten_table(4, at=1)
        assert exc_info.value.n_value == 1
        assert "N=1" in str(exc_info.value)

    def test_symbolic_cap(self):
        with pytest.raises(CapExceededError):
            weingarten_table(10)


class TestNormalization:
    """wg in both sign conventions."""

    def test_single_pair_is_one(self):
        assert _same(haar_weight(weingarten_table(2), (1,)), 1)

    def test_two_cycle_magnitude(self):
        table = weingarten_table(4)
        expected = (2 * N) ** 2 / ((2 * N + 1) * (2 * N - 2))
        assert _same(haar_weight(table, (2,)), -expected)
        assert _same(normalized(table, (2,), "definition"), -expected)
        assert _same(normalized(table, (2,), "example"), expected)

    def test_forms_agree_on_the_identity_class(self):
        table = weingarten_table(4)
        values = [normalized(table, (1, 1), form) for form in ("haar", "definition", "example")]
        assert all(_same(v, values[0]) for v in values)

    def test_unknown_form(self):
        with pytest.raises(WeingartenError):
            normalized(weingarten_table(2), (1,), "other")

    def test_example_value_at_three(self):
        table = weingarten_table(4, at=3)
        assert abs(haar_weight(table, (2,))) == Fraction(36, 28)

    def test_by_pairings(self):
        table = weingarten_table(4, at=6)
        p, q, _ = pairings_of_degree(4)
        assert wg_normalized(table, p, q) == haar_weight(table, IntegerPartition((2,)))

    def test_rows_are_primitive_polynomials(self):
        rows = {tuple(r["lambda"]): r for r in weingarten_table(4).rows()}
        assert rows[(2,)]["num"] == [1]
        assert rows[(2,)]["den"] == [8, -4, -4, 0]
        assert rows[(1, 1)]["num"] == [2, -1]

    def test_class_function_covers_all_partitions(self):
        table = weingarten_table(8, at=9)
        assert set(table.by_partition) == set(integer_partitions(4))
