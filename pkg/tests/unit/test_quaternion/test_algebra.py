"""Tests for quaternion arithmetic and quaternionic matrices."""

from fractions import Fraction

import numpy as np
import pytest
import sympy

from src.exceptions import DimensionMismatchError
from src.quaternion import Quaternion, QuaternionMatrix, embed_array, qmatmul

I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)
ONE = Quaternion.one()


class TestQuaternion:
    def test_hamilton_relations(self):
        assert I * J == K
        assert J * K == I
        assert K * I == J
        assert J * I == -K
        assert I * I == -ONE
        assert I * J * K == -ONE

    def test_conjugate_reverses_products(self):
        p = Quaternion(Fraction(1), Fraction(2), Fraction(-1), Fraction(3))
        q = Quaternion(Fraction(0), Fraction(-2), Fraction(5), Fraction(1))
        assert (p * q).conj() == q.conj() * p.conj()

    def test_norm_is_multiplicative(self):
        p = Quaternion(1, 2, 3, 4)
        q = Quaternion(-2, 0, 1, 1)
        assert (p * q).norm2() == p.norm2() * q.norm2()
        assert (p * p.conj()) == Quaternion(p.norm2(), 0, 0, 0)

    def test_real_scaling(self):
        q = Quaternion(Fraction(2), Fraction(4), Fraction(0), Fraction(-6))
        assert q / 2 == Quaternion(1, 2, 0, -3)
        assert 3 * q == q * 3

    def test_exact_entry_is_gaussian_rational(self):
        q = Quaternion(Fraction(1), Fraction(2), Fraction(3), Fraction(4))
        assert q.entry(1, 1) == 1 + 2 * sympy.I
        assert q.entry(1, -1) == 3 + 4 * sympy.I
        assert q.entry(-1, 1) == -3 + 4 * sympy.I
        assert q.entry(-1, -1) == 1 - 2 * sympy.I

    def test_bad_spin_index(self):
        with pytest.raises(DimensionMismatchError):
            ONE.entry(0, 1)

    def test_embedding_is_multiplicative(self):
        p, q = Quaternion(1.0, -0.5, 2.0, 0.25), Quaternion(0.0, 3.0, -1.0, 1.0)
        assert np.allclose((p * q).embed(), p.embed() @ q.embed())

    def test_from_list_checks_length(self):
        with pytest.raises(DimensionMismatchError):
            Quaternion.from_list([1, 2, 3])


class TestQuaternionMatrix:
    def test_exact_product_matches_float(self, exact_matrices):
        a, b = exact_matrices(2, size=3)
        exact = a @ b
        assert exact.exact
        assert exact.allclose(a.to_float() @ b.to_float())

    def test_product_through_embedding(self, rng):
        a = QuaternionMatrix(rng.normal(size=(3, 2, 4)))
        b = QuaternionMatrix(rng.normal(size=(2, 4, 4)))
        assert np.allclose((a @ b).embed(), a.embed() @ b.embed())

    def test_embedding_inverse(self, rng):
        a = QuaternionMatrix(rng.normal(size=(2, 3, 4)))
        assert QuaternionMatrix.from_embedding(a.embed()).allclose(a)

    def test_adjoint_reverses_products(self, exact_matrices):
        a, b = exact_matrices(2)
        assert (a @ b).adjoint() == b.adjoint() @ a.adjoint()

    def test_adjoint_is_conjugate_transpose_of_embedding(self, rng):
        a = QuaternionMatrix(rng.normal(size=(2, 2, 4)))
        assert np.allclose(a.adjoint().embed(), a.embed().conj().T)

    def test_trace_and_normalized_trace(self):
        a = QuaternionMatrix.from_lists(
            [[[1, 2, 0, 0], [5, 5, 5, 5]], [[7, 7, 7, 7], [3, 0, -1, 1]]],
            exact=True,
        )
        assert a.trace() == Quaternion(4, 2, -1, 1)
        assert a.ntr() == Quaternion(2, 1, Fraction(-1, 2), Fraction(1, 2))

    def test_trace_needs_square(self):
        with pytest.raises(DimensionMismatchError):
            QuaternionMatrix.zeros(2, 3).trace()

    def test_re_drops_imaginary_parts(self, exact_matrices):
        (a,) = exact_matrices(1)
        re = a.re()
        assert all(re[i, j] == Quaternion(a[i, j].a, 0, 0, 0) for i in range(2) for j in range(2))

    def test_scalar_matrix(self):
        q = Quaternion(1, 2, 3, 4)
        m = QuaternionMatrix.scalar(q, 3, exact=True)
        assert m[1, 1] == q
        assert m[0, 1] == Quaternion(0, 0, 0, 0)

    def test_left_and_right_scaling(self):
        m = QuaternionMatrix.identity(2, exact=True)
        assert m.left_scale(I).right_scale(J)[0, 0] == K

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            QuaternionMatrix.zeros(2) + QuaternionMatrix.zeros(3)
        with pytest.raises(DimensionMismatchError):
            QuaternionMatrix.zeros(2, 3) @ QuaternionMatrix.zeros(2, 3)
        with pytest.raises(DimensionMismatchError):
            QuaternionMatrix(np.zeros((2, 2, 3)))

    def test_to_lists_uses_plain_numbers(self):
        m = QuaternionMatrix.scalar(Quaternion(Fraction(1, 2), 0, 0, 0), 1, exact=True)
        assert m.to_lists() == [[["1/2", 0, 0, 0]]]

    def test_batched_matmul(self, rng):
        a = rng.normal(size=(5, 2, 2, 4))
        b = rng.normal(size=(5, 2, 2, 4))
        out = qmatmul(a, b)
        assert out.shape == (5, 2, 2, 4)
        for t in range(5):
            expected = embed_array(a[t]).reshape(4, 4) @ embed_array(b[t]).reshape(4, 4)
            assert np.allclose(embed_array(out[t]).reshape(4, 4), expected)
