"""Exact Gauss-Jordan elimination over Fractions on numpy object arrays."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

import numpy as np


def as_fraction_array(rows: Any) -> np.ndarray:
    arr = np.array(rows, dtype=object)
    return np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr


def identity_matrix(n: int) -> np.ndarray:
    return np.array([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], dtype=object)


def inverse_matrix(matrix: Any) -> np.ndarray:
    """Exact inverse; raises ZeroDivisionError on a singular matrix."""
    X = as_fraction_array(matrix)
    n = X.shape[0]
    if X.shape != (n, n):
        raise ValueError(f"matrix must be square, got shape {X.shape}")
    Y = identity_matrix(n)

    for i in range(n):
        pivot = next((j for j in range(i, n) if X[j, i] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is not invertible")
        if pivot != i:
            X[[i, pivot]] = X[[pivot, i]]
            Y[[i, pivot]] = Y[[pivot, i]]
        p = X[i, i]
        X[i, :] = X[i, :] / p
        Y[i, :] = Y[i, :] / p
        for j in range(n):
            if j != i and X[j, i] != 0:
                f = X[j, i]
                X[j, :] = X[j, :] - f * X[i, :]
                Y[j, :] = Y[j, :] - f * Y[i, :]
    return Y


def solve_consistent(rows: Any, rhs: Any) -> list[Fraction]:
    """Unique solution of a possibly overdetermined consistent system A x = b.

    Raises ZeroDivisionError when the solution is not unique and ValueError
    when the system is inconsistent.
    """
    A = as_fraction_array(rows)
    b = as_fraction_array(rhs)
    m, k = A.shape
    aug = np.concatenate([A, b.reshape(m, 1)], axis=1)
    row = 0
    for col in range(k):
        pivot = next((r for r in range(row, m) if aug[r, col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError(f"system is rank deficient in column {col}")
        if pivot != row:
            aug[[row, pivot]] = aug[[pivot, row]]
        aug[row, :] = aug[row, :] / aug[row, col]
        for r in range(m):
            if r != row and aug[r, col] != 0:
                aug[r, :] = aug[r, :] - aug[r, col] * aug[row, :]
        row += 1
    if any(aug[r, k] != 0 for r in range(row, m)):
        raise ValueError("system is inconsistent")
    return [aug[i, k] for i in range(k)]
