"""Quaternions and quaternionic matrices.

A quaternion a + bi + cj + dk is stored as the component vector (a, b, c, d).
Matrices are numpy arrays of shape (..., rows, cols, 4): float64 for
numerical work, object arrays of Fractions for exact work. Leading axes are
batch axes.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np
import sympy

from src.exceptions import DimensionMismatchError

# (xy)_r = Σ STRUCTURE[p, q, r] x_p y_q
STRUCTURE = np.zeros((4, 4, 4), dtype=np.int64)
for _p, _q, _r, _s in (
    (0, 0, 0, 1), (1, 1, 0, -1), (2, 2, 0, -1), (3, 3, 0, -1),
    (0, 1, 1, 1), (1, 0, 1, 1), (2, 3, 1, 1), (3, 2, 1, -1),
    (0, 2, 2, 1), (1, 3, 2, -1), (2, 0, 2, 1), (3, 1, 2, 1),
    (0, 3, 3, 1), (1, 2, 3, 1), (2, 1, 3, -1), (3, 0, 3, 1),
):  # fmt: skip
    STRUCTURE[_p, _q, _r] = _s

CONJUGATE = np.array([1, -1, -1, -1])


def qmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Componentwise quaternion product over the last axis, broadcasting the rest."""
    a0, a1, a2, a3 = (x[..., i] for i in range(4))
    b0, b1, b2, b3 = (y[..., i] for i in range(4))
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def qconj(x: np.ndarray) -> np.ndarray:
    return x * CONJUGATE


def qmatmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Matrix product of quaternion arrays (..., r, m, 4) @ (..., m, c, 4)."""
    if x.shape[-2] != y.shape[-3]:
        raise DimensionMismatchError(f"cannot multiply {x.shape[-3:-1]} by {y.shape[-3:-1]}")
    if x.dtype != object and y.dtype != object:
        return np.einsum("...ijp,...jkq,pqr->...ikr", x, y, STRUCTURE)
    return qmul(x[..., :, :, None, :], y[..., None, :, :, :]).sum(axis=-3)


def adjoint_array(x: np.ndarray) -> np.ndarray:
    return np.swapaxes(qconj(x), -2, -3)


def embed_array(x: np.ndarray) -> np.ndarray:
    """Complex form (..., r, 2, c, 2) with q ↦ [[a+bi, c+di], [−c+di, a−bi]]."""
    x = np.asarray(x, dtype=np.float64)
    a, b, c, d = (x[..., i] for i in range(4))
    top = np.stack([a + 1j * b, c + 1j * d], axis=-1)
    bottom = np.stack([-c + 1j * d, a - 1j * b], axis=-1)
    block = np.stack([top, bottom], axis=-2)  # (..., r, c, 2, 2)
    return np.moveaxis(block, -2, -3)


def from_embedding_array(e: np.ndarray) -> np.ndarray:
    """Inverse of :func:`embed_array` on arrays of shape (..., r, 2, c, 2)."""
    z = e[..., :, 0, :, 0]
    w = e[..., :, 0, :, 1]
    return np.stack([z.real, z.imag, w.real, w.imag], axis=-1)


def spin_index(eta: int) -> int:
    if eta not in (1, -1):
        raise DimensionMismatchError(f"spin index must be ±1, got {eta}")
    return 0 if eta == 1 else 1


@dataclass(frozen=True)
class Quaternion:
    """a + bi + cj + dk with exact or float components."""

    a: Any = 0
    b: Any = 0
    c: Any = 0
    d: Any = 0

    @classmethod
    def from_list(cls, values: Sequence[Any]) -> Quaternion:
        if len(values) != 4:
            raise DimensionMismatchError(f"a quaternion has four components, got {len(values)}")
        return cls(*values)

    @classmethod
    def one(cls) -> Quaternion:
        return cls(1, 0, 0, 0)

    def components(self) -> tuple[Any, Any, Any, Any]:
        return (self.a, self.b, self.c, self.d)

    def to_list(self) -> list[Any]:
        return list(self.components())

    def as_array(self) -> np.ndarray:
        return np.array(self.components(), dtype=object)

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(*(x + y for x, y in zip(self.components(), other.components(), strict=True)))

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion(*(x - y for x, y in zip(self.components(), other.components(), strict=True)))

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: Quaternion | Any) -> Quaternion:
        if isinstance(other, Quaternion):
            return Quaternion(*qmul(self.as_array(), other.as_array()).tolist())
        return Quaternion(*(x * other for x in self.components()))

    def __rmul__(self, other: Any) -> Quaternion:
        return Quaternion(*(other * x for x in self.components()))

    def __truediv__(self, other: Any) -> Quaternion:
        return Quaternion(*(x / other for x in self.components()))

    def conj(self) -> Quaternion:
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    @property
    def re(self) -> Any:
        return self.a

    def norm2(self) -> Any:
        return self.a**2 + self.b**2 + self.c**2 + self.d**2

    def is_real(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def entry(self, eta: int, theta: int) -> Any:
        """[q]_{η,θ} of the 2×2 complex form; exact components give sympy Gaussian rationals."""
        i, j = spin_index(eta), spin_index(theta)
        exact = not any(isinstance(x, float) for x in self.components())
        unit = sympy.I if exact else 1j
        a, b, c, d = (sympy.sympify(x) for x in self.components()) if exact else self.components()
        table = ((a + unit * b, c + unit * d), (-c + unit * d, a - unit * b))
        return table[i][j]

    def embed(self) -> np.ndarray:
        return embed_array(np.array([[self.components()]], dtype=np.float64))[0, :, 0, :]

    def isclose(self, other: Quaternion, tol: float = 1e-10) -> bool:
        return all(abs(float(x) - float(y)) <= tol for x, y in zip(self.components(), other.components(), strict=True))

    def __str__(self) -> str:
        return "[" + ", ".join(str(x) for x in self.components()) + "]"


class QuaternionMatrix:
    """A rows × cols matrix of quaternions."""

    def __init__(self, data: np.ndarray) -> None:
        data = np.asarray(data)
        if data.ndim != 3 or data.shape[-1] != 4:
            raise DimensionMismatchError(f"quaternion matrix data must have shape (rows, cols, 4), got {data.shape}")
        self.data = data

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[Sequence[Any]]], exact: bool = False) -> QuaternionMatrix:
        if exact:
            data = np.array([[[Fraction(x) for x in q] for q in row] for row in rows], dtype=object)
        else:
            data = np.array(rows, dtype=np.float64)
        return cls(data)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, exact: bool = False) -> QuaternionMatrix:
        cols = rows if cols is None else cols
        if exact:
            return cls(np.full((rows, cols, 4), Fraction(0), dtype=object))
        return cls(np.zeros((rows, cols, 4)))

    @classmethod
    def identity(cls, n: int, exact: bool = False) -> QuaternionMatrix:
        return cls.scalar(Quaternion.one(), n, exact)

    @classmethod
    def scalar(cls, q: Quaternion, n: int, exact: bool = False) -> QuaternionMatrix:
        """q·I_n."""
        out = cls.zeros(n, exact=exact)
        for i in range(n):
            out.data[i, i] = [Fraction(x) for x in q.components()] if exact else [float(x) for x in q.components()]
        return out

    @classmethod
    def random_exact(
        cls, rows: int, cols: int | None = None, rng: np.random.Generator | None = None, bound: int = 3
    ) -> QuaternionMatrix:
        """Small-integer entries in [−bound, bound], stored exactly."""
        rng = rng or np.random.default_rng()
        cols = rows if cols is None else cols
        values = rng.integers(-bound, bound + 1, size=(rows, cols, 4))
        return cls(np.vectorize(lambda v: Fraction(int(v)), otypes=[object])(values))

    @classmethod
    def from_embedding(cls, e: np.ndarray) -> QuaternionMatrix:
        e = np.asarray(e)
        if e.ndim == 2:
            r, c = e.shape[0] // 2, e.shape[1] // 2
            e = e.reshape(r, 2, c, 2)
        return cls(from_embedding_array(e))

    # -- shape --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.data.shape[0], self.data.shape[1])

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def exact(self) -> bool:
        return self.data.dtype == object

    # -- arithmetic ---------------------------------------------------------

    def __getitem__(self, index: tuple[int, int]) -> Quaternion:
        return Quaternion(*self.data[index].tolist())

    def entry4(self, i: int, j: int, eta: int, theta: int) -> Any:
        """Four-index access (ι₁, ι₂; η₁, η₂) through the 2×2 complex form."""
        return self[i, j].entry(eta, theta)

    def __matmul__(self, other: QuaternionMatrix) -> QuaternionMatrix:
        return QuaternionMatrix(qmatmul(self.data, other.data))

    def __add__(self, other: QuaternionMatrix) -> QuaternionMatrix:
        self._check_same_shape(other)
        return QuaternionMatrix(self.data + other.data)

    def __sub__(self, other: QuaternionMatrix) -> QuaternionMatrix:
        self._check_same_shape(other)
        return QuaternionMatrix(self.data - other.data)

    def __mul__(self, scalar: Any) -> QuaternionMatrix:
        """Multiplication by a real scalar."""
        return QuaternionMatrix(self.data * scalar)

    __rmul__ = __mul__

    def left_scale(self, q: Quaternion) -> QuaternionMatrix:
        """q·A, entrywise on the left."""
        return QuaternionMatrix(qmul(self._coerce(q), self.data))

    def right_scale(self, q: Quaternion) -> QuaternionMatrix:
        """A·q, entrywise on the right."""
        return QuaternionMatrix(qmul(self.data, self._coerce(q)))

    def _coerce(self, q: Quaternion) -> np.ndarray:
        if self.exact:
            return np.array([Fraction(x) for x in q.components()], dtype=object)
        return np.array([float(x) for x in q.components()])

    def _check_same_shape(self, other: QuaternionMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shapes differ: {self.shape} and {other.shape}")

    def adjoint(self) -> QuaternionMatrix:
        return QuaternionMatrix(adjoint_array(self.data))

    def re(self) -> QuaternionMatrix:
        """Entrywise real part, as a quaternion matrix with vanishing imaginary parts."""
        out = self.data.copy()
        out[..., 1:] = 0 if not self.exact else Fraction(0)
        return QuaternionMatrix(out)

    def trace(self) -> Quaternion:
        if not self.is_square:
            raise DimensionMismatchError(f"trace of a non-square {self.shape} matrix")
        total = self.data[0, 0]
        for i in range(1, self.rows):
            total = total + self.data[i, i]
        return Quaternion(*total.tolist())

    def ntr(self) -> Quaternion:
        """Normalized trace Tr(A)/N."""
        t = self.trace()
        return t / Fraction(self.rows) if self.exact else t / float(self.rows)

    def embed(self) -> np.ndarray:
        r, c = self.shape
        return embed_array(self.data).reshape(2 * r, 2 * c)

    def to_float(self) -> QuaternionMatrix:
        return QuaternionMatrix(self.data.astype(np.float64))

    def to_lists(self) -> list[list[list[Any]]]:
        return [[[_plain(x) for x in q] for q in row] for row in self.data.tolist()]

    def allclose(self, other: QuaternionMatrix, tol: float = 1e-10) -> bool:
        return self.shape == other.shape and bool(
            np.allclose(self.data.astype(np.float64), other.data.astype(np.float64), atol=tol)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuaternionMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self.data == other.data))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        kind = "exact" if self.exact else "float"
        return f"QuaternionMatrix({self.rows}x{self.cols}, {kind})"


def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return float(x) if isinstance(x, (np.floating, float)) else x
