"""Re_π tr_ρ index contraction of quaternionic matrices.

Matrix indices live on classes {y, ρ(−y)} of the carrier; factor k of the
fundamental domain of π carries indices (ℓ(k), ℓ(ρ(k))) and is the adjoint
of A_|k| when k is negative. Spin indices run around the cycles of FD(π),
so a closed cycle contributes twice the real part of its ordered product.

Two evaluators are provided: a literal exact sum over matrix indices, and a
float tensor-network evaluation of the 2×2 complex form through einsum that
also accepts a leading batch axis.
"""

from __future__ import annotations

import itertools
import string
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np
import structlog

from src.combinatorics import SignedDomain, SignedPermutation, fd, with_infinity
from src.combinatorics.premaps import check_premap
from src.exceptions import IndexStructureError

from .algebra import Quaternion, QuaternionMatrix, adjoint_array, embed_array, from_embedding_array, qmul

logger = structlog.get_logger()

ContractionValue = Any  # scalar | Quaternion | QuaternionMatrix


def _aligned(pi: SignedPermutation, rho: SignedPermutation) -> tuple[SignedPermutation, SignedPermutation]:
    """Both premaps on the same carrier, adjoining a fixed ±∞ where one side lacks it."""
    if pi.domain.n != rho.domain.n:
        raise IndexStructureError(f"premaps act on ±[{pi.domain.n}] and ±[{rho.domain.n}]")
    if pi.domain.has_infinity != rho.domain.has_infinity:
        pi, rho = with_infinity(pi), with_infinity(rho)
    if pi.points != rho.points:
        raise IndexStructureError("premaps act on different point sets")
    return pi, rho


@dataclass(frozen=True)
class IndexStructure:
    """Index bookkeeping shared by both evaluators."""

    domain: SignedDomain
    factors: tuple[int, ...]
    klass: dict[int, int]
    closed_cycles: tuple[tuple[int, ...], ...]
    open_path: tuple[int, ...] | None
    spin_next: dict[int, int]
    re_count: int
    tr_count: int
    rho: SignedPermutation
    pi: SignedPermutation

    @property
    def num_classes(self) -> int:
        return len(set(self.klass.values()))

    @property
    def infinite(self) -> bool:
        return self.domain.has_infinity

    def output_classes(self) -> tuple[int, int]:
        """(row, column) classes ℓ(ρ(∞)), ℓ(∞)."""
        inf = self.domain.infinity
        return self.klass[self.rho(inf)], self.klass[inf]

    def summed_classes(self) -> list[int]:
        used = {self.klass[k] for k in self.factors} | {self.klass[self.rho(k)] for k in self.factors}
        if self.infinite:
            used -= set(self.output_classes())
        return sorted(used)

    def diagonal(self) -> bool:
        return self.infinite and self.rho(self.domain.infinity) == self.domain.infinity


def index_structure(pi: SignedPermutation, rho: SignedPermutation) -> IndexStructure:
    pi, rho = _aligned(pi, rho)
    check_premap(pi)
    check_premap(rho)
    domain = pi.domain

    klass: dict[int, int] = {}
    for y in sorted(pi.points, key=lambda k: (abs(k), k < 0)):
        if y in klass:
            continue
        partner = rho(-y)
        if partner == y:
            raise IndexStructureError(f"ρ maps {domain.label(-y)} to its negative")
        klass[y] = klass[partner] = len(set(klass.values()))

    fd_pi = fd(pi)
    closed: list[tuple[int, ...]] = []
    open_path = None
    spin_next: dict[int, int] = {}
    for cycle in fd_pi.cycles():
        for i, k in enumerate(cycle):
            spin_next[k] = cycle[(i + 1) % len(cycle)]
        if domain.has_infinity and domain.infinity in cycle:
            start = cycle.index(domain.infinity)
            open_path = cycle[start + 1 :] + cycle[:start]
        else:
            closed.append(cycle)

    factors = tuple(k for k in fd_pi.support if not domain.is_infinite(k))
    tr_count = len(fd(rho)) - (1 if domain.has_infinity else 0)
    return IndexStructure(
        domain=domain,
        factors=tuple(sorted(factors, key=lambda k: (abs(k), k < 0))),
        klass=klass,
        closed_cycles=tuple(closed),
        open_path=open_path,
        spin_next=spin_next,
        re_count=len(closed),
        tr_count=tr_count,
        rho=rho,
        pi=pi,
    )


def _check_matrices(structure: IndexStructure, matrices: Sequence[QuaternionMatrix | np.ndarray]) -> int:
    n = structure.domain.n
    if len(matrices) != n:
        raise IndexStructureError(f"expected {n} matrices, got {len(matrices)}")
    shapes = {tuple(np.shape(m.data if isinstance(m, QuaternionMatrix) else m)[-3:-1]) for m in matrices}
    if len(shapes) != 1:
        raise IndexStructureError(f"matrices have different shapes: {sorted(shapes)}")
    (rows, cols), = shapes
    if rows != cols:
        raise IndexStructureError(f"contraction needs square matrices, got {rows}x{cols}")
    return rows


def eval_contraction_exact(
    pi: SignedPermutation,
    rho: SignedPermutation,
    matrices: Sequence[QuaternionMatrix],
    normalizer: int | None = None,
) -> ContractionValue:
    """Literal sum over matrix indices in exact arithmetic."""
    s = index_structure(pi, rho)
    dim = _check_matrices(s, matrices)
    norm = Fraction(dim if normalizer is None else normalizer) ** (-s.tr_count)
    data = [m.data for m in matrices]
    zero = np.array([Fraction(0)] * 4, dtype=object)
    one = np.array([Fraction(1), Fraction(0), Fraction(0), Fraction(0)], dtype=object)

    def factor(k: int, idx: dict[int, int]) -> np.ndarray:
        left, right = idx[s.klass[k]], idx[s.klass[s.rho(k)]]
        if k > 0:
            return data[k - 1][left, right]
        return data[-k - 1][right, left] * np.array([1, -1, -1, -1], dtype=object)

    def ordered(path: Sequence[int], idx: dict[int, int]) -> np.ndarray:
        value = one
        for k in path:
            value = qmul(value, factor(k, idx))
        return value

    summed = s.summed_classes()
    outputs = [(r, c) for r in range(dim) for c in range(dim)] if s.infinite else [None]
    result: dict[tuple[int, int] | None, np.ndarray] = {}
    for out in outputs:
        if s.diagonal() and out is not None and out[0] != out[1]:
            continue
        total = zero
        for values in itertools.product(range(dim), repeat=len(summed)):
            idx = dict(zip(summed, values, strict=True))
            if out is not None:
                row_class, col_class = s.output_classes()
                idx[row_class], idx[col_class] = out
            scalar = Fraction(1)
            for cycle in s.closed_cycles:
                scalar *= ordered(cycle, idx)[0]
                if scalar == 0:
                    break
            if scalar == 0:
                continue
            total = total + (ordered(s.open_path or (), idx) * scalar if s.infinite else one * scalar)
        result[out] = total * norm

    if not s.infinite:
        return result[None][0]
    if s.diagonal():
        return Quaternion(*result[(0, 0)].tolist())
    out_data = np.empty((dim, dim, 4), dtype=object)
    for (r, c), value in result.items():
        out_data[r, c] = value
    return QuaternionMatrix(out_data)


_LETTERS = string.ascii_letters


def eval_contraction_float(
    pi: SignedPermutation,
    rho: SignedPermutation,
    matrices: Sequence[QuaternionMatrix | np.ndarray],
    normalizer: int | None = None,
) -> Any:
    """Tensor-network evaluation; matrices may carry leading batch axes.

    Returns a float (array) for closed expressions and quaternion arrays of
    shape (..., 4) for diagonal or (..., N, N, 4) for matrix-valued results.
    """
    s = index_structure(pi, rho)
    dim = _check_matrices(s, matrices)
    arrays = [np.asarray(m.data if isinstance(m, QuaternionMatrix) else m, dtype=np.float64) for m in matrices]

    if s.num_classes + len(s.spin_next) + 2 > len(_LETTERS):
        raise IndexStructureError("expression too large for tensor-network evaluation")
    letters = iter(_LETTERS)
    class_letter = {c: next(letters) for c in sorted(set(s.klass.values()))}
    spin_letter = {k: next(letters) for k in s.spin_next}
    extra = [next(letters), next(letters)]

    operands: list[np.ndarray] = []
    terms: list[str] = []
    for k in s.factors:
        x = arrays[abs(k) - 1]
        x = x if k > 0 else adjoint_array(x)
        operands.append(embed_array(x))
        terms.append(
            "..."
            + class_letter[s.klass[k]]
            + spin_letter[k]
            + class_letter[s.klass[s.rho(k)]]
            + spin_letter[s.spin_next[k]]
        )

    output = "..."
    if s.infinite:
        inf = s.domain.infinity
        row_c, col_c = s.output_classes()
        row, col = class_letter[row_c], class_letter[col_c]
        if row_c == col_c:
            row = extra[0]
            operands.append(np.eye(dim))
            terms.append(row + col)
        spin_row, spin_col = spin_letter[s.spin_next[inf]], spin_letter[inf]
        if s.spin_next[inf] == inf:
            spin_row = extra[1]
            operands.append(np.eye(2))
            terms.append(spin_row + spin_col)
        output += row + spin_row + col + spin_col

    norm = 2.0 ** (-s.re_count) * float(dim if normalizer is None else normalizer) ** (-s.tr_count)
    if operands:
        value = np.einsum(",".join(terms) + "->" + output, *operands, optimize="greedy") * norm
    else:
        value = np.asarray(norm, dtype=np.complex128)

    if not s.infinite:
        return value.real
    quaternions = from_embedding_array(value)
    if s.diagonal():
        return quaternions[..., 0, 0, :]
    return quaternions


def eval_contraction(
    pi: SignedPermutation,
    rho: SignedPermutation,
    matrices: Sequence[QuaternionMatrix],
    normalizer: int | None = None,
) -> ContractionValue:
    """Re_π tr_ρ(A₁, …, Aₙ): exact when every matrix is exact, float otherwise."""
    if matrices and all(isinstance(m, QuaternionMatrix) and m.exact for m in matrices):
        return eval_contraction_exact(pi, rho, matrices, normalizer)
    value = eval_contraction_float(pi, rho, matrices, normalizer)
    s = index_structure(pi, rho)
    if not s.infinite:
        return float(value)
    if s.diagonal():
        return Quaternion(*(float(x) for x in value))
    return QuaternionMatrix(value)
