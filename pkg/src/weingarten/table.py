"""Exact Weingarten tables.

Wg is a function of Λ(π₊∨π₋) only, so rather than inverting the full
Gram matrix the table is obtained from one row of Gram·Wg = I: fixing the
base pairing σ₀ and one representative τ per class gives a square system
with one unknown per integer partition of n/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from typing import Any, Literal

import numpy as np
import structlog
import sympy

from src.combinatorics import IntegerPartition, Pairing, integer_partitions
from src.exceptions import CapExceededError, SingularGramError, WeingartenError
from src.utils.constants import DEFAULT_FIXED_MAX_SYMBOLS, DEFAULT_SYMBOLIC_MAX_SYMBOLS

from .gram import GramEntry, check_degree, join_lambda, pairings_of_degree, symplectic_gram_entry
from .linalg import solve_consistent
from .scalars import Scalar, ScalarField, coefficients, evaluate_at, format_scalar, simplify

logger = structlog.get_logger()

WgForm = Literal["haar", "definition", "example"]

CONVENTION = (
    "wg(haar) = (-1)^(n/2 - len(lambda)) (2N)^(n - len(lambda)) Wg, the Haar cumulant weight; "
    "wg(definition) = (-2N)^(n - len(lambda)) Wg; wg(example) = (2N)^(n - len(lambda)) Wg; n counts symbols"
)


@dataclass(frozen=True)
class ClassStructure:
    """Field-independent counts behind the reduced system.

    ``counts[b, m, k]`` is the number of pairings ρ with Λ(ρ∨τ_b) equal to
    the m-th partition and k blocks in σ₀∨ρ.
    """

    n: int
    partitions: tuple[IntegerPartition, ...]
    representatives: tuple[Pairing, ...]
    counts: np.ndarray = field(repr=False)

    @property
    def identity_class(self) -> int:
        return self.partitions.index(IntegerPartition((1,) * (self.n // 2)))


@cache
def class_structure(n: int) -> ClassStructure:
    pairings = pairings_of_degree(n)
    base = pairings[0]
    partitions = tuple(integer_partitions(n // 2))
    index = {lam: i for i, lam in enumerate(partitions)}

    reps: dict[IntegerPartition, Pairing] = {}
    row_blocks = []
    for rho in pairings:
        lam = join_lambda(base, rho)
        reps.setdefault(lam, rho)
        row_blocks.append(len(lam))
    representatives = tuple(reps[lam] for lam in partitions)

    counts = np.zeros((len(partitions), len(partitions), n // 2 + 1), dtype=np.int64)
    for b, tau in enumerate(representatives):
        for rho, blocks in zip(pairings, row_blocks, strict=True):
            counts[b, index[join_lambda(rho, tau)], blocks] += 1
    return ClassStructure(n=n, partitions=partitions, representatives=representatives, counts=counts)


def _system(structure: ClassStructure, ring: ScalarField, entry: GramEntry) -> list[list[Scalar]]:
    n = structure.n
    values = [entry(k, n, ring) if k else ring.zero() for k in range(n // 2 + 1)]
    size = len(structure.partitions)
    rows = []
    for b in range(size):
        row = []
        for m in range(size):
            terms = [int(c) * values[k] for k, c in enumerate(structure.counts[b, m]) if c]
            row.append(ring.total(terms) if terms else ring.zero())
        rows.append(row)
    return rows


def solve_classes(n: int, ring: ScalarField, entry: GramEntry) -> dict[IntegerPartition, Scalar]:
    structure = class_structure(n)
    rows = _system(structure, ring, entry)
    rhs = [int(b == structure.identity_class) for b in range(len(rows))]
    if ring.symbolic:
        matrix = sympy.Matrix(rows)
        if sympy.cancel(matrix.det()) == 0:
            raise WeingartenError(f"Gram matrix of degree {n} is singular as a function of N")
        solution = [simplify(x) for x in matrix.LUsolve(sympy.Matrix(rhs))]
    else:
        try:
            solution = solve_consistent(rows, rhs)
        except (ZeroDivisionError, ValueError) as e:
            raise SingularGramError(int(ring.n_value or 0), n) from e
    return dict(zip(structure.partitions, solution, strict=True))


@dataclass(frozen=True)
class WeingartenTable:
    """Wg for one degree, indexed by Λ(π₊∨π₋)."""

    n: int
    ring: ScalarField
    by_partition: dict[IntegerPartition, Scalar]

    @property
    def symbolic(self) -> bool:
        return self.ring.symbolic

    @property
    def convention(self) -> str:
        return CONVENTION

    def __getitem__(self, lam: IntegerPartition | tuple[int, ...]) -> Scalar:
        key = lam if isinstance(lam, IntegerPartition) else IntegerPartition.of(lam)
        if key not in self.by_partition:
            raise WeingartenError(f"{key} is not a partition of {self.n // 2}")
        return self.by_partition[key]

    def entry(self, p: Pairing, q: Pairing) -> Scalar:
        """Wg(π₊, π₋) for two pairings of {1..n}."""
        if p.domain != q.domain or len(p.domain) != self.n:
            raise WeingartenError(f"pairings do not live on {self.n} symbols")
        return self.by_partition[join_lambda(p, q)]

    def full_matrix(self) -> np.ndarray:
        pairings = pairings_of_degree(self.n)
        size = len(pairings)
        out = np.empty((size, size), dtype=object)
        for i, p in enumerate(pairings):
            for j in range(i, size):
                out[i, j] = out[j, i] = self.by_partition[join_lambda(p, pairings[j])]
        return out

    def at(self, n_value: int) -> WeingartenTable:
        """The symbolic table evaluated at a concrete N."""
        if not self.symbolic:
            raise WeingartenError("table is already evaluated at a fixed N")
        values = {lam: evaluate_at(v, n_value) for lam, v in self.by_partition.items()}
        return WeingartenTable(self.n, ScalarField(n_value), values)

    def rows(self) -> list[dict[str, Any]]:
        out = []
        for lam, value in self.by_partition.items():
            num, den = coefficients(_as_sympy(value))
            out.append({"lambda": list(lam.parts), "num": num, "den": den, "value": format_scalar(value)})
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "at": self.ring.n_value,
            "convention": self.convention,
            "entries": self.rows(),
        }


def _as_sympy(value: Scalar) -> Any:
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    return value


def weingarten_table(
    n: int,
    at: int | None = None,
    *,
    symbolic_max_symbols: int = DEFAULT_SYMBOLIC_MAX_SYMBOLS,
    fixed_max_symbols: int = DEFAULT_FIXED_MAX_SYMBOLS,
) -> WeingartenTable:
    """Exact Wg table of degree n; symbolic in N unless ``at`` fixes N."""
    check_degree(n, fixed_max_symbols)
    if at is None and n > symbolic_max_symbols:
        raise CapExceededError(
            f"symbolic Weingarten tables are limited to {symbolic_max_symbols} symbols",
            requested=n,
            cap=symbolic_max_symbols,
        )
    return _cached_table(n, at)


@cache
def _cached_table(n: int, at: int | None) -> WeingartenTable:
    ring = ScalarField(at)
    values = solve_classes(n, ring, symplectic_gram_entry)
    logger.info("Weingarten table built", n=n, at=at, classes=len(values))
    return WeingartenTable(n=n, ring=ring, by_partition=values)


def class_residuals(table: WeingartenTable, entry: GramEntry = symplectic_gram_entry) -> list[Scalar]:
    """(Gram·Wg)(σ₀, τ_b) − δ for every class b; all zero for a correct table."""
    structure = class_structure(table.n)
    rows = _system(structure, table.ring, entry)
    out = []
    for b, row in enumerate(rows):
        terms = [c * table.by_partition[lam] for c, lam in zip(row, structure.partitions, strict=True)]
        value = table.ring.total(terms)
        residual = value - int(b == structure.identity_class)
        out.append(table.ring.simplify(residual))
    return out


def normalized(table: WeingartenTable, lam: IntegerPartition | tuple[int, ...], form: WgForm = "haar") -> Scalar:
    """Normalized wg(λ).

    "definition" is (−2N)^(n−ℓ)·Wg and "example" is (2N)^(n−ℓ)·Wg, ℓ the number
    of parts. "haar" is (−1)^(n/2−ℓ)(2N)^(n−ℓ)·Wg, the sign the Haar cumulants
    need for the expansion to match the projection oracle.
    """
    key = lam if isinstance(lam, IntegerPartition) else IntegerPartition.of(lam)
    exponent = table.n - len(key)
    two_n = 2 * table.ring.N
    if form == "definition":
        value = table.ring.power(-two_n, exponent) * table[key]
    elif form == "example":
        value = table.ring.power(two_n, exponent) * table[key]
    elif form == "haar":
        sign = -1 if (table.n // 2 - len(key)) % 2 else 1
        value = sign * table.ring.power(two_n, exponent) * table[key]
    else:
        raise WeingartenError(f"unknown wg form: {form}")
    return table.ring.simplify(value)


def haar_weight(table: WeingartenTable, lam: IntegerPartition | tuple[int, ...]) -> Scalar:
    """The normalized weight consumed by Haar cumulants."""
    return normalized(table, lam, "haar")


def wg_normalized(table: WeingartenTable, pi_plus: Pairing, pi_minus: Pairing, form: WgForm = "haar") -> Scalar:
    return normalized(table, join_lambda(pi_plus, pi_minus), form)
