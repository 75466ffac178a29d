"""Gram matrices of invariant tensors indexed by pairings."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cache
from typing import Any

import numpy as np
import structlog

from src.combinatorics import IntegerPartition, Pairing, enumerate_pairings, join
from src.exceptions import CapExceededError, WeingartenError
from src.utils.constants import DEFAULT_FIXED_MAX_SYMBOLS

from .scalars import Scalar, ScalarField

logger = structlog.get_logger()


def check_degree(n: int, max_symbols: int = DEFAULT_FIXED_MAX_SYMBOLS) -> None:
    if n <= 0 or n % 2:
        raise WeingartenError(f"number of symbols must be positive and even, got {n}")
    if n > max_symbols:
        raise CapExceededError(f"{n} symbols exceed the Gram cap of {max_symbols}", requested=n, cap=max_symbols)


@cache
def pairings_of_degree(n: int) -> tuple[Pairing, ...]:
    """P₂(n) on {1..n} in the deterministic enumeration order."""
    return tuple(enumerate_pairings(range(1, n + 1)))


def join_lambda(p: Pairing, q: Pairing) -> IntegerPartition:
    """Λ(π₁∨π₂): half the block sizes of the join."""
    return IntegerPartition.of(len(b) // 2 for b in join(p.partition, q.partition).blocks)


def symplectic_gram_entry(blocks: int, n: int, ring: ScalarField) -> Scalar:
    """(−1)^(n/2)(−2N)^blocks."""
    sign = -1 if (n // 2) % 2 else 1
    return sign * ring.power(-2 * ring.N, blocks)


def orthogonal_gram_entry(blocks: int, n: int, ring: ScalarField) -> Scalar:
    """d^blocks with d the orthogonal dimension; ``ring.N`` plays the role of d."""
    return ring.power(ring.N, blocks)

GramEntry = Callable[[int, int, ScalarField], Scalar]


@dataclass(frozen=True)
class GramMatrix:
    """Inner products of pairing tensors, rows and columns in ``pairings`` order."""

    n: int
    ring: ScalarField
    pairings: tuple[Pairing, ...]
    entries: np.ndarray = field(repr=False)

    def entry(self, p: Pairing, q: Pairing) -> Scalar:
        index = {x: i for i, x in enumerate(self.pairings)}
        return self.entries[index[p], index[q]]

    def __len__(self) -> int:
        return len(self.pairings)

    def is_symmetric(self) -> bool:
        size = len(self)
        return all(self.entries[i, j] == self.entries[j, i] for i in range(size) for j in range(i + 1, size))

    def as_lists(self) -> list[list[Any]]:
        return self.entries.tolist()


def gram(
    n: int,
    at: int | None = None,
    *,
    entry: GramEntry = symplectic_gram_entry,
    max_symbols: int = DEFAULT_FIXED_MAX_SYMBOLS,
) -> GramMatrix:
    """Full Gram matrix over P₂(n), symbolic in N unless ``at`` fixes N."""
    check_degree(n, max_symbols)
    ring = ScalarField(at)
    pairings = pairings_of_degree(n)
    values = {b: entry(b, n, ring) for b in range(1, n // 2 + 1)}
    size = len(pairings)
    entries = np.empty((size, size), dtype=object)
    for i, p in enumerate(pairings):
        for j in range(i, size):
            blocks = len(join(p.partition, pairings[j].partition))
            entries[i, j] = entries[j, i] = values[blocks]
    logger.debug("Gram matrix built", n=n, size=size, at=at)
    return GramMatrix(n=n, ring=ring, pairings=pairings, entries=entries)
