"""Cross-checks: the alternating path series, Catalan limits and the orthogonal relation."""

from __future__ import annotations

from fractions import Fraction
from functools import cache

import numpy as np
import structlog
import sympy

from src.combinatorics import IntegerPartition, Pairing
from src.exceptions import WeingartenError

from .gram import gram, orthogonal_gram_entry, pairings_of_degree
from .scalars import N, Scalar, ScalarField, simplify
from .table import WeingartenTable, solve_classes, weingarten_table

logger = structlog.get_logger()

MAX_SERIES_SYMBOLS = 6
MAX_SERIES_DEPTH = 8


def weingarten_series_check(n: int, pi_plus: Pairing, pi_minus: Pairing, depth: int, at: int = 100) -> Fraction:
    """Partial sum (2N)^(−n/2) Σ_{k≤depth} (−1)^k Σ_paths ∏ M, over paths π₀≠π₁≠…≠π_k.

    M is the rescaled Gram matrix minus the identity, so the off-diagonal
    step weight is (−2N)^(−d/2) with d = n − 2#(πᵢ∨πᵢ₊₁).
    """
    if n > MAX_SERIES_SYMBOLS or depth > MAX_SERIES_DEPTH or depth < 0:
        raise WeingartenError(f"series check supports n ≤ {MAX_SERIES_SYMBOLS} and 0 ≤ depth ≤ {MAX_SERIES_DEPTH}")
    g = gram(n, at)
    pairings = pairings_of_degree(n)
    start, end = pairings.index(pi_plus), pairings.index(pi_minus)
    scale = Fraction(2 * at) ** (n // 2)
    step = g.entries / scale
    for i in range(len(pairings)):
        step[i, i] -= 1

    vector = np.array([Fraction(int(i == start)) for i in range(len(pairings))], dtype=object)
    total = vector[end]
    for k in range(1, depth + 1):
        vector = vector.dot(step)
        total += -vector[end] if k % 2 else vector[end]
    return total / scale


def catalan_asymptote(lam: IntegerPartition | tuple[int, ...]) -> int:
    """∏ₖ (−1)^(λₖ−1) C_(λₖ−1), the N → ∞ limit of the normalized wg(λ)."""
    result = 1
    for part in lam:
        sign = -1 if (part - 1) % 2 else 1
        result *= sign * int(sympy.catalan(part - 1))
    return result


@cache
def orthogonal_table(n: int, at: int | None = None) -> WeingartenTable:
    """Orthogonal Wg with Gram d^#(π₁∨π₂); ``at`` fixes d, otherwise d is the symbol N."""
    ring = ScalarField(at)
    return WeingartenTable(n=n, ring=ring, by_partition=solve_classes(n, ring, orthogonal_gram_entry))


def orthogonal_relation_check(n: int, at: int | None = None) -> bool:
    """Wg^Sp(N) = (−1)^(n/2) Wg^O(−2N) on every class."""
    sign = -1 if (n // 2) % 2 else 1
    symplectic = weingarten_table(n, at)
    if at is None:
        orthogonal = orthogonal_table(n)
        differences: list[Scalar] = [
            simplify(v - sign * orthogonal[lam].subs(N, -2 * N)) for lam, v in symplectic.by_partition.items()
        ]
    else:
        orthogonal = orthogonal_table(n, -2 * at)
        differences = [v - sign * orthogonal[lam] for lam, v in symplectic.by_partition.items()]
    ok = all(d == 0 for d in differences)
    logger.debug("Orthogonal relation checked", n=n, at=at, ok=ok)
    return ok
