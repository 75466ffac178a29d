"""Independent exact expectations by direct summation over matrix entries.

Each random matrix is written as a linear combination of unit quaternion
matrices with random real coefficients; the expression is multilinear in
its factors, so its expectation is a sum of contractions of basis matrices
weighted by joint moments of those coefficients. Gaussian coefficients have
Wick moments; for Haar symplectic matrices the moments come from the Sp(N)
invariant projection on the 2N×2N complex embedding.

Nothing here touches premap enumeration, which makes these sums a check on
the expansion engine. They are exponential in n and N.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from fractions import Fraction
from functools import cache
from typing import Any

import numpy as np
import structlog

from src.combinatorics import Pairing, double_factorial, enumerate_pairings
from src.ensembles import EnsembleKind, EnsembleSpec
from src.exceptions import CapExceededError, ExpansionError, SingularGramError
from src.quaternion import Quaternion, QuaternionMatrix, eval_contraction_exact
from src.utils.constants import DEFAULT_WICK_CAP
from src.weingarten import inverse_matrix

from .spec import ExpressionSpec

logger = structlog.get_logger()

# (weight, {symbol: matrix standing in for X_symbol})
SlotTerm = tuple[Fraction, dict[int, QuaternionMatrix]]

# Components of a quaternion entry as combinations of its 2×2 embedding:
# component → [(s, t, factor, power of i)]
_COMPONENT_ENTRIES: dict[int, tuple[tuple[int, int, Fraction, int], ...]] = {
    0: ((0, 0, Fraction(1, 2), 0), (1, 1, Fraction(1, 2), 0)),
    1: ((0, 0, Fraction(-1, 2), 1), (1, 1, Fraction(1, 2), 1)),
    2: ((0, 1, Fraction(1, 2), 0), (1, 0, Fraction(-1, 2), 0)),
    3: ((0, 1, Fraction(-1, 2), 1), (1, 0, Fraction(-1, 2), 1)),
}

_GAUSSIAN_VARIANCE = Fraction(1, 4)


# -- Haar moments -------------------------------------------------------------


def _form(i: int, j: int) -> int:
    """J̃ = I_N ⊗ [[0, 1], [−1, 0]] on 2N indices."""
    if i // 2 != j // 2 or i % 2 == j % 2:
        return 0
    return 1 if i % 2 == 0 else -1


def _tensor(pairing: Pairing, idx: Sequence[int]) -> int:
    value = 1
    for a, b in pairing.pairs():
        value *= _form(idx[a - 1], idx[b - 1])
        if not value:
            return 0
    return value


def _support(pairing: Pairing, dim: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Index tuples where the invariant tensor of ``pairing`` is nonzero, with its value."""
    pairs = list(pairing.pairs())
    m = 2 * len(pairs)
    for firsts in itertools.product(range(dim), repeat=len(pairs)):
        idx = [0] * m
        sign = 1
        for (a, b), i in zip(pairs, firsts, strict=True):
            j = i + 1 if i % 2 == 0 else i - 1
            idx[a - 1], idx[b - 1] = i, j
            sign *= _form(i, j)
        yield tuple(idx), sign


@cache
def _invariant_weingarten(m: int, n_value: int) -> tuple[tuple[Pairing, ...], np.ndarray]:
    pairings = tuple(enumerate_pairings(range(1, m + 1)))
    dim = 2 * n_value
    supports = [dict(_support(p, dim)) for p in pairings]
    gram = [[sum(v * sq.get(idx, 0) for idx, v in sp.items()) for sq in supports] for sp in supports]
    try:
        wg = inverse_matrix(gram)
    except ZeroDivisionError as e:
        raise SingularGramError(n_value, m) from e
    return pairings, wg


def haar_projection_moment(rows: Sequence[int], cols: Sequence[int], n_value: int) -> Fraction:
    """E[V_{i₁j₁} ⋯ V_{iₘjₘ}] for V the 2N×2N embedding of a Haar Sp(N) matrix."""
    m = len(rows)
    if m != len(cols):
        raise ExpansionError("row and column index lists differ in length")
    if m % 2:
        return Fraction(0)
    if m == 0:
        return Fraction(1)
    pairings, wg = _invariant_weingarten(m, n_value)
    left = [_tensor(p, rows) for p in pairings]
    right = [_tensor(q, cols) for q in pairings]
    total = Fraction(0)
    for a, lv in enumerate(left):
        if not lv:
            continue
        for b, rv in enumerate(right):
            if rv:
                total += lv * wg[a, b] * rv
    return total


@cache
def haar_component_moment(entries: tuple[tuple[int, int, int], ...], n_value: int) -> Fraction:
    """E[∏ x_comp(U_rc)] over (r, c, comp) triples, real by construction."""
    total = Fraction(0)
    for choice in itertools.product(*(_COMPONENT_ENTRIES[comp] for _, _, comp in entries)):
        power = sum(item[3] for item in choice)
        if power % 2:
            continue
        factor = Fraction(1 if power % 4 == 0 else -1)
        for item in choice:
            factor *= item[2]
        rows = [2 * r + s for (r, _, _), (s, _, _, _) in zip(entries, choice, strict=True)]
        cols = [2 * c + t for (_, c, _), (_, t, _, _) in zip(entries, choice, strict=True)]
        total += factor * haar_projection_moment(rows, cols, n_value)
    return total


# -- slot expansions ----------------------------------------------------------


def _unit(rows: int, cols: int, r: int, c: int, comp: int) -> QuaternionMatrix:
    out = QuaternionMatrix.zeros(rows, cols, exact=True)
    out.data[r, c, comp] = Fraction(1)
    return out


def _variables(rows: int, cols: int) -> list[tuple[int, int, int]]:
    return [(r, c, comp) for r in range(rows) for c in range(cols) for comp in range(4)]


class ColourExpansion:
    """One colour written as Σ (moment) · (basis matrices) over coefficient assignments."""

    def __init__(self, ensemble: EnsembleSpec, symbols: Sequence[int], n_value: int) -> None:
        self.ensemble = ensemble
        self.symbols = list(symbols)
        self.n_value = n_value

    @property
    def kind(self) -> EnsembleKind:
        return self.ensemble.kind

    def _slots(self) -> list[tuple[int, int]]:
        per_symbol = 2 if self.kind is EnsembleKind.WISHART else 1
        return [(k, s) for k in self.symbols for s in range(per_symbol)]

    def _shape(self) -> tuple[int, int]:
        if self.kind is EnsembleKind.WISHART:
            assert self.ensemble.M is not None
            return self.ensemble.M, self.n_value
        return self.n_value, self.n_value

    def size(self) -> int:
        """Number of assignments summed."""
        if self.kind is EnsembleKind.IDENTITY:
            return 1
        rows, cols = self._shape()
        count = 4 * rows * cols
        if self.kind is EnsembleKind.HAAR:
            return count ** len(self.symbols)
        slots = len(self._slots())
        if slots % 2:
            return 0
        return double_factorial(slots - 1) * count ** (slots // 2)

    def _matrix(self, symbol_vars: Sequence[tuple[int, int, int]]) -> QuaternionMatrix:
        rows, cols = self._shape()
        if self.kind is EnsembleKind.WISHART:
            assert self.ensemble.weight is not None
            left, right = (_unit(rows, cols, *v) for v in symbol_vars)
            return left.adjoint() @ self.ensemble.weight @ right
        unit = _unit(rows, cols, *symbol_vars[0])
        if self.kind is EnsembleKind.GSE:
            return unit + unit.adjoint()
        return unit

    def _scale(self) -> Fraction:
        n = Fraction(self.n_value)
        pairs = len(self._slots()) // 2
        if self.kind is EnsembleKind.GINIBRE:
            return (_GAUSSIAN_VARIANCE / n) ** pairs
        if self.kind is EnsembleKind.GSE:
            return (_GAUSSIAN_VARIANCE / (2 * n)) ** pairs
        return _GAUSSIAN_VARIANCE**pairs / n ** len(self.symbols)

    def terms(self) -> Iterator[SlotTerm]:
        if self.kind is EnsembleKind.IDENTITY:
            identity = QuaternionMatrix.identity(self.n_value, exact=True)
            yield Fraction(1), {k: identity for k in self.symbols}
        elif self.kind is EnsembleKind.HAAR:
            yield from self._haar_terms()
        elif self.kind in (EnsembleKind.GINIBRE, EnsembleKind.GSE, EnsembleKind.WISHART):
            yield from self._wick_terms()
        else:
            raise ExpansionError(f"no exact oracle for {self.kind.value} colour {self.ensemble.colour!r}")

    def _wick_terms(self) -> Iterator[SlotTerm]:
        slots = self._slots()
        if len(slots) % 2:
            return
        variables = _variables(*self._shape())
        scale = self._scale()
        per_symbol = len(slots) // len(self.symbols)
        for pairing in enumerate_pairings(range(len(slots))):
            pairs = list(pairing.pairs())
            for values in itertools.product(variables, repeat=len(pairs)):
                assigned: dict[int, tuple[int, int, int]] = {}
                for (a, b), v in zip(pairs, values, strict=True):
                    assigned[a] = assigned[b] = v
                matrices = {
                    k: self._matrix([assigned[i * per_symbol + s] for s in range(per_symbol)])
                    for i, k in enumerate(self.symbols)
                }
                yield scale, matrices

    def _haar_terms(self) -> Iterator[SlotTerm]:
        variables = _variables(self.n_value, self.n_value)
        for values in itertools.product(variables, repeat=len(self.symbols)):
            moment = haar_component_moment(tuple(sorted(values)), self.n_value)
            if moment:
                yield moment, {k: self._matrix([v]) for k, v in zip(self.symbols, values, strict=True)}


# -- expectation --------------------------------------------------------------


def _zero_like(spec: ExpressionSpec, n_value: int) -> Any:
    if spec.shape == "scalar":
        return Fraction(0)
    if spec.shape == "quaternion":
        return Quaternion(Fraction(0), Fraction(0), Fraction(0), Fraction(0))
    return QuaternionMatrix.zeros(n_value, exact=True)


def exact_expectation(
    spec: ExpressionSpec,
    n_value: int,
    *,
    cap: int = DEFAULT_WICK_CAP,
    allow_haar: bool = True,
) -> Any:
    """E[Re_φRe tr_φtr(X₁^ε₁ Y₁, …)] at N = ``n_value`` by direct summation."""
    ys = spec.y_matrices
    if ys is not None and any(not y.exact for y in ys):
        raise ExpansionError("the exact oracle needs exact Y matrices")
    expansions = []
    for colour in spec.colours:
        ensemble = spec.ensemble(colour)
        if ensemble.kind is EnsembleKind.HAAR and not allow_haar:
            raise ExpansionError(f"colour {colour!r} is Haar; the Wick oracle covers Gaussian and identity colours")
        if ensemble.kind is EnsembleKind.EMPIRICAL:
            raise ExpansionError(f"colour {colour!r} has tabulated moments only and no entry distribution")
        expansions.append(ColourExpansion(ensemble, spec.symbols_of(colour), n_value))

    requested = 1
    for expansion in expansions:
        requested *= expansion.size()
    if requested > cap:
        raise CapExceededError(
            f"direct summation would visit {requested} assignments, cap is {cap}", requested=requested, cap=cap
        )

    phi_re, phi_tr = spec.premaps()
    identity = QuaternionMatrix.identity(n_value, exact=True)
    total = _zero_like(spec, n_value)
    visited = 0
    for combo in itertools.product(*(list(e.terms()) for e in expansions)):
        weight = Fraction(1)
        stand_ins: dict[int, QuaternionMatrix] = {}
        for w, matrices in combo:
            weight *= w
            stand_ins.update(matrices)
        factors = []
        for k in range(1, spec.n + 1):
            x = stand_ins[k] if spec.eps[k - 1] == 1 else stand_ins[k].adjoint()
            factors.append(x @ (ys[k - 1] if ys is not None else identity))
        total = total + weight * eval_contraction_exact(phi_re, phi_tr, factors)
        visited += 1
    logger.debug("Direct summation finished", assignments=visited, n=n_value)
    return total


def wick_exact_gaussian(spec: ExpressionSpec, n_value: int, *, cap: int = DEFAULT_WICK_CAP) -> Any:
    """Direct Wick summation for Gaussian and identity colours."""
    return exact_expectation(spec, n_value, cap=cap, allow_haar=False)
