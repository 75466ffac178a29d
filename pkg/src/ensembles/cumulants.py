"""Cumulant weights f(α) of each ensemble.

Every ensemble is a total function on premaps with an explicit support
predicate and a candidate enumerator, so the expansion engine only visits
premaps that can contribute.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterator, Sequence
from typing import ClassVar

import structlog

from src.combinatorics import (
    PreMap,
    SignedDomain,
    SignedPermutation,
    enumerate_alternating_premaps,
    enumerate_involution_premaps,
    enumerate_premaps,
    fd,
    haar_lambda,
    is_alternating,
    is_involution_premap,
    relabeled,
)
from src.combinatorics.premaps import check_premap
from src.exceptions import EnsembleError, WeingartenError
from src.quaternion import QuaternionMatrix, eval_contraction
from src.utils.constants import DEFAULT_FIXED_MAX_SYMBOLS, DEFAULT_SYMBOLIC_MAX_SYMBOLS
from src.weingarten import ScalarField, WeingartenTable, haar_weight, weingarten_table
from src.weingarten.scalars import Scalar

from .moments import MomentOracle, cumulants_from_moments
from .spec import EnsembleKind, EnsembleSpec

logger = structlog.get_logger()


def _positives(alpha: SignedPermutation) -> list[int]:
    return sorted(k for k in alpha.points if k > 0 and not alpha.domain.is_infinite(k))


def f_ginibre(alpha: SignedPermutation) -> int:
    return int(is_involution_premap(alpha) and is_alternating(alpha))


def f_gse(alpha: SignedPermutation) -> int:
    return int(is_involution_premap(alpha))


def f_identity(alpha: SignedPermutation) -> int:
    return int(alpha.is_identity())


def f_haar(alpha: SignedPermutation, table: WeingartenTable) -> Scalar:
    """wg(Λ(FD(α))) on alternating premaps, zero elsewhere."""
    if not is_alternating(alpha):
        return table.ring.zero()
    if table.n != len(_positives(alpha)):
        raise WeingartenError(f"Haar cumulant on {len(_positives(alpha))} symbols needs a table of that degree")
    return haar_weight(table, haar_lambda(alpha))


def f_wishart(
    alpha: SignedPermutation, weights: Sequence[QuaternionMatrix], ring: ScalarField | None = None
) -> Scalar:
    """Re_FD(α⁻¹) tr_FD(α⁻¹)(D₁, …, Dₙ), the trace normalized by N rather than M.

    ``weights[i]`` belongs to the i-th positive symbol of α in increasing order.
    """
    ring = ring or ScalarField()
    check_premap(alpha)
    positives = _positives(alpha)
    if len(weights) != len(positives):
        raise EnsembleError(f"Wishart cumulant on {len(positives)} symbols got {len(weights)} weight matrices")
    inverse = relabeled(alpha, positives).inverse()
    value = eval_contraction(inverse, inverse, list(weights), normalizer=1)
    return ring.convert(value) * ring.n_power(-len(fd(inverse)))


class CumulantFunction(ABC):
    """f restricted to one colour; α lives on ±I for the colour's symbols I."""

    kind: ClassVar[EnsembleKind]

    def __init__(
        self,
        ring: ScalarField,
        *,
        symbolic_max_symbols: int = DEFAULT_SYMBOLIC_MAX_SYMBOLS,
        fixed_max_symbols: int = DEFAULT_FIXED_MAX_SYMBOLS,
    ) -> None:
        self.ring = ring
        self.symbolic_max_symbols = symbolic_max_symbols
        self.fixed_max_symbols = fixed_max_symbols

    def supports(self, alpha: SignedPermutation) -> bool:
        """False only where f is known to vanish."""
        return True

    @abstractmethod
    def value(self, alpha: SignedPermutation) -> Scalar:
        """f(α) for α in the support."""

    def candidates(self, domain: SignedDomain, positives: Sequence[int]) -> Iterator[PreMap]:
        """Premaps on ±positives that may be in the support."""
        return enumerate_premaps(domain, positives)

    def __call__(self, alpha: SignedPermutation) -> Scalar:
        check_premap(alpha)
        return self.ring.convert(self.value(alpha)) if self.supports(alpha) else self.ring.zero()

    def nonzero_terms(self, domain: SignedDomain, positives: Sequence[int]) -> Iterator[tuple[PreMap, Scalar]]:
        for alpha in self.candidates(domain, positives):
            if not self.supports(alpha):
                continue
            value = self.ring.convert(self.value(alpha))
            if value != 0:
                yield alpha, value

    def table(self, n: int) -> WeingartenTable:
        return weingarten_table(
            n,
            self.ring.n_value,
            symbolic_max_symbols=self.symbolic_max_symbols,
            fixed_max_symbols=self.fixed_max_symbols,
        )


class GinibreCumulant(CumulantFunction):
    kind = EnsembleKind.GINIBRE

    def supports(self, alpha: SignedPermutation) -> bool:
        return bool(f_ginibre(alpha))

    def value(self, alpha: SignedPermutation) -> Scalar:
        return self.ring.one()

    def candidates(self, domain: SignedDomain, positives: Sequence[int]) -> Iterator[PreMap]:
        return enumerate_alternating_premaps(domain, positives)


class GseCumulant(CumulantFunction):
    kind = EnsembleKind.GSE

    def supports(self, alpha: SignedPermutation) -> bool:
        return bool(f_gse(alpha))

    def value(self, alpha: SignedPermutation) -> Scalar:
        return self.ring.one()

    def candidates(self, domain: SignedDomain, positives: Sequence[int]) -> Iterator[PreMap]:
        return enumerate_involution_premaps(domain, positives)


class IdentityCumulant(CumulantFunction):
    kind = EnsembleKind.IDENTITY

    def supports(self, alpha: SignedPermutation) -> bool:
        return bool(f_identity(alpha))

    def value(self, alpha: SignedPermutation) -> Scalar:
        return self.ring.one()

    def candidates(self, domain: SignedDomain, positives: Sequence[int]) -> Iterator[PreMap]:
        yield PreMap.identity_on(domain, positives)


class HaarCumulant(CumulantFunction):
    kind = EnsembleKind.HAAR

    def supports(self, alpha: SignedPermutation) -> bool:
        return is_alternating(alpha)

    def value(self, alpha: SignedPermutation) -> Scalar:
        m = len(_positives(alpha))
        if m % 2:
            return self.ring.zero()
        return f_haar(alpha, self.table(m))

    def candidates(self, domain: SignedDomain, positives: Sequence[int]) -> Iterator[PreMap]:
        return enumerate_alternating_premaps(domain, positives)


class WishartCumulant(CumulantFunction):
    kind = EnsembleKind.WISHART

    def __init__(self, ring: ScalarField, weight: QuaternionMatrix, **caps: int) -> None:
        super().__init__(ring, **caps)
        self.weight = weight

    def value(self, alpha: SignedPermutation) -> Scalar:
        return f_wishart(alpha, [self.weight] * len(_positives(alpha)), self.ring)


class EmpiricalCumulant(CumulantFunction):
    """Cumulants computed from tabulated moments of the colour alone."""

    kind = EnsembleKind.EMPIRICAL

    def __init__(self, ring: ScalarField, oracle: MomentOracle, **caps: int) -> None:
        super().__init__(ring, **caps)
        self.oracle = oracle

    def value(self, alpha: SignedPermutation) -> Scalar:
        positives = _positives(alpha)
        local = PreMap.from_permutation(relabeled(alpha, positives))
        return cumulants_from_moments(self.oracle, local, self.table(2 * len(positives)))


def cumulant_function(spec: EnsembleSpec, ring: ScalarField, **caps: int) -> CumulantFunction:
    """The cumulant weight of an ensemble in the given arithmetic."""
    if spec.kind is EnsembleKind.GINIBRE:
        return GinibreCumulant(ring, **caps)
    if spec.kind is EnsembleKind.GSE:
        return GseCumulant(ring, **caps)
    if spec.kind is EnsembleKind.IDENTITY:
        return IdentityCumulant(ring, **caps)
    if spec.kind is EnsembleKind.HAAR:
        return HaarCumulant(ring, **caps)
    if spec.kind is EnsembleKind.WISHART:
        assert spec.weight is not None
        return WishartCumulant(ring, spec.weight, **caps)
    assert spec.moments is not None
    return EmpiricalCumulant(ring, spec.moments, **caps)
