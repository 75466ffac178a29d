"""Matrix cumulants recovered from mixed Re-tr moments.

For one colour on the symbols I, the cumulant attached to a premap α is

    f(α) = Σ_{π ∈ PM(I)} (−2N)^(χ(α,π) − #α) · wg(Λ(δα ∨ δπ)) · E[Re_π tr_π(X, …, X)]

with #α counted on the doubled domain and wg the normalized Haar weight of
degree 2|I|. Several independent colours in general position contribute a
product of per-colour weights against the joint moment.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from itertools import product
from typing import Any

import structlog
import sympy

from src.combinatorics import (
    PreMap,
    SignedDomain,
    SignedPermutation,
    enumerate_premaps,
    pairing_of,
    premap_euler,
    split_by_colour,
)
from src.combinatorics.premaps import check_premap
from src.combinatorics.serialization import premap_from_text
from src.exceptions import OracleGapError, WeingartenError
from src.utils.constants import DEFAULT_FIXED_MAX_SYMBOLS, DEFAULT_SYMBOLIC_MAX_SYMBOLS
from src.weingarten import N, ScalarField, WeingartenTable, haar_weight, join_lambda, weingarten_table
from src.weingarten.scalars import Scalar

logger = structlog.get_logger()

# oracle(π) = E[Re_π tr_π(X₁, …, Xₙ)] for a premap π on the symbols of interest
MomentOracle = Callable[[SignedPermutation], Any]


class MomentTable:
    """Tabulated moments keyed by premap; a missing premap raises OracleGapError."""

    def __init__(self, values: Mapping[SignedPermutation, Any] | None = None) -> None:
        self._values: dict[SignedPermutation, Any] = dict(values or {})

    @classmethod
    def from_texts(cls, raw: Mapping[int, Mapping[str, Any]]) -> MomentTable:
        """Build from ``{degree: {cycle notation: value}}``; values may be rationals or expressions in N."""
        values: dict[SignedPermutation, Any] = {}
        for degree, entries in raw.items():
            domain = SignedDomain(int(degree))
            for text, value in entries.items():
                values[premap_from_text(domain, text)] = sympy.sympify(str(value), locals={"N": N})
        return cls(values)

    def __call__(self, pi: SignedPermutation) -> Any:
        try:
            return self._values[pi]
        except KeyError:
            raise OracleGapError(f"no moment tabulated for {pi}") from None

    def __contains__(self, pi: object) -> bool:
        return pi in self._values

    def __len__(self) -> int:
        return len(self._values)

    def items(self) -> Iterator[tuple[SignedPermutation, Any]]:
        return iter(self._values.items())

    def degrees(self) -> set[int]:
        return {len([k for k in pi.points if k > 0]) for pi in self._values}

    def missing(self, degree: int) -> list[PreMap]:
        """Premaps of PM(±[degree]) without a value."""
        return [pi for pi in enumerate_premaps(SignedDomain(degree)) if pi not in self._values]


def _positives(alpha: SignedPermutation) -> list[int]:
    return sorted(k for k in alpha.points if k > 0)


def cumulants_from_moments(oracle: MomentOracle, alpha: SignedPermutation, table: WeingartenTable) -> Scalar:
    """Normalized matrix cumulant of one colour at α from its mixed moments.

    ``table`` must have degree 2|I| for α on ±I; its ring fixes the arithmetic.
    """
    check_premap(alpha)
    positives = _positives(alpha)
    if table.n != 2 * len(positives):
        raise WeingartenError(f"cumulant on {len(positives)} symbols needs a table of degree {2 * len(positives)}")
    ring = table.ring
    alpha_pairing = pairing_of(alpha)
    terms = []
    for pi in enumerate_premaps(alpha.domain, positives):
        exponent = premap_euler(alpha, pi) - alpha.num_cycles
        weight = ring.power(-2 * ring.N, exponent) * haar_weight(table, join_lambda(alpha_pairing, pairing_of(pi)))
        terms.append(weight * ring.convert(oracle(pi)))
    return ring.total(terms)


def _finite(alpha: SignedPermutation) -> SignedPermutation:
    finite = [k for k in alpha.points if not alpha.domain.is_infinite(k)]
    return alpha if len(finite) == alpha.size else alpha.induced(finite)


def mixed_general_position_f(
    word: Sequence[str],
    alpha: SignedPermutation,
    oracle: MomentOracle,
    ring: ScalarField | None = None,
    tables: Mapping[str, WeingartenTable] | None = None,
    *,
    symbolic_max_symbols: int = DEFAULT_SYMBOLIC_MAX_SYMBOLS,
    fixed_max_symbols: int = DEFAULT_FIXED_MAX_SYMBOLS,
) -> Scalar:
    """Joint cumulant of colours in general position.

    ``word[k-1]`` is the colour of symbol k. Zero unless every cycle of α
    stays inside one colour; otherwise each colour contributes its own
    Weingarten weight and the oracle supplies the joint moment.
    """
    ring = ring or ScalarField()
    alpha = _finite(alpha)
    check_premap(alpha)
    colour_of = {k + 1: c for k, c in enumerate(word)}
    parts = split_by_colour(alpha, colour_of)
    if parts is None:
        return ring.zero()

    colours = sorted(parts)
    positives = {c: _positives(parts[c]) for c in colours}
    tables = dict(tables or {})
    for c in colours:
        if c not in tables:
            tables[c] = weingarten_table(
                2 * len(positives[c]),
                ring.n_value,
                symbolic_max_symbols=symbolic_max_symbols,
                fixed_max_symbols=fixed_max_symbols,
            )
    pairings = {c: pairing_of(parts[c]) for c in colours}
    choices: list[Iterable[SignedPermutation]] = [
        list(enumerate_premaps(alpha.domain, positives[c])) for c in colours
    ]

    terms = []
    for combo in product(*choices):
        mapping: dict[int, int] = {}
        weight = ring.one()
        for c, pi_c in zip(colours, combo, strict=True):
            mapping.update(pi_c.items())
            weight = weight * haar_weight(tables[c], join_lambda(pairings[c], pairing_of(pi_c)))
        pi = PreMap(alpha.domain, mapping)
        exponent = premap_euler(alpha, pi) - alpha.num_cycles
        terms.append(ring.power(-2 * ring.N, exponent) * weight * ring.convert(oracle(pi)))
    logger.debug("General-position cumulant evaluated", colours=len(colours), terms=len(terms))
    return ring.total(terms)
