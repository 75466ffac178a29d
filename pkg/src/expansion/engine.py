"""Exact topological expansion of product-expression expectations.

Every expectation is a finite sum over hyperedge premaps α, one premap per
colour, of

    (−2)^{χ(φRe, β) − 2#φRe} · N^{χ(φtr, β) − 2#φtr} · ∏_c f_c(α_c) · Re_σRe tr_σtr(Y₁, …, Yₙ)

with β = δε α δε and residual premaps σ = K(φ, β)⁻¹. The sum is
exact: rationals at a fixed N, rational functions of N otherwise.
"""

from __future__ import annotations

import functools
import itertools
import time
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any

import structlog

from src.brackets import bracketize
from src.combinatorics import (
    PreMap,
    SignedPermutation,
    compose,
    double_factorial,
    doubled,
    euler_characteristic,
    join_blocks,
    k_vertices,
    relabeled,
)
from src.combinatorics.serialization import to_json
from src.ensembles import CumulantFunction, EnsembleSpec, MomentOracle, cumulant_function
from src.exceptions import CapExceededError, ExpansionError, NotBracketableError
from src.quaternion import Quaternion, QuaternionMatrix, eval_contraction
from src.utils.constants import DEFAULT_FIXED_MAX_SYMBOLS, DEFAULT_SYMBOLIC_MAX_SYMBOLS, DEFAULT_TERM_CAP
from src.weingarten import ScalarField, format_scalar

from .spec import ExpressionSpec, Shape

logger = structlog.get_logger()

Scalar = Any
Value = Any  # Scalar | Quaternion | QuaternionMatrix


@dataclass(frozen=True)
class ExpansionTerm:
    """One α of the expansion with its topology and weight."""

    alpha: PreMap
    chi_re: int
    chi_tr: int
    faces_re: int
    faces_tr: int
    f_values: tuple[tuple[str, Scalar], ...]
    weight: Scalar
    sigma_re: PreMap
    sigma_tr: PreMap
    residual: Value = None
    planar: bool | None = None

    @property
    def re_exponent(self) -> int:
        """Exponent of −2."""
        return self.chi_re - 2 * self.faces_re

    @property
    def n_exponent(self) -> int:
        return self.chi_tr - 2 * self.faces_tr

    @property
    def k_re(self) -> PreMap:
        return self.sigma_re.inverse()

    @property
    def k_tr(self) -> PreMap:
        return self.sigma_tr.inverse()

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "alpha": to_json(self.alpha, "signed"),
            "chi_re": self.chi_re,
            "chi_tr": self.chi_tr,
            "f": {colour: format_scalar(v) for colour, v in self.f_values},
            "weight": format_scalar(self.weight),
            "sigma_re": to_json(self.sigma_re, "signed"),
            "sigma_tr": to_json(self.sigma_tr, "signed"),
        }
        if self.planar is not None:
            out["planar"] = self.planar
        return out


@dataclass(frozen=True)
class ResidualGroup:
    """Terms sharing one residual pair, with the expression it denotes when it has one."""

    sigma_re: PreMap
    sigma_tr: PreMap
    coefficient: Scalar
    term_count: int
    expression: str | None = None
    obstruction: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "coefficient": format_scalar(self.coefficient),
            "expression": self.expression,
            "obstruction": self.obstruction,
            "sigma_re": to_json(self.sigma_re, "signed"),
            "sigma_tr": to_json(self.sigma_tr, "signed"),
            "terms": self.term_count,
        }


@dataclass
class PartialSum:
    """Running sum over a slice of terms; slices merge in any grouping."""

    value: Value
    count: int = 0
    kept: list[ExpansionTerm] | None = None

    def add(self, term: ExpansionTerm, contribution: Value) -> None:
        self.value = self.value + contribution
        self.count += 1
        if self.kept is not None:
            self.kept.append(term)

    def merge(self, other: PartialSum) -> PartialSum:
        kept = None if self.kept is None or other.kept is None else self.kept + other.kept
        return PartialSum(self.value + other.value, self.count + other.count, kept)


@dataclass(frozen=True)
class ExpansionResult:
    """Sum of the expansion.

    With no Y matrices ``value`` is the coefficient of 1, of the quaternion
    1 or of the identity matrix, according to ``shape``; ``materialize``
    turns it into the object itself at a fixed N.
    """

    value: Value
    shape: Shape
    n_value: int | None
    term_count: int
    residual_applied: bool = False
    terms: tuple[ExpansionTerm, ...] = ()
    residuals: tuple[ResidualGroup, ...] = ()
    elapsed: float = field(default=0.0, compare=False)

    def materialize(self) -> Value:
        if self.residual_applied or self.shape == "scalar":
            return self.value
        if self.shape == "quaternion":
            return Quaternion(self.value, 0, 0, 0)
        if self.n_value is None:
            raise ExpansionError("a matrix-valued result needs a fixed N to materialize")
        return QuaternionMatrix.scalar(Quaternion(self.value, 0, 0, 0), self.n_value, exact=True)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "shape": self.shape,
            "value": format_value(self.value),
            "N": "symbolic" if self.n_value is None else self.n_value,
            "terms": self.term_count,
        }
        if not self.residual_applied and self.shape != "scalar":
            out["times"] = "identity"
        if self.terms:
            out["ledger"] = [t.to_dict() for t in self.terms]
        if self.residuals:
            out["residuals"] = [r.to_dict() for r in self.residuals]
        return out


def format_value(value: Value) -> Any:
    if isinstance(value, Quaternion):
        return [format_scalar(x) for x in value.components()]
    if isinstance(value, QuaternionMatrix):
        return value.to_lists()
    return format_scalar(value)


class ExpansionEngine:
    """Enumerates the expansion of one expression in one arithmetic."""

    def __init__(
        self,
        spec: ExpressionSpec,
        n_value: int | None = None,
        *,
        cap: int = DEFAULT_TERM_CAP,
        workers: int = 1,
        symbolic_max_symbols: int = DEFAULT_SYMBOLIC_MAX_SYMBOLS,
        fixed_max_symbols: int = DEFAULT_FIXED_MAX_SYMBOLS,
    ) -> None:
        if workers < 1:
            raise ExpansionError("workers must be positive")
        self.spec = spec
        self.ring = ScalarField(n_value)
        self.cap = cap
        self.workers = workers
        self.cumulants: dict[str, CumulantFunction] = {
            c: cumulant_function(
                spec.ensemble(c),
                self.ring,
                symbolic_max_symbols=symbolic_max_symbols,
                fixed_max_symbols=fixed_max_symbols,
            )
            for c in spec.colours
        }
        self._twist = spec.delta_eps()
        self._faces_re = spec.face_re.num_cycles
        self._faces_tr = spec.face_tr.num_cycles
        self._check_y()

    @classmethod
    def from_settings(cls, spec: ExpressionSpec, settings: Any, n_value: int | None = None) -> ExpansionEngine:
        return cls(
            spec,
            n_value,
            cap=settings.cap,
            workers=settings.workers,
            symbolic_max_symbols=settings.symbolic_max_symbols,
            fixed_max_symbols=settings.fixed_max_symbols,
        )

    def _check_y(self) -> None:
        ys = self.spec.y_matrices
        if ys is None:
            return
        if self.ring.symbolic:
            raise ExpansionError("Y matrices need a fixed N")
        for k, y in enumerate(ys, start=1):
            if y.shape != (self.ring.n_value, self.ring.n_value):
                raise ExpansionError(f"Y{k} is {y.rows}x{y.cols}, expected {self.ring.n_value}x{self.ring.n_value}")

    # -- enumeration --------------------------------------------------------

    def raw_count(self) -> int:
        """Premap products before any support filtering: ∏_c (2m_c − 1)!!."""
        count = 1
        for c in self.spec.colours:
            count *= double_factorial(2 * len(self.spec.symbols_of(c)) - 1)
        return count

    def check_cap(self) -> None:
        requested = self.raw_count()
        if requested > self.cap:
            raise CapExceededError(
                f"expansion would enumerate {requested} premap products, cap is {self.cap}",
                requested=requested,
                cap=self.cap,
            )

    def colour_terms(self, colour: str) -> list[tuple[PreMap, Scalar]]:
        """(α_c, f_c(α_c)) over the support of one colour."""
        return list(self.cumulants[colour].nonzero_terms(self.spec.domain, self.spec.symbols_of(colour)))

    def term(self, parts: Sequence[tuple[str, PreMap, Scalar]]) -> ExpansionTerm:
        """The term of the α assembled from one premap per colour."""
        spec = self.spec
        domain = spec.domain
        mapping: dict[int, int] = {}
        for _, alpha_c, _ in parts:
            mapping.update(alpha_c.items())
        if spec.infinity:
            mapping[domain.infinity] = domain.infinity
            mapping[-domain.infinity] = -domain.infinity
        alpha = PreMap(domain, mapping)
        beta = compose(compose(self._twist, alpha), self._twist)

        chi_re = euler_characteristic(spec.face_re, beta)
        chi_tr = euler_characteristic(spec.face_tr, beta)
        f_product = self.ring.one()
        for _, _, value in parts:
            f_product = f_product * value
        weight = (
            self.ring.signed_power(-2, chi_re - 2 * self._faces_re)
            * self.ring.n_power(chi_tr - 2 * self._faces_tr)
            * f_product
        )
        sigma_re = k_vertices(spec.face_re, beta).inverse()
        sigma_tr = k_vertices(spec.face_tr, beta).inverse()
        return ExpansionTerm(
            alpha=alpha,
            chi_re=chi_re,
            chi_tr=chi_tr,
            faces_re=self._faces_re,
            faces_tr=self._faces_tr,
            f_values=tuple((c, v) for c, _, v in parts),
            weight=weight,
            sigma_re=sigma_re,
            sigma_tr=sigma_tr,
            residual=self.residual(sigma_re, sigma_tr),
        )

    def residual(self, sigma_re: PreMap, sigma_tr: PreMap) -> Value:
        """Re_σRe tr_σtr(Y₁, …, Yₙ), or None when every Y is the identity."""
        if self.spec.y_matrices is None:
            return None
        return eval_contraction(sigma_re, sigma_tr, list(self.spec.y_matrices))

    def _stream(
        self, first: Sequence[tuple[PreMap, Scalar]], rest: Sequence[list[tuple[PreMap, Scalar]]]
    ) -> Iterator[ExpansionTerm]:
        colours = self.spec.colours
        for head in first:
            for tail in itertools.product(*rest):
                choice = (head, *tail)
                yield self.term([(c, a, v) for c, (a, v) in zip(colours, choice, strict=True)])

    def _slices(self) -> tuple[list[list[tuple[PreMap, Scalar]]], list[list[tuple[PreMap, Scalar]]]]:
        """The first colour's support cut into one slice per worker, and the other colours' supports."""
        self.check_cap()
        per_colour = [self.colour_terms(c) for c in self.spec.colours]
        first, rest = per_colour[0], per_colour[1:]
        if self.workers == 1 or len(first) < 2:
            return [first], rest
        size = -(-len(first) // self.workers)
        return [first[i : i + size] for i in range(0, len(first), size)], rest

    def iter_terms(self) -> Iterator[ExpansionTerm]:
        """All nonzero terms, lazily, in deterministic order."""
        slices, rest = self._slices()
        for part in slices:
            yield from self._stream(part, rest)

    # -- summation ----------------------------------------------------------

    def _zero(self) -> Value:
        spec = self.spec
        if spec.y_matrices is None or spec.shape == "scalar":
            return self.ring.zero()
        zero = self.ring.zero() if self._exact_y else 0.0
        if spec.shape == "quaternion":
            return Quaternion(zero, zero, zero, zero)
        return QuaternionMatrix.zeros(self.ring.n_value or 0, exact=self._exact_y)

    @property
    def _exact_y(self) -> bool:
        return self.spec.y_matrices is None or all(y.exact for y in self.spec.y_matrices)

    def contribution(self, term: ExpansionTerm) -> Value:
        """weight · residual, or the bare weight when every Y is the identity."""
        if self.spec.y_matrices is None:
            return term.weight
        weight = term.weight if self._exact_y else float(term.weight)
        return weight * term.residual

    def _finish(self, value: Value) -> Value:
        return self.ring.simplify(value) if self.spec.y_matrices is None else value

    def total(self, terms: Iterable[ExpansionTerm]) -> Value:
        value = self._zero()
        for t in terms:
            value = value + self.contribution(t)
        return self._finish(value)

    def sum_slice(
        self, first: Sequence[tuple[PreMap, Scalar]], rest: Sequence[list[tuple[PreMap, Scalar]]], *, keep: bool
    ) -> PartialSum:
        """Running sum over one slice; terms are held only when ``keep`` is set."""
        acc = PartialSum(self._zero(), kept=[] if keep else None)
        for t in self._stream(first, rest):
            acc.add(t, self.contribution(t))
        return acc

    def residual_groups(self, terms: Sequence[ExpansionTerm]) -> list[ResidualGroup]:
        grouped: dict[tuple[PreMap, PreMap], list[ExpansionTerm]] = {}
        for t in terms:
            grouped.setdefault((t.sigma_re, t.sigma_tr), []).append(t)
        groups = []
        for (sigma_re, sigma_tr), members in grouped.items():
            coefficient = self.ring.total([t.weight for t in members])
            if coefficient == 0:
                continue
            try:
                expression, obstruction = bracketize(sigma_re, sigma_tr).render("Y"), None
            except NotBracketableError as e:
                expression, obstruction = None, e.obstruction
            groups.append(ResidualGroup(sigma_re, sigma_tr, coefficient, len(members), expression, obstruction))
        return groups

    def planar(self, term: ExpansionTerm) -> bool:
        """Whether every component of ⟨φtr, β⟩ is an oriented sphere."""
        beta = compose(compose(self._twist, term.alpha), self._twist)
        blocks = join_blocks(doubled(self.spec.face_tr), beta).blocks
        orientable = all(-k not in block for block in blocks for k in block)
        return orientable and term.chi_tr == len(blocks)

    def run(self, *, ledger: bool = False) -> ExpansionResult:
        start = time.perf_counter()
        residual_mode = self.spec.y_mode == "residual"
        keep = ledger or residual_mode
        slices, rest = self._slices()
        if len(slices) == 1:
            parts = [self.sum_slice(slices[0], rest, keep=keep)]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                parts = list(pool.map(lambda s: self.sum_slice(s, rest, keep=keep), slices))
        summed = functools.reduce(PartialSum.merge, parts)
        value = self._finish(summed.value)
        kept = summed.kept or []
        residuals = self.residual_groups(kept) if residual_mode else []
        elapsed = time.perf_counter() - start
        logger.info(
            "Expansion evaluated",
            symbols=self.spec.n,
            colours=len(self.spec.colours),
            terms=summed.count,
            slices=len(slices),
            n=self.ring.n_value if self.ring.n_value is not None else "symbolic",
            elapsed=round(elapsed, 4),
        )
        return ExpansionResult(
            value=value,
            shape=self.spec.shape,
            n_value=self.ring.n_value,
            term_count=summed.count,
            residual_applied=self.spec.y_matrices is not None,
            terms=tuple(kept) if ledger else (),
            residuals=tuple(residuals),
            elapsed=elapsed,
        )


def evaluate(spec: ExpressionSpec, at: int | None = None, *, ledger: bool = False, **options: Any) -> ExpansionResult:
    """E[Re_φRe tr_φtr(X₁^ε₁ Y₁, …)] at N = ``at``, or as a rational function of N."""
    return ExpansionEngine(spec, at, **options).run(ledger=ledger)


def evaluate_with_infinity(spec: ExpressionSpec, at: int | None = None, **options: Any) -> ExpansionResult:
    """Quaternion- or matrix-valued expectation; a closed expression is read as its multiple of 1."""
    return evaluate(spec.lifted(), at, **options)


def term_ledger(spec: ExpressionSpec, at: int | None = None, **options: Any) -> list[ExpansionTerm]:
    return list(evaluate(spec, at, ledger=True, **options).terms)


def leading_terms(spec: ExpressionSpec, at: int | None = None, **options: Any) -> list[ExpansionTerm]:
    """Terms of the highest power of N, each flagged planar or not."""
    engine = ExpansionEngine(spec, at, **options)
    top: int | None = None
    leaders: list[ExpansionTerm] = []
    for t in engine.iter_terms():
        if top is None or t.n_exponent > top:
            top, leaders = t.n_exponent, [t]
        elif t.n_exponent == top:
            leaders.append(t)
    return [replace(t, planar=engine.planar(t)) for t in leaders]


def moment_oracle(ensemble: EnsembleSpec, at: int | None = None, **options: Any) -> MomentOracle:
    """π ↦ E[Re_π tr_π(X, …, X)] for one ensemble, computed by the expansion."""

    def oracle(pi: SignedPermutation) -> Scalar:
        premap = PreMap.from_permutation(pi)
        local = relabeled(premap, premap.positives)
        word = [ensemble.colour] * local.domain.n
        spec = ExpressionSpec.from_premaps(local, local, word, {ensemble.colour: ensemble})
        return evaluate(spec, at, **options).value

    return oracle

