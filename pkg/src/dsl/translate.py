"""From a parsed expression to permutation data and an ExpressionSpec."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import structlog

from src.brackets import Bracket, BracketDiagram, Tag, diagram_premaps, perm_of_diagram
from src.combinatorics import SignedDomain, SignedPermutation
from src.ensembles import EnsembleKind, EnsembleManifest, EnsembleSpec
from src.exceptions import DslError, ManifestError
from src.expansion import IDENTITY_COLOUR, ExpressionSpec, with_identity_colour

from .ast import ExprAst, Product, ReNode, Symbol
from .parser import parse

logger = structlog.get_logger()


@dataclass(frozen=True)
class Translation:
    """Permutation data of an expression, symbols numbered by position.

    ``diagram`` carries signed symbols (−k for a starred X_k) after the ∞
    anchor; ``sources`` maps position k to the number written in the text.
    """

    diagram: BracketDiagram
    face_re: SignedPermutation
    face_tr: SignedPermutation
    eps: tuple[int, ...]
    word: tuple[str, ...]
    sources: tuple[int | None, ...]

    @property
    def n(self) -> int:
        return len(self.eps)

    @property
    def premaps(self) -> tuple[SignedPermutation, SignedPermutation]:
        """(φ_Re, φ_tr) on ±[n]∞ with the adjoint signs folded in."""
        return diagram_premaps(self.diagram)

    @property
    def closed(self) -> bool:
        """∞ is fixed by both faces, so the expression is a scalar."""
        inf = self.face_re.domain.infinity
        return self.face_re(inf) == inf and self.face_tr(inf) == inf

    def faces(self) -> tuple[SignedPermutation, SignedPermutation]:
        """One-sided faces in the form the expansion takes; ∞ is dropped for closed expressions."""
        if not self.closed:
            return self.face_re, self.face_tr
        domain = SignedDomain(self.n)
        return tuple(  # type: ignore[return-value]
            SignedPermutation(domain, {k: v for k, v in face.items() if not face.domain.is_infinite(k)})
            for face in (self.face_re, self.face_tr)
        )

    def source_diagram(self) -> BracketDiagram:
        """The diagram with the written numbers in place of positions."""
        if sorted(s for s in self.sources if s is not None) != list(range(1, self.n + 1)):
            raise DslError(f"written numbers {list(self.sources)} are not a relabeling of 1..{self.n}")
        rename = {k: s for k, s in enumerate(self.sources, start=1)}
        order = [self.diagram.symbol_order[0]]
        order += [rename[abs(k)] * (1 if k > 0 else -1) for k in self.diagram.symbols]
        return BracketDiagram(self.diagram.domain, tuple(order), self.diagram.brackets)


def _walk(product: Product, brackets: list[Bracket], order: list[Symbol]) -> None:
    for child in product.children:
        if isinstance(child, Symbol):
            order.append(child)
            continue
        start = len(order) + 1
        _walk(child.child, brackets, order)
        tag: Tag = "Re" if isinstance(child, ReNode) else "tr"
        brackets.append(Bracket(start, len(order) + 1, tag))


def _colour_of(symbol: Symbol, annotated: Mapping[int, str]) -> str:
    if symbol.source is None:
        return symbol.colour or IDENTITY_COLOUR
    return symbol.colour or annotated.get(symbol.source, str(symbol.source))


def to_permutations(ast: ExprAst) -> Translation:
    """Skip-bracket successor permutations per tag, with X_∞ inserted before the first symbol.

    A bare ``Xk`` takes the colour annotated on another occurrence of ``Xk``,
    else the colour named ``k``.
    """
    brackets: list[Bracket] = []
    order: list[Symbol] = []
    _walk(ast.root, brackets, order)
    domain = SignedDomain(len(order), has_infinity=True)
    annotated = {s.source: s.colour for s in order if s.source is not None and s.colour is not None}

    plain = BracketDiagram(domain, (domain.infinity, *(s.index for s in order)), tuple(brackets))
    signed = BracketDiagram(
        domain, (domain.infinity, *(-s.index if s.starred else s.index for s in order)), tuple(brackets)
    )
    return Translation(
        diagram=signed,
        face_re=perm_of_diagram(plain, "Re"),
        face_tr=perm_of_diagram(plain, "tr"),
        eps=tuple(-1 if s.starred else 1 for s in order),
        word=tuple(_colour_of(s, annotated) for s in order),
        sources=tuple(s.source for s in order),
    )


def resolve_colours(
    word: tuple[str, ...], sources: tuple[int | None, ...], bindings: Mapping[str, EnsembleSpec]
) -> tuple[str, ...]:
    """Bind default colours; a lone non-identity ensemble absorbs every unbound bare symbol."""
    random = [c for c, e in bindings.items() if e.kind is not EnsembleKind.IDENTITY]
    out = []
    for colour, source in zip(word, sources, strict=True):
        if colour in bindings:
            out.append(colour)
        elif source is not None and colour == str(source) and len(random) == 1:
            out.append(random[0])
        else:
            raise ManifestError(f"no ensemble bound to colour {colour!r}")
    return tuple(out)


def to_spec(
    text: str,
    ensembles: Mapping[str, EnsembleSpec] | EnsembleManifest,
    **options: Any,
) -> ExpressionSpec:
    """Parse ``text`` and bind its colours to ``ensembles``."""
    translation = to_permutations(parse(text))
    bindings = with_identity_colour(ensembles)
    word = resolve_colours(translation.word, translation.sources, bindings)
    face_re, face_tr = translation.faces()
    spec = ExpressionSpec(face_re, face_tr, translation.eps, word, bindings, **options)
    logger.debug("Expression bound", symbols=spec.n, colours=spec.colours, shape=spec.shape)
    return spec
