"""Bracket diagrams: a symbol order with Re- and tr-tagged brackets."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import Literal

from src.combinatorics import SignedDomain, SignedPermutation
from src.exceptions import BracketError

Tag = Literal["Re", "tr"]
TAGS: tuple[Tag, ...] = ("Re", "tr")


@dataclass(frozen=True, order=True)
class Bracket:
    """Encloses symbol_order[open:close]."""

    open: int
    close: int
    tag: Tag

    def contains(self, position: int) -> bool:
        return self.open <= position < self.close

    def span(self) -> tuple[int, int]:
        return self.open, self.close

    def nests_with(self, other: Bracket) -> bool:
        """Disjoint or one inside the other."""
        a, b = self.span(), other.span()
        if a[1] <= b[0] or b[1] <= a[0]:
            return True
        return (a[0] <= b[0] and b[1] <= a[1]) or (b[0] <= a[0] and a[1] <= b[1])


@dataclass(frozen=True)
class BracketDiagram:
    """Signed symbols in order, ∞ anchored at position 0, plus tagged brackets."""

    domain: SignedDomain
    symbol_order: tuple[int, ...]
    brackets: tuple[Bracket, ...] = ()

    def __post_init__(self) -> None:
        order = self.symbol_order
        if not order or order[0] != self.domain.infinity:
            raise BracketError("diagram must start with the ∞ anchor")
        if len({abs(k) for k in order}) != len(order):
            raise BracketError("a symbol occurs twice in the diagram")
        for b in self.brackets:
            if b.tag not in TAGS:
                raise BracketError(f"unknown bracket function {b.tag!r}")
            if not 1 <= b.open < b.close <= len(order):
                raise BracketError(f"bracket {b.span()} lies outside symbols 1..{len(order) - 1}")
        for i, a in enumerate(self.brackets):
            for b in self.brackets[i + 1 :]:
                if not a.nests_with(b):
                    raise BracketError(f"brackets {a.span()} and {b.span()} are not properly nested")

    @classmethod
    def plain(cls, domain: SignedDomain, symbols: Iterable[int]) -> BracketDiagram:
        return cls(domain, (domain.infinity, *symbols))

    @property
    def symbols(self) -> tuple[int, ...]:
        """Symbols without the anchor."""
        return self.symbol_order[1:]

    def with_bracket(self, bracket: Bracket) -> BracketDiagram:
        return BracketDiagram(self.domain, self.symbol_order, (*self.brackets, bracket))

    def tagged(self, tag: Tag) -> list[Bracket]:
        return [b for b in self.brackets if b.tag == tag]

    def ordered_brackets(self) -> list[Bracket]:
        """Outermost first; on equal spans Re encloses tr."""
        return sorted(self.brackets, key=lambda b: (b.open, -b.close, TAGS.index(b.tag)))

    def render(self, prefix: str = "X") -> str:
        return render(self, prefix)

    def __str__(self) -> str:
        return render(self)


def _innermost(brackets: Sequence[Bracket], position: int) -> tuple[int, int] | None:
    spans = [b.span() for b in brackets if b.contains(position)]
    return min(spans, key=lambda s: s[1] - s[0]) if spans else None


def perm_of_diagram(d: BracketDiagram, tag: Tag | None = None) -> SignedPermutation:
    """π(k) is the symbol after X_k, skipping bracketed intervals of ``tag`` (all brackets when None)."""
    brackets = d.brackets if tag is None else d.tagged(tag)
    order = d.symbol_order
    size = len(order)
    level = [_innermost(brackets, p) for p in range(size)]
    mapping: dict[int, int] = {}
    for p in range(size):
        lo, hi = level[p] if level[p] is not None else (0, size)
        q = p
        while True:
            q = q + 1 if q + 1 < hi else lo
            if level[q] == level[p]:
                break
        mapping[order[p]] = order[q]
    return SignedPermutation(d.domain, mapping)


def symbol_text(domain: SignedDomain, k: int, prefix: str = "X") -> str:
    return f"{prefix}{abs(k)}" + ("*" if k < 0 else "")


def render(d: BracketDiagram, prefix: str = "X", label: Callable[[int], str] | None = None) -> str:
    """`Re(` / `tr(` / `)` tokens around symbols; the ∞ anchor is omitted.

    ``label`` replaces the default ``X3`` / ``X8*`` spelling of a signed symbol.
    """
    spell = label or (lambda k: symbol_text(d.domain, k, prefix))
    opens: dict[int, list[Bracket]] = {}
    closes: dict[int, int] = {}
    for b in d.ordered_brackets():
        opens.setdefault(b.open, []).append(b)
        closes[b.close] = closes.get(b.close, 0) + 1
    out: list[str] = []
    for p in range(1, len(d.symbol_order)):
        token = "".join(f"{b.tag}(" for b in opens.get(p, []))
        token += spell(d.symbol_order[p])
        token += ")" * closes.get(p + 1, 0)
        out.append(token)
    return " ".join(out)
