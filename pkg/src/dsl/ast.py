"""Syntax tree of a bracket expression."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Symbol:
    """One factor X_k (or the identity token ``I``).

    ``index`` is the left-to-right position 1..n; ``source`` is the number
    written after ``X`` and is None for ``I``.
    """

    index: int
    source: int | None
    starred: bool = False
    colour: str | None = None
    offset: int = 0

    @property
    def is_identity(self) -> bool:
        return self.source is None


@dataclass(frozen=True)
class Product:
    children: tuple[Node, ...]

    def symbols(self) -> Iterator[Symbol]:
        for child in self.children:
            if isinstance(child, Symbol):
                yield child
            else:
                yield from child.child.symbols()


@dataclass(frozen=True)
class ReNode:
    child: Product


@dataclass(frozen=True)
class TrNode:
    child: Product


Node = Union[Symbol, ReNode, TrNode]


@dataclass(frozen=True)
class ExprAst:
    """Parsed expression; ``expectation`` records an enclosing ``E[...]``."""

    root: Product
    expectation: bool = False

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        return tuple(self.root.symbols())

    @property
    def n(self) -> int:
        return len(self.symbols)
