"""Canonical text for bracket diagrams."""

from __future__ import annotations

from collections.abc import Mapping, Sequence

from src.brackets import BracketDiagram, render
from src.brackets.diagram import symbol_text
from src.expansion import IDENTITY_COLOUR

Bindings = Mapping[int, str] | Sequence[str]


def _colour(bindings: Bindings | None, k: int) -> str | None:
    if bindings is None:
        return None
    if isinstance(bindings, Mapping):
        return bindings.get(k)
    return bindings[k - 1] if 0 < k <= len(bindings) else None


def serialize(d: BracketDiagram, bindings: Bindings | None = None, prefix: str = "X") -> str:
    """Render ``d`` so that :func:`parse` reads back the same tag-permutations.

    ``bindings`` gives the colour of symbol k (a mapping, or a word indexed
    from 1); bound symbols are written ``X3[U]`` and unstarred identity
    symbols as ``I``.
    """

    def label(k: int) -> str:
        colour = _colour(bindings, abs(k))
        if colour == IDENTITY_COLOUR and k > 0:
            return "I"
        text = symbol_text(d.domain, k, prefix)
        return text if colour is None else f"{text}[{colour}]"

    return render(d, prefix, label)
