"""Expression language: text to permutation data and back."""

from .ast import ExprAst, Product, ReNode, Symbol, TrNode
from .parser import Token, parse, tokenize
from .serialize import serialize
from .translate import Translation, resolve_colours, to_permutations, to_spec

__all__ = [
    "ExprAst",
    "Product",
    "ReNode",
    "Symbol",
    "Token",
    "TrNode",
    "Translation",
    "parse",
    "resolve_colours",
    "serialize",
    "to_permutations",
    "to_spec",
    "tokenize",
]
