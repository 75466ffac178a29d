"""Recursive-descent parser for bracket expressions.

Grammar (whitespace-insensitive)::

    text    := 'E[' expr ']' | expr
    expr    := factor+
    factor  := 'Re(' expr ')' | 'tr(' expr ')' | symbol | 'I'
    symbol  := 'X' digits '*'? ('[' colour ']')? '*'?

Symbols are numbered by position, left to right.
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass

import structlog

from src.exceptions import DuplicateSymbolError, ParseError

from .ast import ExprAst, Node, Product, ReNode, Symbol, TrNode

logger = structlog.get_logger()

_TOKEN = re.compile(
    r"""
    (?P<expect>E\s*\[)
    | (?P<re>Re\s*\()
    | (?P<tr>tr\s*\()
    | (?P<close>\))
    | (?P<end>\])
    | (?P<symbol>X(?P<source>\d+)
        \s*(?P<star>\*)?
        (?:\s*\[\s*(?P<colour>[A-Za-z0-9_]+)\s*\])?
        (?:\s*(?P<poststar>\*))?)
    | (?P<identity>I(?![A-Za-z0-9_]))
    """,
    re.VERBOSE,
)

_DESCRIBE = {"close": "')'", "end": "']'", "eof": "end of input"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int
    source: int | None = None
    starred: bool = False
    colour: str | None = None


def tokenize(text: str) -> Iterator[Token]:
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            yield Token("eof", "", pos)
            return
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind == "symbol":
            if match["star"] and match["poststar"]:
                raise ParseError(f"symbol X{match['source']} starred twice", pos)
            yield Token(
                kind,
                match.group(),
                pos,
                source=int(match["source"]),
                starred=bool(match["star"] or match["poststar"]),
                colour=match["colour"],
            )
        else:
            assert kind is not None
            yield Token(kind, match.group(), pos)
        pos = match.end()


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = list(tokenize(text))
        self.pos = 0
        self.count = 0
        self.colours: dict[int, tuple[str, int]] = {}

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            found = _DESCRIBE.get(token.kind, repr(token.text))
            raise ParseError(f"expected {_DESCRIBE[kind]}, found {found}", token.offset)
        return self.advance()

    def parse(self) -> ExprAst:
        if self.peek().kind == "expect":
            self.advance()
            root = self.product()
            self.expect("end")
            self.expect("eof")
            return ExprAst(root, expectation=True)
        root = self.product()
        self.expect("eof")
        return ExprAst(root)

    def product(self) -> Product:
        start = self.peek()
        children: list[Node] = []
        while self.peek().kind in ("re", "tr", "symbol", "identity"):
            children.append(self.factor())
        if not children:
            found = _DESCRIBE.get(start.kind, repr(start.text))
            raise ParseError(f"expected a factor, found {found}", start.offset)
        return Product(tuple(children))

    def factor(self) -> Node:
        token = self.advance()
        if token.kind in ("re", "tr"):
            inner = self.product()
            self.expect("close")
            return ReNode(inner) if token.kind == "re" else TrNode(inner)
        self.count += 1
        if token.kind == "identity":
            return Symbol(self.count, None, offset=token.offset)
        assert token.source is not None
        self._check_colour(token)
        return Symbol(self.count, token.source, token.starred, token.colour, token.offset)

    def _check_colour(self, token: Token) -> None:
        if token.colour is None:
            return
        assert token.source is not None
        seen = self.colours.setdefault(token.source, (token.colour, token.offset))
        if seen[0] != token.colour:
            raise DuplicateSymbolError(
                f"X{token.source} annotated [{token.colour}] but earlier [{seen[0]}]", token.offset
            )


def parse(text: str) -> ExprAst:
    """Parse expression text; raises ParseError carrying the character offset."""
    ast = _Parser(text).parse()
    logger.debug("Expression parsed", symbols=ast.n)
    return ast
