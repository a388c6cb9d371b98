"""Boolean tag expression language for personalization filters.

Grammar (keywords case-insensitive, labels lowercased):

    expr := term (OR term)*
    term := atom (AND atom)*
    atom := [category ":"] label | "(" expr ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ExprParseError

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


@dataclass(frozen=True)
class Atom:
    category: str | None
    label: str

    def evaluate(self, match) -> bool:
        return match(self.category, self.label)


@dataclass(frozen=True)
class And:
    parts: tuple

    def evaluate(self, match) -> bool:
        return all(p.evaluate(match) for p in self.parts)


@dataclass(frozen=True)
class Or:
    parts: tuple

    def evaluate(self, match) -> bool:
        return any(p.evaluate(match) for p in self.parts)


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = [(m.group(0), m.start()) for m in _TOKEN.finditer(source)]
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, len(self.source))

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        expr = self.expr()
        tok, at = self.peek()
        if tok is not None:
            raise ExprParseError(f"unexpected token {tok!r}", at)
        return expr

    def expr(self):
        parts = [self.term()]
        while self.peek()[0] is not None and self.peek()[0].upper() == "OR":
            self.take()
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def term(self):
        parts = [self.atom()]
        while self.peek()[0] is not None and self.peek()[0].upper() == "AND":
            self.take()
            parts.append(self.atom())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def atom(self):
        tok, at = self.take()
        if tok is None:
            raise ExprParseError("expected a tag atom", at)
        if tok == "(":
            inner = self.expr()
            close, close_at = self.take()
            if close != ")":
                raise ExprParseError("expected ')'", close_at)
            return inner
        if tok == ")":
            raise ExprParseError("unexpected ')'", at)
        if tok.upper() in ("AND", "OR"):
            raise ExprParseError(f"expected a tag atom, got keyword {tok!r}", at)
        if ":" in tok:
            category, _, label = tok.partition(":")
            if not category or not label:
                raise ExprParseError(f"malformed atom {tok!r}", at)
            return Atom(category.lower(), label.lower())
        return Atom(None, tok.lower())


def parse_tag_expr(source: str):
    """Parse a tag expression into an evaluable AST; raises ExprParseError on bad syntax."""
    if not source or not source.strip():
        raise ExprParseError("empty expression", 0)
    return _Parser(source).parse()
