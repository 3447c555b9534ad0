"""Parse integer expressions such as ``2^127-1``, ``14789586(5#)`` or ``19*11#``.

Grammar (juxtaposition multiplies, ``#`` is the primorial, ``^`` and
``**`` are right-associative powers)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := power (['*'] power)*
    power  := atom [('^' | '**') power]
    atom   := (NUMBER | '(' expr ')') ['#']
"""
from __future__ import annotations

import re

from .arith import primorial

_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*^()#]))")
_MAX_EXPONENT = 1 << 20


class ExpressionError(ValueError):
    pass


def _tokens(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        out.append(m.group(1) or m.group(2))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ExpressionError(f"expected {expected or 'more input'} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self) -> int:
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        value = sign * self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> int:
        value = self.power()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
            elif tok is None or not (tok.isdigit() or tok == "("):
                return value
            value *= self.power()

    def power(self) -> int:
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            exp = self.power()
            if exp < 0 or exp > _MAX_EXPONENT:
                raise ExpressionError(f"exponent {exp} out of range")
            return base**exp
        return base

    def atom(self) -> int:
        tok = self.take()
        if tok == "(":
            value = self.expr()
            self.take(")")
        elif tok.isdigit():
            value = int(tok)
        else:
            raise ExpressionError(f"unexpected {tok!r} in {self.text!r}")
        if self.peek() == "#":
            self.take()
            if value > 10**7:
                raise ExpressionError(f"primorial argument {value} too large")
            value = primorial(value)
        return value


def parse_int(text: str) -> int:
    """Evaluate an integer expression exactly.

    >>> parse_int("14789586(5#)")
    443687580
    >>> parse_int("2^127-1") == 2**127 - 1
    True
    """
    p = _Parser(str(text))
    value = p.expr()
    if p.peek() is not None:
        raise ExpressionError(f"trailing input {p.peek()!r} in {text!r}")
    return value
