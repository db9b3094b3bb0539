"""Tokenizer and recursive-descent parser for ring expressions.

One grammar serves two front ends:

* motive expressions, e.g. ``(L-1)^2 + [C]*L^(1/2)``, where ``L`` is the
  Lefschetz class and bracketed names are free class symbols;
* integer polynomials, e.g. ``x^2*y^3 - 2*x1``, where bare identifiers
  are variables.

Both are built on top of :class:`dltzeta.ring.MotiveExpr`; in polynomial
mode each variable becomes a symbol and ``L`` loses its special meaning.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .ring import MotiveExpr


class ParseError(ValueError):
    """Syntax error at a character position of the input."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class ExponentError(ParseError):
    """An L-exponent whose denominator does not divide the extension index."""


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<sym>\[[^\[\]]+\])
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^/()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, r: int, poly_mode: bool):
        from .ring import MotiveExpr

        self._M = MotiveExpr
        self.text = text
        self.r = r
        self.poly_mode = poly_mode
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _accept(self, value: str) -> bool:
        if self.tok.kind == "op" and self.tok.value == value:
            self.i += 1
            return True
        return False

    def _expect(self, value: str) -> Token:
        tok = self.tok
        if not self._accept(value):
            raise ParseError(f"expected {value!r}, found {tok.value or 'end of input'!r}", tok.pos, self.text)
        return tok

    def _int(self) -> int:
        tok = self.tok
        if tok.kind != "int":
            raise ParseError(f"expected integer, found {tok.value or 'end of input'!r}", tok.pos, self.text)
        self.i += 1
        return int(tok.value)

    # -- grammar
    def parse(self) -> "MotiveExpr":
        value = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.value!r}", self.tok.pos, self.text)
        return value

    def expr(self) -> "MotiveExpr":
        negate = False
        if self._accept("-"):
            negate = True
        else:
            self._accept("+")
        value = self.term()
        if negate:
            value = -value
        while True:
            if self._accept("+"):
                value = value + self.term()
            elif self._accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> "MotiveExpr":
        value = self.factor()
        while self._accept("*"):
            value = value * self.factor()
        return value

    def factor(self) -> "MotiveExpr":
        start = self.tok
        base, is_lefschetz = self.atom()
        if not self._accept("^"):
            return base
        exp_pos = self.tok.pos
        exponent = self.exponent()
        if is_lefschetz:
            if (exponent * self.r).denominator != 1:
                raise ExponentError(
                    f"L-exponent {exponent} has denominator not dividing r={self.r}", exp_pos, self.text
                )
            return self._M.lefschetz(exponent, r=self.r)
        if exponent.denominator != 1:
            raise ParseError("rational exponents are only allowed on L", exp_pos, self.text)
        if exponent < 0:
            if not base.is_unit_monomial():
                raise ParseError("negative exponent on a non-unit", exp_pos, self.text)
        try:
            return base ** int(exponent)
        except ValueError as exc:
            raise ParseError(str(exc), start.pos, self.text) from None

    def exponent(self) -> Fraction:
        if self._accept("("):
            sign = -1 if self._accept("-") else 1
            num = self._int()
            den = 1
            if self._accept("/"):
                den_tok = self.tok
                den = self._int()
                if den == 0:
                    raise ParseError("zero denominator", den_tok.pos, self.text)
            self._expect(")")
            return Fraction(sign * num, den)
        sign = -1 if self._accept("-") else 1
        return Fraction(sign * self._int())

    def atom(self) -> "tuple[MotiveExpr, bool]":
        tok = self.tok
        M = self._M
        if tok.kind == "int":
            self.i += 1
            return M.constant(int(tok.value), r=self.r), False
        if tok.kind == "sym":
            if self.poly_mode:
                raise ParseError("class symbols are not allowed in polynomials", tok.pos, self.text)
            self.i += 1
            name = tok.value[1:-1].strip()
            if not name:
                raise ParseError("empty symbol name", tok.pos, self.text)
            return M.symbol(name, r=self.r), False
        if tok.kind == "name":
            self.i += 1
            if self.poly_mode:
                return M.symbol(tok.value, r=self.r), False
            if tok.value == "L":
                return M.lefschetz(1, r=self.r), True
            raise ParseError(f"unknown identifier {tok.value!r} (class symbols are written [Name])", tok.pos, self.text)
        if self._accept("("):
            value = self.expr()
            self._expect(")")
            return value, False
        raise ParseError(f"unexpected {tok.value or 'end of input'!r}", tok.pos, self.text)


def parse_expression(text: str, r: int = 1, *, poly_mode: bool = False) -> "MotiveExpr":
    if r < 1:
        raise ValueError("extension index r must be positive")
    return _Parser(text, r, poly_mode).parse()
