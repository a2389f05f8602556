# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

"""Polynomial text such as ``x0^4+x1^4+x2^4+x3^4`` or ``t*x0*x1*x2``.

Identifiers are ``x0`` to ``x9`` and ``t``, the generator of F_q over
F_p. Integer literals, ``+``, ``-``, ``*``, ``^`` with a non-negative
integer exponent, and parentheses are accepted; whitespace is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, NamedTuple, Optional

from .core.field import Field
from .core.laurent import LaurentPoly
from .exceptions import ParseError

__all__ = ("PolyExpr", "parse_poly", "MAX_EXPONENT")

#: Exponents above this are rejected.
MAX_EXPONENT = 4096

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x\d|t)|(?P<op>[-+*^()]))")


class _Token(NamedTuple):
    kind: str
    text: str
    column: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if match is None or match.end() == position:
            column = position + len(text[position:]) - len(text[position:].lstrip()) + 1
            character = text[column - 1]
            if character.isalpha():
                raise ParseError(f"unknown variable starting with {character!r}", column)
            raise ParseError(f"unexpected character {character!r}", column)
        kind = match.lastgroup
        tokens.append(_Token(kind, match.group(kind), match.start(kind) + 1))
        position = match.end()
    tokens.append(_Token("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: List[_Token], field: Field, variables):
        self.tokens = tokens
        self.index = 0
        self.field = field
        self.variables = variables

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.current
        self.index += 1
        return token

    def expect_op(self, op: str):
        token = self.current
        if token.kind != "op" or token.text != op:
            raise ParseError(f"expected {op!r}", token.column)
        self.advance()

    def expression(self) -> LaurentPoly:
        result = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            right = self.term()
            result = result + right if op == "+" else result - right
        return result

    def term(self) -> LaurentPoly:
        result = self.factor()
        while self.current.kind == "op" and self.current.text == "*":
            self.advance()
            result = result * self.factor()
        return result

    def factor(self) -> LaurentPoly:
        if self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            value = self.factor()
            return -value if op == "-" else value
        return self.power()

    def power(self) -> LaurentPoly:
        base = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            self.advance()
            token = self.current
            if token.kind != "int":
                raise ParseError("expected an integer exponent", token.column)
            self.advance()
            exponent = int(token.text)
            if exponent > MAX_EXPONENT:
                raise ParseError(f"exponent {exponent} exceeds {MAX_EXPONENT}", token.column)
            return base**exponent
        return base

    def atom(self) -> LaurentPoly:
        token = self.current
        if token.kind == "int":
            self.advance()
            return LaurentPoly.constant(self.field, self.variables, int(token.text))
        if token.kind == "var":
            self.advance()
            if token.text == "t":
                if self.field.degree == 1:
                    raise ParseError(f"unknown variable t over {self.field}", token.column)
                return LaurentPoly.constant(self.field, self.variables, self.field.gen)
            return LaurentPoly.variable(self.field, self.variables, int(token.text[1:]))
        if token.kind == "op" and token.text == "(":
            self.advance()
            value = self.expression()
            self.expect_op(")")
            return value
        if token.kind == "end":
            raise ParseError("unexpected end of input", token.column)
        raise ParseError(f"unexpected {token.text!r}", token.column)


@dataclass(frozen=True)
class PolyExpr:
    """A parsed polynomial together with its source text.

    Attributes
    ----------
    text: :class:`str`
        The source.
    poly: :class:`~brauerheight.core.laurent.LaurentPoly`
        The polynomial in ``x0`` up to the highest variable used (or the
        requested number of variables).
    p: :class:`int`
        Characteristic of the declared field.
    d: :class:`int`
        Degree of the declared field.
    """

    text: str
    poly: LaurentPoly
    p: int
    d: int

    def __str__(self) -> str:
        return str(self.poly)


def parse_poly(text: str, field: Field, arity: Optional[int] = None) -> PolyExpr:
    """Parse ``text`` into a polynomial over ``field``.

    Parameters
    ----------
    text: :class:`str`
        The polynomial.
    field: :class:`~brauerheight.core.field.Field`
        The coefficient field.
    arity: Optional[:class:`int`]
        Number of variables; defaults to one past the highest index used.

    Raises
    ------
    ParseError
        Syntax errors, unknown identifiers and oversized exponents, with
        the 1-based column of the offending character.
    """
    if not text.strip():
        raise ParseError("empty polynomial", 1)

    tokens = _tokenize(text)
    indices = [int(t.text[1:]) for t in tokens if t.kind == "var" and t.text != "t"]
    needed = max(indices) + 1 if indices else 1
    if arity is None:
        arity = needed
    elif needed > arity:
        column = next(
            t.column
            for t in tokens
            if t.kind == "var" and t.text != "t" and int(t.text[1:]) >= arity
        )
        raise ParseError(f"unknown variable for {arity} variables", column)

    variables = tuple(f"x{i}" for i in range(arity))
    parser = _Parser(tokens, field, variables)
    poly = parser.expression()
    if parser.current.kind != "end":
        raise ParseError(f"unexpected {parser.current.text!r}", parser.current.column)
    return PolyExpr(text, poly, field.p, field.degree)
