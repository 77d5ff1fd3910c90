"""Parser for the text form shared by printing, the CLI, and certificates.

Grammar (whitespace is insignificant)::

    expr     := [sign] term (sign term)*
    term     := power (['*'] power)*          juxtaposition multiplies
    power    := atom ['^' exponent]
    atom     := INT | 'A' | 't' | 'S_' INT | '(' expr ')'
    exponent := ['-'] INT | '(' ['-'] INT ')'

An expression that mentions ``S_k`` and never ``t`` comes back in the
Chebyshev basis; anything else is in the monomial basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .chebyshev import Basis, TPoly, chebyshev_S, to_chebyshev, tpoly_mul
from .laurent import LaurentPoly

__all__ = ["ParseError", "parse", "parse_poly", "parse_laurent"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"syntax error at line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Tok:
    kind: str  # INT A t S ^ + - * ( ) END
    value: Optional[int]
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+)|(S_)(\d+)|([At^+\-*()]))")


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    while True:
        m = _TOKEN.match(text, i)
        if m is None:
            j = i
            while j < len(text) and text[j].isspace():
                j += 1
            if j == len(text):
                toks.append(_Tok("END", None, j))
                return toks
            raise _error(text, j, f"unexpected character {text[j]!r}")
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("INT", int(m.group(1)), start))
        elif m.group(2):
            toks.append(_Tok("S", int(m.group(3)), m.start(2)))
        else:
            toks.append(_Tok(m.group(4), None, start))
        i = m.end()


def _error(text: str, pos: int, message: str) -> ParseError:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return ParseError(message, line, col)


_STARTS_ATOM = {"INT", "A", "t", "S", "("}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.saw_t = False
        self.saw_s = False

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            want = {"INT": "an integer", "END": "end of input"}.get(kind, repr(kind))
            got = "end of input" if tok.kind == "END" else repr(self.text[tok.pos])
            raise _error(self.text, tok.pos, f"expected {want}, found {got}")
        self.i += 1
        return tok

    def expr(self) -> TPoly:
        negate = False
        if self.peek().kind in "+-":
            negate = self.take(self.peek().kind).kind == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek().kind in ("+", "-"):
            op = self.take(self.peek().kind).kind
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> TPoly:
        acc = self.power()
        while True:
            kind = self.peek().kind
            if kind == "*":
                self.take("*")
            elif kind not in _STARTS_ATOM:
                return acc
            acc = tpoly_mul(acc, self.power())

    def power(self) -> TPoly:
        tok = self.peek()
        base = self.atom()
        if self.peek().kind != "^":
            return base
        caret = self.take("^")
        k = self.exponent()
        if k >= 0:
            out = TPoly({0: 1})
            for _ in range(k):
                out = tpoly_mul(out, base)
            return out
        # negative powers only for units c*A^e
        if base.degree == 0 and base[0].is_unit():
            return TPoly({0: base[0] ** k})
        raise _error(self.text, caret.pos, f"negative exponent on non-unit starting at column {tok.pos + 1}")

    def exponent(self) -> int:
        paren = self.peek().kind == "("
        if paren:
            self.take("(")
        sign = 1
        if self.peek().kind == "-":
            self.take("-")
            sign = -1
        k = sign * self.take("INT").value
        if paren:
            self.take(")")
        return k

    def atom(self) -> TPoly:
        tok = self.peek()
        if tok.kind == "INT":
            self.i += 1
            return TPoly({0: tok.value})
        if tok.kind == "A":
            self.i += 1
            return TPoly({0: LaurentPoly({1: 1})})
        if tok.kind == "t":
            self.i += 1
            self.saw_t = True
            return TPoly({1: 1})
        if tok.kind == "S":
            self.i += 1
            self.saw_s = True
            return chebyshev_S(tok.value)
        if tok.kind == "(":
            self.i += 1
            inner = self.expr()
            self.take(")")
            return inner
        got = "end of input" if tok.kind == "END" else repr(self.text[tok.pos])
        raise _error(self.text, tok.pos, f"expected a term, found {got}")


def parse(text: str) -> TPoly:
    """Parse ``text`` into a :class:`TPoly` (Chebyshev basis iff only ``S_k`` appear)."""
    p = _Parser(text)
    value = p.expr()
    p.take("END")
    if p.saw_s and not p.saw_t:
        return to_chebyshev(value)
    return value


parse_poly = parse


def parse_laurent(text: str) -> LaurentPoly:
    """Parse a Laurent polynomial in ``A``; ``t`` and ``S_k`` are rejected."""
    p = _Parser(text)
    value = p.expr()
    p.take("END")
    if p.saw_t or p.saw_s:
        raise ValueError(f"expected a Laurent polynomial in A, got {text!r}")
    return value[0]
