"""Parser for rational-function expressions in x and y.

Grammar: integers, rationals a/b, variables x and y, operators + - * / ^
(caret takes a nonnegative integer exponent, at most 64), and parentheses.
Whitespace is free.  `/` is ordinary field division, so nested quotients
normalize through rational-function arithmetic.  Errors report (line,
column) positions.
"""

from __future__ import annotations

from fractions import Fraction

from .bipoly import BiPoly, PolynomialError
from .ratfun import RatFun

MAX_EXPONENT = 64


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(src: str) -> list[_Token]:
    out = []
    line, col = 1, 1
    i = 0
    while i < len(src):
        c = src[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            col += 1
            i += 1
            continue
        if c.isdigit():
            start = i
            startcol = col
            while i < len(src) and src[i].isdigit():
                i += 1
                col += 1
            out.append(_Token("int", src[start:i], line, startcol))
            continue
        if c in "xy":
            out.append(_Token("var", c, line, col))
            i += 1
            col += 1
            continue
        if c in "+-*/^()":
            out.append(_Token(c, c, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    out.append(_Token("end", "", line, col))
    return out


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.toks = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def pop(self) -> _Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def parse(self) -> RatFun:
        v = self.expr(0)
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected token {t.text!r}", t.line, t.col)
        return v

    def expr(self, min_prec: int) -> RatFun:
        lhs = self.atom()
        while True:
            t = self.peek()
            if t.kind not in _PREC or _PREC[t.kind] < min_prec:
                return lhs
            self.pop()
            if t.kind == "^":
                lhs = self.power(lhs, t)
                continue
            rhs = self.expr(_PREC[t.kind] + 1)
            if t.kind == "+":
                lhs = lhs + rhs
            elif t.kind == "-":
                lhs = lhs - rhs
            elif t.kind == "*":
                lhs = lhs * rhs
            elif t.kind == "/":
                if rhs.is_zero():
                    raise ParseError("division by the zero polynomial", t.line, t.col)
                lhs = lhs / rhs
        return lhs

    def power(self, base: RatFun, caret: _Token) -> RatFun:
        t = self.peek()
        if t.kind == "(":
            self.pop()
            inner = self.expr(0)
            close = self.pop()
            if close.kind != ")":
                raise ParseError("expected closing parenthesis", close.line, close.col)
            e = _as_int(inner, t)
        elif t.kind == "int":
            self.pop()
            e = int(t.text)
        else:
            raise ParseError("exponent must be a nonnegative integer", t.line, t.col)
        if e > MAX_EXPONENT:
            raise ParseError(f"exponent overflow (> {MAX_EXPONENT})", caret.line, caret.col)
        return base ** e

    def atom(self) -> RatFun:
        t = self.pop()
        if t.kind == "int":
            return RatFun.const(Fraction(int(t.text)))
        if t.kind == "var":
            return RatFun.from_poly(BiPoly.x() if t.text == "x" else BiPoly.y())
        if t.kind == "-":
            return -self.expr(3)
        if t.kind == "+":
            return self.expr(3)
        if t.kind == "(":
            inner = self.expr(0)
            close = self.pop()
            if close.kind != ")":
                raise ParseError("expected closing parenthesis", close.line, close.col)
            return inner
        raise ParseError(f"unexpected token {t.text or 'end of input'!r}", t.line, t.col)


def _as_int(v: RatFun, t: _Token) -> int:
    if not v.is_polynomial() or not v.num.is_constant():
        raise ParseError("exponent must be a nonnegative integer", t.line, t.col)
    q = v.num.constant_value()
    if q.denominator != 1 or q < 0:
        raise ParseError("exponent must be a nonnegative integer", t.line, t.col)
    return int(q)


def parse_expr(text: str) -> RatFun:
    """Parse an expression into a reduced rational function."""
    try:
        return _Parser(_tokenize(text)).parse()
    except PolynomialError as e:
        raise ParseError(str(e), 1, 1) from e
