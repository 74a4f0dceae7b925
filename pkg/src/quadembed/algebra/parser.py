"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace ignored):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/')? unary)*       juxtaposition multiplies
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := INT | IDENT | '(' expr ')'

Division is allowed only by a nonzero constant, so ``1/2*x`` and
``(t)/(t^2 + 1)*x`` both work.  Identifiers resolve to ring variables first
and then to parameters of the coefficient field.
"""

from __future__ import annotations

import re

from quadembed.algebra.fields import FieldValue
from quadembed.algebra.poly import Poly, PolyRing
from quadembed.errors import CoefficientError, PolySyntaxError, UnknownVariable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0
        self.params = ring.field.parameters()

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return PolySyntaxError(message, self.text, tok[2])

    def expect_op(self, op):
        tok = self.take()
        if tok != ("op", op, tok[2]):
            raise self.error(f"expected {op!r}", tok)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return result

    def expr(self) -> Poly:
        result = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in ("+", "-"):
                self.take()
                rhs = self.term()
                result = result + rhs if val == "+" else result - rhs
            else:
                return result

    def _starts_atom(self, tok) -> bool:
        kind, val, _ = tok
        return kind in ("int", "ident") or (kind == "op" and val == "(")

    def term(self) -> Poly:
        result = self.unary()
        while True:
            tok = self.peek()
            kind, val, _ = tok
            if kind == "op" and val == "*":
                self.take()
                result = result * self.unary()
            elif kind == "op" and val == "/":
                self.take()
                rhs_tok = self.peek()
                rhs = self.unary()
                if not rhs.is_constant():
                    raise self.error("division by a non-constant expression", rhs_tok)
                if rhs.is_zero():
                    raise CoefficientError(f"division by zero at position {rhs_tok[2]} in {self.text!r}")
                result = result / rhs.constant_coeff()
            elif self._starts_atom(tok):
                result = result * self.unary()
            else:
                return result

    def unary(self) -> Poly:
        kind, val, _ = self.peek()
        if kind == "op" and val in ("+", "-"):
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val in ("^", "**"):
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self.error("exponent must be a nonnegative integer literal", tok)
            return base ** int(tok[1])
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return self.ring.const(int(val))
        if kind == "ident":
            if val in self.ring.vars:
                return self.ring.gen(val)
            if val in self.params:
                return self.ring.const(FieldValue(self.ring.field, self.params[val]))
            raise UnknownVariable(val, self.ring.vars)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected token {val!r}", tok)


def parse_poly(text: str, ring: PolyRing) -> Poly:
    return _Parser(text, ring).parse()
