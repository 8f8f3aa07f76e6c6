"""Surface syntax for class expressions.

Grammar:
    expr := term { ("+" | "-") term }
    term := [ integer [ "*" ] ] atom | integer
    atom := "lambda" [ "(" frac ")" ] | "kappa1" [ "(" frac ")" ] | "mu"
    frac := integer "/" integer

A bare name means tensor power r/r. The denominator of every fraction
must equal the context's r. The only bare integer term allowed is 0.
"""

from __future__ import annotations

import re

from . import errors
from .classes import FormalClass, Kappa1, Lambda, MU

_TOKEN = re.compile(r"\s*(?:(\d+)|(lambda|kappa1|mu)|([()+\-*/]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise errors.ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, r: int, r_even: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.r = r
        self.r_even = r_even

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise errors.ParseError(f"expected {op!r}", pos)

    def parse(self) -> FormalClass:
        terms = []
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        terms.append(self.term(sign))
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            _, op, _ = self.take()
            terms.append(self.term(1 if op == "+" else -1))
        kind, _, pos = self.peek()
        if kind != "end":
            raise errors.ParseError("trailing input", pos)
        total = FormalClass.zero()
        for t in terms:
            total = total + t
        return total

    def term(self, sign: int) -> FormalClass:
        kind, val, pos = self.peek()
        coeff = 1
        if kind == "int":
            self.take()
            coeff = val
            nxt = self.peek()
            if nxt[:2] == ("op", "*"):
                self.take()
            elif nxt[0] != "name":
                if coeff != 0:
                    raise errors.ParseError("a bare integer term must be 0", pos)
                return FormalClass.zero()
        elif kind != "name":
            raise errors.ParseError("expected a class name or integer", pos)
        sym = self.atom()
        return FormalClass.single(sym, sign * coeff)

    def atom(self):
        kind, name, pos = self.take()
        if kind != "name":
            raise errors.ParseError("expected lambda, kappa1 or mu", pos)
        if name == "mu":
            if not self.r_even:
                raise errors.ParseError(f"mu is not defined for odd r = {self.r}", pos)
            return MU
        power = self.r
        if self.peek()[:2] == ("op", "("):
            self.take()
            power = self.frac()
            self.expect_op(")")
        return Lambda(power) if name == "lambda" else Kappa1(power)

    def frac(self) -> int:
        neg = False
        if self.peek()[:2] == ("op", "-"):
            self.take()
            neg = True
        kind, num, pos = self.take()
        if kind != "int":
            raise errors.ParseError("expected an integer numerator", pos)
        self.expect_op("/")
        kind, den, pos = self.take()
        if kind != "int":
            raise errors.ParseError("expected an integer denominator", pos)
        if den != self.r:
            raise errors.ParseError(f"denominator must equal r = {self.r}, got {den}", pos)
        return -num if neg else num


def parse_class(text: str, r: int) -> FormalClass:
    """Parse an expression like "3*lambda(1/4) - mu" in a given r."""
    return _Parser(text, r, r % 2 == 0).parse()
