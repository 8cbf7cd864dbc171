"""Text grammar for polynomials.

    expr   := ['-'|'+'] term (('+'|'-') term)*
    term   := power (('*'|'/') power)*
    power  := atom ['^' INT]
    atom   := INT | NAME | 'zeta' | '(' expr ')'

Division is only allowed by nonzero constants, so ``2/3*X`` and ``(1/2)*Y``
both read as expected.  ``zeta`` is omega.
"""
from __future__ import annotations

import re

from ..exact import OMEGA, CycNum
from .poly import GREVLEX, RESERVED, MPoly, VarSet, sorted_terms


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownIdentifier(PolySyntaxError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown identifier {name!r}", position)
        self.name = name


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, varset: VarSet):
        self.tokens = _tokenize(text)
        self.i = 0
        self.varset = varset

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise PolySyntaxError(f"expected {op!r}", tok[2])

    def parse(self) -> MPoly:
        if self.peek()[0] == "end":
            raise PolySyntaxError("empty expression", 0)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolySyntaxError(f"unexpected token {tok[1]!r}", tok[2])
        return p

    def expr(self) -> MPoly:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def term(self) -> MPoly:
        p = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.take()
                q = self.power()
                if tok[1] == "*":
                    p = p * q
                else:
                    if not q.is_constant() or q.is_zero():
                        raise PolySyntaxError("division only by nonzero constants", tok[2])
                    p = p / q.constant_value()
            else:
                return p

    def power(self) -> MPoly:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            neg = False
            t = self.peek()
            if t[0] == "op" and t[1] == "-":
                self.take()
                neg = True
            e = self.take()
            if e[0] != "int":
                raise PolySyntaxError("exponent must be an integer literal", e[2])
            n = int(e[1])
            if neg:
                if not base.is_constant() or base.is_zero():
                    raise PolySyntaxError("negative exponent of a non-constant", e[2])
                return MPoly.const(self.varset, base.constant_value() ** (-n))
            return base ** n
        return base

    def atom(self) -> MPoly:
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return MPoly.const(self.varset, int(val))
        if kind == "name":
            if val == RESERVED:
                return MPoly.const(self.varset, OMEGA)
            if val not in self.varset:
                raise UnknownIdentifier(val, pos)
            return MPoly.var(self.varset, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", pos)
        raise PolySyntaxError(f"unexpected token {val!r}", pos)


def parse_poly(text: str, varset) -> MPoly:
    varset = varset if isinstance(varset, VarSet) else VarSet(varset)
    return _Parser(text, varset).parse()


def parse_number(text: str) -> CycNum:
    """Parse a constant expression such as ``-2*zeta`` or ``3/4``."""
    p = parse_poly(text, VarSet(()))
    return p.constant_value()


def _format_monomial(e, names) -> str:
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts)


def _format_term(c: CycNum, mono: str) -> str:
    if c.is_rational():
        r = c.re0
        if not mono:
            return str(r)
        if r == 1:
            return mono
        if r == -1:
            return "-" + mono
        return f"{r}*{mono}"
    if not c.re0:
        b = c.re1
        coeff = "zeta" if b == 1 else "-zeta" if b == -1 else f"{b}*zeta"
        return f"{coeff}*{mono}" if mono else coeff
    text = str(c)
    return f"({text})*{mono}" if mono else f"({text})"


def format_poly(p: MPoly, order=GREVLEX) -> str:
    """Canonical printing: terms in descending order, ``+``/``-`` joined."""
    if not p.terms:
        return "0"
    out = ""
    for e, c in sorted_terms(p, order):
        t = _format_term(c, _format_monomial(e, p.varset))
        if not out:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out
