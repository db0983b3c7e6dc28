"""Infix polynomial text: parsing and printing.

Grammar (UTF-8, '#' comments handled by the file layer):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-')* base ('^' | '**' integer)?
    base   := number | identifier | '(' expr ')'

Numbers may be integers, fractions written with '/', or decimal literals;
decimals are converted exactly (floating point numbers are rationals).
Division is supported when the denominator is a nonzero constant; for
rational-function contexts use :func:`parse_rational_function`.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .rationals import ONE, Rational, rational_from_decimal

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


def tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r} in {text!r}")
            break
        if m.group("num"):
            out.append(("num", m.group("num")))
        elif m.group("name"):
            out.append(("name", m.group("name")))
        else:
            op = m.group("op")
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    """Recursive-descent parser producing (numerator, denominator) pairs in
    any algebra that provides const/var/add/sub/mul/is_zero."""

    def __init__(self, tokens, algebra):
        self.toks = tokens
        self.i = 0
        self.alg = algebra

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val!r}")

    def parse(self):
        value = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input near {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            rhs = self.term()
            value = self._add(value, rhs) if op == "+" else self._sub(value, rhs)
        return value

    def term(self):
        value = self.factor()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            _, op = self.take()
            rhs = self.factor()
            if op == "*":
                value = self._mul(value, rhs)
            else:
                value = self._div(value, rhs)
        return value

    def factor(self):
        sign = 1
        while self.peek() in (("op", "+"), ("op", "-")):
            if self.take()[1] == "-":
                sign = -sign
        value = self.base()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            neg = False
            if (kind, val) == ("op", "-"):
                neg = True
                kind, val = self.take()
            if kind != "num" or "." in val:
                raise ParseError("exponent must be an integer")
            value = self._pow(value, int(val), neg)
        if sign < 0:
            value = self._neg(value)
        return value

    def base(self):
        kind, val = self.take()
        if kind == "num":
            return (self.alg.const(rational_from_decimal(val)), self.alg.const(ONE))
        if kind == "name":
            return (self.alg.var(val), self.alg.const(ONE))
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")

    # fraction-pair arithmetic ------------------------------------------

    def _add(self, a, b):
        return (self.alg.add(self.alg.mul(a[0], b[1]), self.alg.mul(b[0], a[1])), self.alg.mul(a[1], b[1]))

    def _sub(self, a, b):
        return (self.alg.sub(self.alg.mul(a[0], b[1]), self.alg.mul(b[0], a[1])), self.alg.mul(a[1], b[1]))

    def _mul(self, a, b):
        return (self.alg.mul(a[0], b[0]), self.alg.mul(a[1], b[1]))

    def _div(self, a, b):
        if self.alg.is_zero(b[0]):
            raise ParseError("division by zero")
        return (self.alg.mul(a[0], b[1]), self.alg.mul(a[1], b[0]))

    def _neg(self, a):
        return (self.alg.sub(self.alg.const(Rational(0)), a[0]), a[1])

    def _pow(self, a, k, neg):
        num, den = a
        for _ in range(k - 1):
            num = self.alg.mul(num, a[0])
            den = self.alg.mul(den, a[1])
        if k == 0:
            num, den = self.alg.const(ONE), self.alg.const(ONE)
        return (den, num) if neg else (num, den)


class _MultiAlgebra:
    def __init__(self, variables):
        from .multipoly import MultiPoly

        self.MultiPoly = MultiPoly
        self.vars = tuple(variables)

    def const(self, c):
        return self.MultiPoly.constant(c, self.vars)

    def var(self, name):
        if name not in self.vars:
            raise ParseError(f"undeclared identifier {name!r}")
        return self.MultiPoly.variable(name, self.vars)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a.is_zero()


def parse_multipoly(text: str, variables) -> "MultiPoly":
    """Parse infix text into a polynomial over the declared variables."""
    alg = _MultiAlgebra(variables)
    num, den = _Parser(tokenize(text), alg).parse()
    if not den.is_constant():
        raise ParseError(f"not a polynomial (nonconstant denominator): {text!r}")
    return num * (ONE / den.constant_value())


def parse_unipoly(text: str, var: str = "x") -> "UniPoly":
    from .multipoly import to_unipoly

    return to_unipoly(parse_multipoly(text, (var,)), var)


def parse_rational_function(text: str, var: str = "s"):
    """Parse into a reduced (numerator, denominator) pair of UniPoly."""
    from .multipoly import to_unipoly
    from .unipoly import poly_gcd

    alg = _MultiAlgebra((var,))
    num, den = _Parser(tokenize(text), alg).parse()
    n, d = to_unipoly(num, var), to_unipoly(den, var)
    if d.is_zero():
        raise ParseError("zero denominator")
    g = poly_gcd(n, d)
    if g.degree > 0:
        n, d = n.exact_div(g), d.exact_div(g)
    if d.lc < 0:
        n, d = -n, -d
    return n, d


# -- printing ----------------------------------------------------------------


def _coeff_str(c, first: bool, with_var: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = -c if c < 0 else c
    if with_var and mag == 1:
        body = ""
    else:
        body = str(mag)
    if first:
        out = sign + body
    else:
        out = f" {sign} {body}" if sign in ("+", "-") else body
    if with_var and body and not out.endswith("*"):
        out += "*"
    return out


def format_unipoly(p) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        first = not parts
        if k == 0:
            parts.append(_coeff_str(c, first, with_var=False))
        else:
            head = _coeff_str(c, first, with_var=True)
            mono = p.var if k == 1 else f"{p.var}^{k}"
            parts.append(head + mono)
    return "".join(parts)


def format_multipoly(p) -> str:
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
    parts = []
    for exps, c in items:
        first = not parts
        monos = [
            (v if e == 1 else f"{v}^{e}")
            for v, e in zip(p.vars, exps)
            if e
        ]
        if not monos:
            parts.append(_coeff_str(c, first, with_var=False))
        else:
            head = _coeff_str(c, first, with_var=True)
            parts.append(head + "*".join(monos))
    return "".join(parts)
