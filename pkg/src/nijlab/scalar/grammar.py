"""Text form of Scalars.

Grammar (whitespace insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | '+' unary | power
    power   := atom ('^' INT)?
    atom    := INT | SYMBOL | '(' expr ')'

Symbols: r2, r3, r6 (square roots), t, s (sinh t), k, l1, l2.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import DivisionByZero, ScalarSyntaxError, UnknownSymbol
from .algebraic import R2, R3, R6, AlgebraicNumber
from .poly import VARIABLES, Indeterminate, Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")

_CONSTANTS = {"r2": R2, "r3": R3, "r6": R6}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the pattern matches any non-space
            raise ScalarSyntaxError("unexpected input", pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ScalarSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        from .field import Scalar

        self.Scalar = Scalar
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, text, pos = self.take()
        if text != value or kind != "op":
            raise ScalarSyntaxError(f"expected {value!r}, found {text or 'end of input'!r}", pos)

    def parse(self):
        if self.peek()[0] == "end":
            raise ScalarSyntaxError("empty expression", 0)
        value = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ScalarSyntaxError(f"unexpected {text!r}", pos)
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise DivisionByZero(f"division by zero at position {pos}")
                value = value / rhs
        return value

    def unary(self):
        kind, text, _ = self.peek()
        if kind == "op" and text in ("-", "+"):
            self.take()
            operand = self.unary()
            return -operand if text == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            kind, text, pos = self.take()
            if kind != "int":
                raise ScalarSyntaxError("exponent must be a nonnegative integer", pos)
            return base ** int(text)
        return base

    def atom(self):
        kind, text, pos = self.take()
        if kind == "int":
            return self.Scalar.of(int(text))
        if kind == "name":
            if text in _CONSTANTS:
                return self.Scalar.of(_CONSTANTS[text])
            try:
                v = Indeterminate(text)
            except ValueError:
                raise UnknownSymbol(f"unknown symbol {text!r}", pos) from None
            return self.Scalar.var(v)
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ScalarSyntaxError(f"unexpected {text or 'end of input'!r}", pos)


def parse_scalar(text: str):
    """Parse the scalar grammar into an exact Scalar."""
    return _Parser(text).parse()


# printing -----------------------------------------------------------------

def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_algebraic(x: AlgebraicNumber) -> str:
    parts = []
    for q, sym in zip(x.parts(), ("", "r2", "r3", "r6")):
        if q == 0:
            continue
        mag = abs(q)
        if not sym:
            body = _frac(mag)
        elif mag == 1:
            body = sym
        elif mag.denominator == 1:
            body = f"{mag.numerator}*{sym}"
        else:
            body = f"{mag.numerator}*{sym}/{mag.denominator}"
        parts.append(("-" if q < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += sign + body
    return out


def _monomial(exps: tuple) -> str:
    factors = []
    for v, e in zip(VARIABLES, exps):
        if e == 1:
            factors.append(v.value)
        elif e > 1:
            factors.append(f"{v.value}^{e}")
    return "*".join(factors)


def _term(exps: tuple, c: AlgebraicNumber) -> tuple[str, str]:
    """(sign, body) of one polynomial term."""
    mono = _monomial(exps)
    nonzero = sum(1 for q in c.parts() if q != 0)
    if nonzero > 1:
        body = f"({format_algebraic(c)})"
        return "+", body + ("*" + mono if mono else "")
    q, sym = next((q, s) for q, s in zip(c.parts(), ("", "r2", "r3", "r6")) if q != 0)
    sign = "-" if q < 0 else "+"
    mag = abs(q)
    num = "" if mag.numerator == 1 and (sym or mono) else str(mag.numerator)
    head = "*".join(x for x in (num, sym, mono) if x)
    if mag.denominator != 1:
        head = f"{head}/{mag.denominator}"
    return sign, head


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = ""
    for i, e in enumerate(sorted(p.terms, reverse=True)):
        sign, body = _term(e, p.terms[e])
        if i == 0:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f"{sign}{body}"
    return out


def print_scalar(x) -> str:
    """Canonical text of a Scalar; ``parse_scalar(print_scalar(x)) == x``."""
    num = format_poly(x.num)
    if not x.den:
        return num
    if len(x.num.terms) > 1:
        num = f"({num})"
    factors = []
    for f, e in x.den:
        body = format_poly(f)
        if len(f.terms) > 1:
            body = f"({body})"
        factors.append(body if e == 1 else f"{body}^{e}")
    if len(factors) == 1 and x.den[0][1] == 1:
        return f"{num}/{factors[0]}"
    return f"{num}/({'*'.join(factors)})"
