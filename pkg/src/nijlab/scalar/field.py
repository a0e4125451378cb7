"""Rational functions in the indeterminates {t, s, k, l1, l2} over Q(sqrt2, sqrt3).

A Scalar is a numerator polynomial over a denominator kept as a product of
monic factor polynomials. There is no general multivariate gcd. Adding two
Scalars first refines both denominators to a common factor base using
divisibility tests, plus Euclid's algorithm when both factors are univariate
in the same indeterminate. This keeps the catalog expressions at low degree.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from ..errors import DivisionByZero, PoleError, UnboundIndeterminate, ZeroInput
from .algebraic import ONE, AlgebraicNumber
from .poly import (
    Indeterminate,
    Poly,
    poly_gcd_univariate,
    poly_is_zero,
    squarefree_decomposition,
    univariate_in,
)

T, S, K, L1, L2 = (Indeterminate.T, Indeterminate.S, Indeterminate.K,
                   Indeterminate.L1, Indeterminate.L2)


def _split(p: Poly) -> tuple[AlgebraicNumber, dict]:
    """Write a nonzero polynomial as constant * product of monic factors."""
    content = p.monomial_content()
    factors: dict = {}
    for i, e in enumerate(content):
        if e:
            factors[Poly.variable(list(Indeterminate)[i])] = e
    if any(content):
        p = p.unshift(content)
    lc, m = p.monic()
    if not m.is_constant():
        for f, e in squarefree_decomposition(m):
            factors[f] = factors.get(f, 0) + e
    return lc, factors


@lru_cache(maxsize=8192)
def _common(f: Poly, g: Poly) -> Poly | None:
    """A nonconstant common factor of two monic factors, if cheaply found."""
    if f == g:
        return None
    if g.exact_div(f) is not None:
        return f
    if f.exact_div(g) is not None:
        return g
    vf, vg = univariate_in(f), univariate_in(g)
    if vf is not None and vf == vg:
        h = poly_gcd_univariate(f, g)
        if not h.is_constant():
            return h
    return None


def _replace(den: dict, old: Poly, h: Poly) -> None:
    e = den.pop(old)
    den[h] = den.get(h, 0) + e
    q = old.exact_div(h)
    if not q.is_constant():
        den[q] = den.get(q, 0) + e


def _refine(*dens: dict) -> None:
    """Rewrite the given denominators in place over a shared factor base."""
    while True:
        base = sorted({f for d in dens for f in d}, key=Poly.sort_key)
        split = None
        for a in range(len(base)):
            for b in range(a + 1, len(base)):
                h = _common(base[a], base[b])
                if h is not None:
                    split = (h, base[a], base[b])
                    break
            if split:
                break
        if split is None:
            return
        h, f, g = split
        for d in dens:
            for old in (f, g):
                if old in d and old != h:
                    _replace(d, old, h)


def _expand(den: Mapping[Poly, int]) -> Poly:
    out = Poly.constant(1)
    for f, e in den.items():
        out = out * f ** e
    return out


class Scalar:
    """Exact element of Q(sqrt2, sqrt3)(t, s, k, l1, l2); immutable."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Mapping[Poly, int] | None = None) -> None:
        num, den = _normalize(num, dict(den or {}))
        self.num = num
        self.den = tuple(sorted(den.items(), key=lambda fe: fe[0].sort_key()))

    @classmethod
    def of(cls, x) -> Scalar:
        if isinstance(x, Scalar):
            return x
        if isinstance(x, Indeterminate):
            return cls(Poly.variable(x))
        if isinstance(x, str):
            from .grammar import parse_scalar

            return parse_scalar(x)
        if isinstance(x, float):
            raise TypeError("floats are not exact Scalars; use Fraction")
        return cls(Poly.constant(AlgebraicNumber.coerce(x)))

    @classmethod
    def var(cls, v: Indeterminate | str) -> Scalar:
        if isinstance(v, str):
            v = Indeterminate.from_name(v)
        return cls(Poly.variable(v))

    # structure ------------------------------------------------------------
    def den_dict(self) -> dict:
        return dict(self.den)

    def den_poly(self) -> Poly:
        return _expand(self.den_dict())

    def is_zero(self) -> bool:
        return poly_is_zero(self.num)

    def is_constant(self) -> bool:
        return not self.den and self.num.is_constant()

    def constant_value(self) -> AlgebraicNumber:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value()

    def variables(self) -> set[Indeterminate]:
        vs = set(self.num.variables())
        for f, _ in self.den:
            vs.update(f.variables())
        return vs

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        d1, d2 = self.den_dict(), other.den_dict()
        if d1 == d2:
            return Scalar(self.num + other.num, d1)
        _refine(d1, d2)
        n1, n2 = self.num, other.num
        lcm = {f: max(d1.get(f, 0), d2.get(f, 0)) for f in set(d1) | set(d2)}
        num = (n1 * _expand({f: lcm[f] - d1.get(f, 0) for f in lcm})
               + n2 * _expand({f: lcm[f] - d2.get(f, 0) for f in lcm}))
        return Scalar(num, lcm)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar(-self.num, self.den_dict())

    def __sub__(self, other) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Scalar:
        return _coerce(other) - self

    def __mul__(self, other) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO_SCALAR
        if not other.den and other.num.is_constant():
            return Scalar(self.num.scale(other.num.constant_value()), self.den_dict())
        if not self.den and self.num.is_constant():
            return Scalar(other.num.scale(self.num.constant_value()), other.den_dict())
        d1, d2 = self.den_dict(), other.den_dict()
        # refinement keeps each expanded denominator, so numerators are unchanged
        _refine(d1, d2)
        den = dict(d1)
        for f, e in d2.items():
            den[f] = den.get(f, 0) + e
        return Scalar(self.num * other.num, den)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise DivisionByZero("division by a Scalar that is identically zero")
        lc, factors = _split(self.num)
        num = self.den_poly().scale(lc.inverse())
        return Scalar(num, factors)

    def __truediv__(self, other) -> Scalar:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> Scalar:
        return _coerce(other) * self.inverse()

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ONE_SCALAR
        den = {f: e * n for f, e in self.den}
        return Scalar(self.num ** n, den)

    # equality -------------------------------------------------------------
    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return False
        if self.den == other.den:
            return poly_is_zero(self.num - other.num)
        return (self - other).is_zero()

    __hash__ = None  # equality is semantic, not structural

    # evaluation -----------------------------------------------------------
    def evaluate(self, bindings: Mapping, exact_arithmetic: bool = True):
        """Numeric value at the given bindings.

        Keys may be Indeterminates or their names. If ``s`` occurs but only
        ``t`` is bound, ``s`` is bound to sinh(t). Exact bindings with a
        rational result return a Fraction; otherwise a float is returned.
        """
        b = _bindings(bindings)
        inexact = any(isinstance(x, float) for x in b.values())
        if S in self.variables() and S not in b:
            if T not in b:
                raise UnboundIndeterminate("indeterminate 's' is not bound (bind t or s)")
            tv = b[T]
            if tv == 0:
                b[S] = 0
            else:
                b[S] = math.sinh(float(tv))
                inexact = True
        for v in self.variables():
            if v not in b:
                raise UnboundIndeterminate(f"indeterminate {v.value!r} is not bound")
        if not exact_arithmetic and inexact:
            num = self.num.evaluate(b)
            den = 1.0
            for f, e in self.den:
                den *= f.evaluate(b) ** e
            if den == 0.0:
                raise PoleError(f"denominator of {self} vanishes at {_show(b)}")
            return num / den
        eb = {v: Fraction(x) if isinstance(x, float) else x for v, x in b.items()}
        den = AlgebraicNumber.coerce(1)
        for f, e in self.den:
            fv = f.evaluate(eb)
            if fv.is_zero():
                raise PoleError(f"denominator of {self} vanishes at {_show(b)}")
            den = den * fv ** e
        value = self.num.evaluate(eb) / den
        if not inexact and value.is_rational():
            return value.to_fraction()
        return float(value)

    def substitute(self, bindings: Mapping) -> Scalar:
        """Replace some indeterminates by exact values."""
        b = _bindings(bindings)
        for v, x in b.items():
            if isinstance(x, float):
                raise TypeError(f"substitution for {v.value} must be exact, got float")
        out = Scalar(self.num.substitute(b))
        for f, e in self.den:
            fs = f.substitute(b)
            if not fs:
                raise PoleError(f"denominator factor of {self} vanishes at {_show(b)}")
            out = out / Scalar(fs) ** e
        return out

    def __float__(self) -> float:
        return float(self.constant_value())

    # asymptotics ----------------------------------------------------------
    def asymptotic_order(self) -> tuple[int, int]:
        """Growth grading (s_order, t_order) as t -> infinity with s = sinh t."""
        if self.is_zero():
            raise ZeroInput("asymptotic order of zero")
        s_num = self.num.degree(S)
        t_num = self.num.leading_part(S).degree(T)
        s_den = sum(f.degree(S) * e for f, e in self.den)
        t_den = sum(f.leading_part(S).degree(T) * e for f, e in self.den)
        return (s_num - s_den, t_num - t_den)

    def tends_to_zero(self) -> bool:
        return self.is_zero() or self.asymptotic_order() < (0, 0)

    # text -----------------------------------------------------------------
    def __str__(self) -> str:
        from .grammar import print_scalar

        return print_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


def _normalize(num: Poly, den: dict) -> tuple[Poly, dict]:
    den = {f: e for f, e in den.items() if e}
    if not num:
        return num, {}
    # constant factors never live in the denominator
    for f in [f for f in den if f.is_constant()]:
        c = f.constant_value()
        if c.is_zero():
            raise DivisionByZero("zero denominator factor")
        num = num.scale((c ** den.pop(f)).inverse())
    # a denominator factor dividing the numerator cancels
    for f in sorted(den, key=Poly.sort_key):
        e = den[f]
        while e:
            q = num.exact_div(f)
            if q is None:
                break
            num, e = q, e - 1
        if e:
            den[f] = e
        else:
            del den[f]
    return num, den


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction, AlgebraicNumber)):
        return Scalar(Poly.constant(AlgebraicNumber.coerce(x)))
    return NotImplemented


def _bindings(bindings: Mapping) -> dict:
    out = {}
    for key, x in bindings.items():
        v = key if isinstance(key, Indeterminate) else Indeterminate.from_name(str(key))
        out[v] = x
    return out


def _show(b: Mapping) -> str:
    return "{" + ", ".join(f"{v.value}={x}" for v, x in b.items()) + "}"


def family_time(t, **params) -> dict:
    """Bindings for family time ``t``, coupling s = sinh(t)."""
    b = {T: t, S: math.sinh(float(t)) if t != 0 else 0}
    for name, x in params.items():
        b[Indeterminate.from_name(name)] = x
    return b


ZERO_SCALAR = Scalar(Poly())
ONE_SCALAR = Scalar(Poly.constant(ONE))
