"""Exact arithmetic in the biquadratic field Q(sqrt2, sqrt3).

Elements are stored as four integer numerators over one positive common
denominator, on the basis (1, sqrt2, sqrt3, sqrt6).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from ..errors import DivisionByZero

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
SQRT6 = math.sqrt(6.0)


def _normalize(p: int, q: int, r: int, s: int, den: int) -> tuple:
    if den == 0:
        raise DivisionByZero("zero denominator")
    if den < 0:
        p, q, r, s, den = -p, -q, -r, -s, -den
    if p == q == r == s == 0:
        return (0, 0, 0, 0, 1)
    g = reduce(math.gcd, (p, q, r, s, den))
    if g != 1:
        p, q, r, s, den = p // g, q // g, r // g, s // g, den // g
    return (p, q, r, s, den)


class AlgebraicNumber:
    """a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational a, b, c, d."""

    __slots__ = ("_v", "_hash")

    def __init__(self, a=0, b=0, c=0, d=0) -> None:
        fa, fb, fc, fd = (Fraction(x) for x in (a, b, c, d))
        den = math.lcm(fa.denominator, fb.denominator, fc.denominator, fd.denominator)
        self._v = _normalize(
            fa.numerator * (den // fa.denominator),
            fb.numerator * (den // fb.denominator),
            fc.numerator * (den // fc.denominator),
            fd.numerator * (den // fd.denominator),
            den,
        )
        self._hash = None

    @classmethod
    def _raw(cls, p: int, q: int, r: int, s: int, den: int) -> AlgebraicNumber:
        obj = cls.__new__(cls)
        obj._v = _normalize(p, q, r, s, den)
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> AlgebraicNumber:
        if isinstance(x, AlgebraicNumber):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0, 0, 0, 1)
        if isinstance(x, Fraction):
            return cls._raw(x.numerator, 0, 0, 0, x.denominator)
        raise TypeError(f"cannot coerce {type(x).__name__} to AlgebraicNumber")

    # components -----------------------------------------------------------
    @property
    def a(self) -> Fraction:
        return Fraction(self._v[0], self._v[4])

    @property
    def b(self) -> Fraction:
        return Fraction(self._v[1], self._v[4])

    @property
    def c(self) -> Fraction:
        return Fraction(self._v[2], self._v[4])

    @property
    def d(self) -> Fraction:
        return Fraction(self._v[3], self._v[4])

    def parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return self._v[0] == 0 and self._v[1] == 0 and self._v[2] == 0 and self._v[3] == 0

    def is_one(self) -> bool:
        return self._v == (1, 0, 0, 0, 1)

    def is_rational(self) -> bool:
        return self._v[1] == 0 and self._v[2] == 0 and self._v[3] == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self._v[0], self._v[4])

    def __float__(self) -> float:
        p, q, r, s, den = self._v
        if q == r == s == 0:
            return p / den
        return (Fraction(p, den).__float__() + float(Fraction(q, den)) * SQRT2
                + float(Fraction(r, den)) * SQRT3 + float(Fraction(s, den)) * SQRT6)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> AlgebraicNumber:
        if not isinstance(other, AlgebraicNumber):
            try:
                other = AlgebraicNumber.coerce(other)
            except TypeError:
                return NotImplemented
        p1, q1, r1, s1, d1 = self._v
        p2, q2, r2, s2, d2 = other._v
        if d1 == d2:
            return AlgebraicNumber._raw(p1 + p2, q1 + q2, r1 + r2, s1 + s2, d1)
        return AlgebraicNumber._raw(
            p1 * d2 + p2 * d1, q1 * d2 + q2 * d1, r1 * d2 + r2 * d1, s1 * d2 + s2 * d1, d1 * d2
        )

    __radd__ = __add__

    def __neg__(self) -> AlgebraicNumber:
        p, q, r, s, den = self._v
        return AlgebraicNumber._raw(-p, -q, -r, -s, den)

    def __sub__(self, other) -> AlgebraicNumber:
        if not isinstance(other, AlgebraicNumber):
            try:
                other = AlgebraicNumber.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> AlgebraicNumber:
        return AlgebraicNumber.coerce(other) - self

    def __mul__(self, other) -> AlgebraicNumber:
        if not isinstance(other, AlgebraicNumber):
            try:
                other = AlgebraicNumber.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d, m = self._v
        e, f, g, h, n = other._v
        if b == c == d == 0:
            return AlgebraicNumber._raw(a * e, a * f, a * g, a * h, m * n)
        if f == g == h == 0:
            return AlgebraicNumber._raw(e * a, e * b, e * c, e * d, m * n)
        # sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2
        return AlgebraicNumber._raw(
            a * e + 2 * b * f + 3 * c * g + 6 * d * h,
            a * f + b * e + 3 * (c * h + d * g),
            a * g + c * e + 2 * (b * h + d * f),
            a * h + d * e + b * g + c * f,
            m * n,
        )

    __rmul__ = __mul__

    def inverse(self) -> AlgebraicNumber:
        if self.is_zero():
            raise DivisionByZero("inverse of zero AlgebraicNumber")
        a, b, c, d, m = self._v
        # x = P + Q sqrt2 with P, Q in Q(sqrt3); x (P - Q sqrt2) = u + v sqrt3
        u = a * a + 3 * c * c - 2 * (b * b + 3 * d * d)
        v = 2 * a * c - 4 * b * d
        norm = u * u - 3 * v * v
        conj = AlgebraicNumber._raw(a, -b, c, -d, 1) * AlgebraicNumber._raw(u, 0, -v, 0, 1)
        p, q, r, s, _ = conj._v
        # x = (..)/m, so x^-1 = m * conj / norm
        return AlgebraicNumber._raw(p * m, q * m, r * m, s * m, norm)

    def __truediv__(self, other) -> AlgebraicNumber:
        if not isinstance(other, AlgebraicNumber):
            try:
                other = AlgebraicNumber.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> AlgebraicNumber:
        return AlgebraicNumber.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> AlgebraicNumber:
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison / hashing -------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraicNumber):
            return self._v == other._v
        if isinstance(other, (int, Fraction)):
            return self._v == AlgebraicNumber.coerce(other)._v
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._v)
        return self._hash

    def sort_key(self) -> tuple:
        return self._v

    def __repr__(self) -> str:
        return f"AlgebraicNumber({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self) -> str:
        from .grammar import format_algebraic

        return format_algebraic(self)


ZERO = AlgebraicNumber._raw(0, 0, 0, 0, 1)
ONE = AlgebraicNumber._raw(1, 0, 0, 0, 1)
R2 = AlgebraicNumber._raw(0, 1, 0, 0, 1)
R3 = AlgebraicNumber._raw(0, 0, 1, 0, 1)
R6 = AlgebraicNumber._raw(0, 0, 0, 1, 1)
