"""Sparse multivariate polynomials over Q(sqrt2, sqrt3).

Terms are keyed by exponent tuples over the fixed indeterminate order
``VARIABLES``; tuple comparison gives the lexicographic term order used for
leading terms and division.
"""

from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import DegreeOverflow, DivisionByZero, UnboundIndeterminate
from .algebraic import ONE, ZERO, AlgebraicNumber

MAX_DEGREE = 64


class Indeterminate(enum.Enum):
    T = "t"
    S = "s"
    K = "k"
    L1 = "l1"
    L2 = "l2"

    @property
    def index(self) -> int:
        return _INDEX[self]

    @classmethod
    def from_name(cls, name: str) -> Indeterminate:
        try:
            return cls(name.lower())
        except ValueError:
            try:
                return cls[name.upper()]
            except KeyError:
                raise UnboundIndeterminate(f"unknown indeterminate {name!r}") from None


VARIABLES = tuple(Indeterminate)
_INDEX = {v: i for i, v in enumerate(VARIABLES)}
NVARS = len(VARIABLES)
ZERO_EXP = (0,) * NVARS


def _check_degree(exps: tuple) -> None:
    for e in exps:
        if e > MAX_DEGREE:
            raise DegreeOverflow(
                f"polynomial degree {e} exceeds the cap of {MAX_DEGREE} in one indeterminate"
            )


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, AlgebraicNumber] | None = None) -> None:
        self.terms = {e: c for e, c in (terms or {}).items() if not c.is_zero()}
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict) -> Poly:
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c) -> Poly:
        c = AlgebraicNumber.coerce(c)
        return cls._trusted({} if c.is_zero() else {ZERO_EXP: c})

    @classmethod
    def variable(cls, v: Indeterminate, power: int = 1) -> Poly:
        exps = [0] * NVARS
        exps[v.index] = power
        return cls._trusted({tuple(exps): ONE})

    # inspection -----------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ZERO_EXP in self.terms)

    def constant_value(self) -> AlgebraicNumber:
        return self.terms.get(ZERO_EXP, ZERO)

    def leading(self) -> tuple[tuple, AlgebraicNumber]:
        e = max(self.terms)
        return e, self.terms[e]

    def degree(self, v: Indeterminate) -> int:
        i = v.index
        return max((e[i] for e in self.terms), default=0)

    def max_degrees(self) -> tuple:
        if not self.terms:
            return ZERO_EXP
        return tuple(max(e[i] for e in self.terms) for i in range(NVARS))

    def variables(self) -> list[Indeterminate]:
        degs = self.max_degrees()
        return [v for v in VARIABLES if degs[v.index] > 0]

    def leading_part(self, v: Indeterminate) -> Poly:
        """Terms of maximal degree in ``v``."""
        d = self.degree(v)
        i = v.index
        return Poly._trusted({e: c for e, c in self.terms.items() if e[i] == d})

    def monomial_content(self) -> tuple:
        if not self.terms:
            return ZERO_EXP
        return tuple(min(e[i] for e in self.terms) for i in range(NVARS))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other: Poly) -> Poly:
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            if cur is None:
                out[e] = c
            else:
                s = cur + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return Poly._trusted(out)

    def __neg__(self) -> Poly:
        return Poly._trusted({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        if not self.terms or not other.terms:
            return Poly._trusted({})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                cur = out.get(e)
                out[e] = c if cur is None else cur + c
        degs = [max(e[i] for e in out) for i in range(NVARS)]
        _check_degree(tuple(degs))
        return Poly._trusted({e: c for e, c in out.items() if not c.is_zero()})

    def scale(self, c: AlgebraicNumber) -> Poly:
        if c.is_zero():
            return Poly._trusted({})
        if c.is_one():
            return self
        return Poly._trusted({e: x * c for e, x in self.terms.items()})

    def shift(self, exps: tuple) -> Poly:
        """Multiply by the monomial with exponent tuple ``exps``."""
        _check_degree(tuple(a + b for a, b in zip(self.max_degrees(), exps)))
        return Poly._trusted(
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        )

    def unshift(self, exps: tuple) -> Poly:
        return Poly._trusted(
            {tuple(a - b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        )

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, divisor: Poly) -> tuple[Poly, Poly]:
        """Division with remainder by a single divisor in lex order."""
        if not divisor.terms:
            raise DivisionByZero("polynomial division by zero")
        le, lc = divisor.leading()
        lc_inv = lc.inverse()
        q: dict = {}
        r: dict = {}
        p = dict(self.terms)
        while p:
            e = max(p)
            c = p[e]
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = c * lc_inv
                q[qe] = q[qe] + qc if qe in q else qc
                for de, dc in divisor.terms.items():
                    te = tuple(a + b for a, b in zip(qe, de))
                    val = p.get(te, ZERO) - qc * dc
                    if val.is_zero():
                        p.pop(te, None)
                    else:
                        p[te] = val
            else:
                r[e] = c
                del p[e]
        return Poly(q), Poly._trusted(r)

    def exact_div(self, divisor: Poly) -> Poly | None:
        """Quotient if ``divisor`` divides ``self`` exactly, else None."""
        if not self.terms:
            return self
        le, _ = divisor.leading()
        # the leading term of a multiple is a multiple of the leading term
        if not all(a >= b for a, b in zip(max(self.terms), le)):
            return None
        degs_s, degs_d = self.max_degrees(), divisor.max_degrees()
        if any(b > a for a, b in zip(degs_s, degs_d)):
            return None
        q, r = self.divmod(divisor)
        return q if not r.terms else None

    def monic(self) -> tuple[AlgebraicNumber, Poly]:
        """Split into (leading coefficient, monic polynomial)."""
        _, lc = self.leading()
        if lc.is_one():
            return lc, self
        return lc, self.scale(lc.inverse())

    def derivative(self, v: Indeterminate) -> Poly:
        i = v.index
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly(out)

    # evaluation -----------------------------------------------------------
    def evaluate(self, bindings: Mapping[Indeterminate, object]):
        """Evaluate at exact (int/Fraction/AlgebraicNumber) or float bindings.

        Exact bindings give an AlgebraicNumber; any float binding gives a float.
        """
        degs = self.max_degrees()
        values = []
        use_float = False
        for v in VARIABLES:
            if degs[v.index] == 0:
                values.append(None)
                continue
            if v not in bindings:
                raise UnboundIndeterminate(f"indeterminate {v.value!r} is not bound")
            x = bindings[v]
            if isinstance(x, float):
                use_float = True
            values.append(x)
        if use_float:
            values = [None if x is None else float(x) for x in values]
            powers = [
                None if x is None else [x ** j for j in range(degs[i] + 1)]
                for i, x in enumerate(values)
            ]
            total = 0.0
            for e, c in self.terms.items():
                m = float(c)
                for i, p in enumerate(powers):
                    if p is not None:
                        m *= p[e[i]]
                total += m
            return total
        powers = []
        for i, x in enumerate(values):
            if x is None:
                powers.append(None)
                continue
            x = x if isinstance(x, AlgebraicNumber) else AlgebraicNumber.coerce(
                x if isinstance(x, (int, Fraction)) else Fraction(x))
            pw = [ONE]
            for _ in range(degs[i]):
                pw.append(pw[-1] * x)
            powers.append(pw)
        total = ZERO
        for e, c in self.terms.items():
            m = c
            for i, p in enumerate(powers):
                if p is not None and e[i]:
                    m = m * p[e[i]]
            total = total + m
        return total

    def substitute(self, bindings: Mapping[Indeterminate, object]) -> Poly:
        """Partially evaluate at exact bindings, leaving other indeterminates symbolic."""
        if not bindings:
            return self
        idx = {v.index: AlgebraicNumber.coerce(
            x if isinstance(x, (int, Fraction, AlgebraicNumber)) else Fraction(x))
            for v, x in bindings.items()}
        acc: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            m = c
            for i, x in idx.items():
                if e[i]:
                    m = m * x ** e[i]
                    ne[i] = 0
            key = tuple(ne)
            acc[key] = acc[key] + m if key in acc else m
        return Poly(acc)

    # identity -------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sort_key(self) -> tuple:
        return tuple(sorted(((e, c.sort_key()) for e, c in self.terms.items()), reverse=True))

    def __repr__(self) -> str:
        from .grammar import format_poly

        return f"Poly({format_poly(self)!r})"


def univariate_in(p: Poly) -> Indeterminate | None:
    vs = p.variables()
    return vs[0] if len(vs) == 1 else None


def poly_gcd_univariate(a: Poly, b: Poly) -> Poly:
    """Monic gcd of two polynomials in the same single indeterminate (Euclid)."""
    while b.terms:
        _, r = a.divmod(b)
        a, b = b, r
    if not a.terms:
        return a
    return a.monic()[1]


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm for a monic univariate polynomial: p = prod f_i ** i."""
    v = univariate_in(p)
    if v is None:
        return [(p, 1)]
    dp = p.derivative(v)
    g = poly_gcd_univariate(p, dp)
    if g.is_constant():
        return [(p, 1)]
    out = []
    c = p.exact_div(g)
    d = dp.exact_div(g) - c.derivative(v)
    i = 1
    while not c.is_constant():
        a = poly_gcd_univariate(c, d)
        if not a.is_constant():
            out.append((a, i))
        c = c.exact_div(a)
        d = d.exact_div(a) - c.derivative(v)
        i += 1
    return out


def poly_is_zero(p: Poly) -> bool:
    """Deterministic identity test by exhaustive evaluation on an integer grid.

    For each indeterminate occurring in ``p`` with degree d, the sample points
    0..d are used; a polynomial vanishing on such a grid is identically zero.
    """
    degs = p.max_degrees()
    # grid {0..d} per indeterminate, visited from 1 upward so nonzero
    # polynomials usually fail at the first point
    axes = [(*range(1, degs[i] + 1), 0) if degs[i] else (0,) for i in range(NVARS)]
    for point in itertools.product(*axes):
        if not _eval_at_ints(p, point).is_zero():
            return False
    return True


def _eval_at_ints(p: Poly, point: tuple) -> AlgebraicNumber:
    total = ZERO
    for e, c in p.terms.items():
        m = 1
        for x, k in zip(point, e):
            if k:
                m *= x ** k
        if m:
            total = total + c * m
    return total


def product(polys: Iterable[Poly]) -> Poly:
    out = Poly.constant(1)
    for p in polys:
        out = out * p
    return out
