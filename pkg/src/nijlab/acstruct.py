"""Almost complex structures, the Nijenhuis tensor and the four J_t families.

Sign convention (used everywhere unless ``sign=-1`` is passed)::

    N(X, Y) = [X, Y] + J[JX, Y] + J[X, JY] - [JX, JY]

This is minus the more common textbook convention. Vanishing and decay
statements do not depend on the choice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Mapping, Sequence

import mpmath
import numpy as np

from . import exact
from .errors import DimensionMismatch, NotAlmostComplex, OddDimension, UnknownName
from .liealg import BasisChange, FloatLieAlgebra, LieAlgebra, catalog_algebra, hasegawa_numeric
from .scalar.algebraic import AlgebraicNumber
from .scalar import ONE_SCALAR, ZERO_SCALAR, Indeterminate, Scalar, parse_scalar

FAMILY_NAMES = ("filiform4", "filiform6", "fg_solv", "hasegawa")
FLOAT_ACS_TOL = 1e-10
REL_TOL = 1e-9
ABS_FLOOR = 1e-12


# almost complex check -------------------------------------------------------

@dataclass
class ACSReport:
    ok: bool
    defects: list = field(default_factory=list)  # (row, col, value) of J^2 + I, 1-based

    def __bool__(self) -> bool:
        return self.ok


def _is_float_matrix(J) -> bool:
    return isinstance(J, np.ndarray) or (len(J) > 0 and isinstance(J[0][0], (float, np.floating)))


def check_acs(J, tol: float = FLOAT_ACS_TOL) -> ACSReport:
    """Is J^2 = -I? Exact for Scalar matrices, within ``tol`` (max norm) for floats."""
    n = len(J)
    if any(len(row) != n for row in J):
        raise DimensionMismatch("J must be square")
    if n % 2:
        raise OddDimension(f"almost complex structures need even dimension, got {n}")
    if _is_float_matrix(J):
        Jf = np.asarray(J, dtype=float)
        d = Jf @ Jf + np.eye(n)
        bad = [(i + 1, j + 1, float(d[i, j])) for i in range(n) for j in range(n)
               if abs(d[i, j]) > tol]
        return ACSReport(not bad, bad)
    Js = as_scalar_matrix(J)
    sq = exact.matmul(Js, Js, ZERO_SCALAR)
    bad = []
    for i in range(n):
        for j in range(n):
            d = sq[i][j] + (ONE_SCALAR if i == j else ZERO_SCALAR)
            if not d.is_zero():
                bad.append((i + 1, j + 1, d))
    return ACSReport(not bad, bad)


def as_scalar_matrix(J) -> list[list[Scalar]]:
    return [[parse_scalar(x) if isinstance(x, str) else Scalar.of(x) for x in row] for row in J]


def numeric_acs_defect(J: Sequence[Sequence[Scalar]], bindings: Mapping, dps: int = 0) -> float:
    """max |J^2 + I| after evaluating the entries at ``bindings``.

    ``dps=0`` uses float64 entries and products. A positive ``dps`` evaluates
    the entries exactly, rounds them to ``dps`` significant digits and
    multiplies in that precision. Ill-conditioned J_t at large t need this,
    because float64 rounding alone exceeds 1e-10 once |J|^2 ~ 1e12.
    """
    n = len(J)
    if dps <= 0:
        Jf = np.array([[float(x.evaluate(bindings)) if x.num else 0.0 for x in row] for row in J])
        return float(np.abs(Jf @ Jf + np.eye(n)).max())
    with mpmath.workdps(dps):
        Jm = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                if J[i][j].num:
                    Jm[i, j] = _mp_value(J[i][j], bindings)
        D = Jm * Jm + mpmath.eye(n)
        return float(max(abs(D[i, j]) for i in range(n) for j in range(n)))


def _mpf_fraction(x) -> Fraction:
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def _mp_value(x: Scalar, bindings: Mapping):
    """Exact AlgebraicNumber value, rounded to the working mpmath precision."""
    b = {}
    for key, v in bindings.items():
        v = Fraction(v) if isinstance(v, float) else v
        b[key if isinstance(key, Indeterminate) else Indeterminate.from_name(str(key))] = v
    if Indeterminate.S in x.variables() and Indeterminate.S not in b:
        with mpmath.workdps(mpmath.mp.dps + 20):
            tv = b[Indeterminate.T]
            b[Indeterminate.S] = _mpf_fraction(
                mpmath.sinh(mpmath.mpf(tv.numerator) / tv.denominator))
    den = AlgebraicNumber.coerce(1)
    for f, e in x.den:
        den = den * f.evaluate(b) ** e
    val = x.num.evaluate(b) / den

    def mp(q: Fraction):
        return mpmath.mpf(q.numerator) / q.denominator

    a, r2, r3, r6 = val.parts()
    return mp(a) + mp(r2) * mpmath.sqrt(2) + mp(r3) * mpmath.sqrt(3) + mp(r6) * mpmath.sqrt(6)


# Nijenhuis tensor -------------------------------------------------------------

class NijenhuisTensor:
    """Exact N^k_ij for 1 <= i < j <= n; other pairs follow by skew symmetry."""

    def __init__(self, dim: int, comps: Mapping[tuple[int, int], Sequence[Scalar]]) -> None:
        self.dim = dim
        self.comps = {(i, j): list(v) for (i, j), v in comps.items()}

    def __call__(self, i: int, j: int) -> list[Scalar]:
        """N(X_i, X_j), 1-based."""
        if i == j:
            return [ZERO_SCALAR] * self.dim
        if i < j:
            return self.comps[(i, j)]
        return [-x for x in self.comps[(j, i)]]

    def items(self):
        for i in range(1, self.dim + 1):
            for j in range(i + 1, self.dim + 1):
                for k in range(1, self.dim + 1):
                    yield (i, j, k), self.comps[(i, j)][k - 1]

    def is_zero(self) -> bool:
        return all(x.is_zero() for _, x in self.items())

    def nonzero(self) -> list[tuple[tuple[int, int, int], Scalar]]:
        return [(key, x) for key, x in self.items() if not x.is_zero()]

    def evaluate(self, bindings: Mapping) -> np.ndarray:
        """Full float array N[i, j, k] (0-based, skew completed)."""
        n = self.dim
        out = np.zeros((n, n, n))
        for (i, j, k), x in self.items():
            if x.num:
                v = float(x.evaluate(bindings))
                out[i - 1, j - 1, k - 1] = v
                out[j - 1, i - 1, k - 1] = -v
        return out

    def __neg__(self) -> NijenhuisTensor:
        return NijenhuisTensor(self.dim, {key: [-x for x in v] for key, v in self.comps.items()})


def nijenhuis(g: LieAlgebra | FloatLieAlgebra, J, sign: int = 1, check: bool = True):
    """Nijenhuis tensor of J on g.

    Exact algebras give a NijenhuisTensor; float algebras give an array
    N[i, j, k] = k-th component of N(X_i, X_j).
    """
    if isinstance(g, FloatLieAlgebra):
        return nijenhuis_float(g, np.asarray(J, dtype=float), sign=sign, check=check)
    Js = as_scalar_matrix(J)
    n = g.dim
    if len(Js) != n:
        raise DimensionMismatch(f"J is {len(Js)}x{len(Js)} but the algebra has dimension {n}")
    if check:
        rep = check_acs(Js)
        if not rep:
            raise NotAlmostComplex("J^2 != -I", rep.defects)
    cols = [[Js[r][i] for r in range(n)] for i in range(n)]
    basis = [g.basis(i) for i in range(n)]
    comps = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = g.bracket(basis[i], basis[j])
            a = exact.matvec(Js, g.bracket(cols[i], basis[j]), ZERO_SCALAR)
            b = exact.matvec(Js, g.bracket(basis[i], cols[j]), ZERO_SCALAR)
            c = g.bracket(cols[i], cols[j])
            comp = [w + x + y - z for w, x, y, z in zip(v, a, b, c)]
            if sign == -1:
                comp = [-x for x in comp]
            comps[(i + 1, j + 1)] = comp
    return NijenhuisTensor(n, comps)


def nijenhuis_float(g: FloatLieAlgebra, J: np.ndarray, sign: int = 1, check: bool = True,
                    tol: float = 1e-8) -> np.ndarray:
    """Tensor pipeline: N[i, j, :] = N(X_i, X_j) via einsum contractions."""
    n = g.dim
    if J.shape != (n, n):
        raise DimensionMismatch(f"J has shape {J.shape}, algebra has dimension {n}")
    if check:
        rep = check_acs(J, tol=tol)
        if not rep:
            raise NotAlmostComplex("J^2 != -I", rep.defects)
    C = g.c
    JC = np.einsum("ai,ajk->ijk", J, C)            # [J X_i, X_j]
    CJ = np.einsum("bj,ibk->ijk", J, C)            # [X_i, J X_j]
    JJC = np.einsum("ai,bj,abk->ijk", J, J, C)     # [J X_i, J X_j]
    N = C + np.einsum("mk,ijk->ijm", J, JC + CJ) - JJC
    return sign * N


def nijenhuis_pair(g, J, x, y, sign: int = 1):
    """N(x, y) straight from the defining formula, for arbitrary vectors."""
    if isinstance(g, FloatLieAlgebra):
        J = np.asarray(J, dtype=float)
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        b = g.bracket
        return sign * (b(x, y) + J @ b(J @ x, y) + J @ b(x, J @ y) - b(J @ x, J @ y))
    Js = as_scalar_matrix(J)
    Jx, Jy = exact.matvec(Js, x, ZERO_SCALAR), exact.matvec(Js, y, ZERO_SCALAR)
    b = g.bracket
    v = b(x, y)
    p = exact.matvec(Js, b(Jx, y), ZERO_SCALAR)
    q = exact.matvec(Js, b(x, Jy), ZERO_SCALAR)
    w = b(Jx, Jy)
    return [sign * (a + c + d - e) for a, c, d, e in zip(v, p, q, w)]


def is_integrable(g, J, tol: float = 1e-10) -> bool:
    N = nijenhuis(g, J)
    if isinstance(N, np.ndarray):
        return bool(np.abs(N).max(initial=0.0) <= tol)
    return N.is_zero()


def conjugate(J, V):
    """V^-1 J V. Exact for Scalar input (V may be a BasisChange), float otherwise."""
    if isinstance(V, BasisChange):
        return exact.matmul(exact.matmul(V.inverse, as_scalar_matrix(J), ZERO_SCALAR),
                            V.matrix, ZERO_SCALAR)
    if _is_float_matrix(J) or _is_float_matrix(V):
        Vf = np.asarray(V, dtype=float)
        return np.linalg.solve(Vf, np.asarray(J, dtype=float) @ Vf)
    return conjugate(J, BasisChange.of(V))


def standard_structure(n: int) -> list[list[Scalar]]:
    """Block-diagonal J_0 = [[0, -1], [1, 0]] repeated."""
    if n % 2:
        raise OddDimension(f"odd dimension {n}")
    J = [[ZERO_SCALAR] * n for _ in range(n)]
    for b in range(0, n, 2):
        J[b][b + 1] = -ONE_SCALAR
        J[b + 1][b] = ONE_SCALAR
    return J


# family catalog ---------------------------------------------------------------

@dataclass
class FamilyCatalogEntry:
    name: str
    title: str
    algebra: LieAlgebra
    J: list[list[Scalar]]
    reference: NijenhuisTensor
    decay_kind: str
    parameters: dict
    version: int

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def default_bindings(self) -> dict:
        """Numeric values for the non-time indeterminates used by numeric checks."""
        out: dict = {}
        if "k" in self.parameters:
            out[Indeterminate.K] = Fraction(self.parameters["k"])
        if "hasegawa_k" in self.parameters:
            lam = hasegawa_numeric(int(self.parameters["hasegawa_k"])).lambdas
            out[Indeterminate.L1] = float(lam[0])
            out[Indeterminate.L2] = float(lam[1])
        return out


def _family_json(name: str) -> dict:
    if name not in FAMILY_NAMES:
        raise UnknownName(f"unknown family {name!r}; expected one of {', '.join(FAMILY_NAMES)}")
    text = resources.files("nijlab.data.families").joinpath(f"{name}.json").read_text()
    return json.loads(text)


def reference_from_json(dim: int, components: Sequence[Mapping]) -> NijenhuisTensor:
    comps = {(i, j): [ZERO_SCALAR] * dim for i in range(1, dim + 1) for j in range(i + 1, dim + 1)}
    for entry in components:
        i, j = int(entry["i"]), int(entry["j"])
        if i >= j:
            raise ValueError(f"component entries must have i < j, got ({i}, {j})")
        for k, text in entry["coeffs"].items():
            comps[(i, j)][int(k) - 1] = parse_scalar(text)
    return NijenhuisTensor(dim, comps)


_FAMILY_CACHE: dict = {}


def catalog_family(name: str) -> FamilyCatalogEntry:
    if name not in _FAMILY_CACHE:
        data = _family_json(name)
        g = catalog_algebra(data["algebra"])
        J = [[parse_scalar(x) for x in row] for row in data["rows"]]
        _FAMILY_CACHE[name] = FamilyCatalogEntry(
            name=name, title=data["title"], algebra=g, J=J,
            reference=reference_from_json(data["dim"], data["components"]),
            decay_kind=data["decay_kind"], parameters=dict(data.get("parameters", {})),
            version=int(data["version"]))
    return _FAMILY_CACHE[name]


def family_raw_texts(name: str) -> list[str]:
    """Every scalar text in the shipped data file of a family."""
    data = _family_json(name)
    out = [x for row in data["rows"] for x in row]
    for entry in data["components"]:
        out.extend(entry["coeffs"].values())
    return out


_NIJ_CACHE: dict = {}


def family_nijenhuis(name: str) -> NijenhuisTensor:
    """Exact Nijenhuis tensor of the family's J_t, recomputed from the definition."""
    if name not in _NIJ_CACHE:
        fam = catalog_family(name)
        _NIJ_CACHE[name] = nijenhuis(fam.algebra, fam.J)
    return _NIJ_CACHE[name]


def hasegawa_original_structure(t: float, k: int = 6) -> tuple[FloatLieAlgebra, np.ndarray, np.ndarray]:
    """J_t = V K_t V^-1 on the original E-basis algebra, at numeric t.

    Returns (algebra in the E basis, J_t, K_t), where the diagonal-basis bracket
    is {x, y} = V^-1 [V x, V y].
    """
    data = hasegawa_numeric(k)
    fam = catalog_family("hasegawa")
    b = {Indeterminate.T: Fraction(t), Indeterminate.L1: Fraction(float(data.lambdas[0])),
         Indeterminate.L2: Fraction(float(data.lambdas[1]))}
    K = np.array([[float(x.evaluate(b)) if x.num else 0.0 for x in row] for row in fam.J])
    V = data.V
    return data.algebra, V @ K @ np.linalg.inv(V), K


# verification -----------------------------------------------------------------

@dataclass
class ComponentCheck:
    i: int
    j: int
    k: int
    computed: Scalar
    reference: Scalar
    match: bool
    match_negated: bool
    order: tuple | None  # None when the computed component is identically zero

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "k": self.k, "computed": str(self.computed),
                "reference": str(self.reference), "match": self.match,
                "match_negated": self.match_negated,
                "order": list(self.order) if self.order else None}


@dataclass
class FamilyReport:
    name: str
    mode: str
    acs: ACSReport
    components: list[ComponentCheck]
    numeric: list[dict] = field(default_factory=list)

    @property
    def mismatches(self) -> list[ComponentCheck]:
        return [c for c in self.components if not c.match]

    @property
    def mismatches_negated(self) -> list[ComponentCheck]:
        return [c for c in self.components if not c.match_negated]

    @property
    def convention(self) -> str | None:
        """'as_defined' if the reference matches N as defined here, 'negated' if
        it matches -N throughout, None if neither holds for every component."""
        if not self.mismatches:
            return "as_defined"
        if not self.mismatches_negated:
            return "negated"
        return None

    @property
    def decay_ok(self) -> bool:
        return all(c.order is None or c.order < (0, 0) for c in self.components)

    @property
    def nonzero_pairs(self) -> list[tuple[int, int]]:
        return sorted({(c.i, c.j) for c in self.components if c.order is not None})

    @property
    def numeric_ok(self) -> bool:
        return all(r["ok"] for r in self.numeric)

    def formula_ok(self, allow_convention_flip: bool = True) -> bool:
        if allow_convention_flip:
            return self.convention is not None
        return self.convention == "as_defined"

    def to_json(self) -> dict:
        return {
            "family": self.name, "mode": self.mode, "acs_ok": self.acs.ok,
            "acs_defects": [[i, j, str(d)] for i, j, d in self.acs.defects],
            "convention": self.convention, "decay_ok": self.decay_ok,
            "nonzero_pairs": [list(p) for p in self.nonzero_pairs],
            "mismatches": [c.to_json() for c in self.mismatches],
            "mismatches_negated": [c.to_json() for c in self.mismatches_negated],
            "numeric": self.numeric,
        }


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= max(REL_TOL * max(abs(a), abs(b)), ABS_FLOOR)


def verify_family(name: str, mode: str = "symbolic", t_values: Sequence[float] = (),
                  bindings: Mapping | None = None) -> FamilyReport:
    """Recompute N(J_t) and compare it with the shipped reference formulas.

    Mismatches are data in the report, never exceptions.
    """
    fam = catalog_family(name)
    acs = check_acs(fam.J)
    N = family_nijenhuis(name)
    checks = []
    for (i, j, k), x in N.items():
        ref = fam.reference(i, j)[k - 1]
        match = (x - ref).is_zero()
        match_neg = (x + ref).is_zero()
        order = None if x.is_zero() else x.asymptotic_order()
        checks.append(ComponentCheck(i, j, k, x, ref, match, match_neg, order))
    report = FamilyReport(name, mode, acs, checks)
    if mode == "numeric":
        params = fam.default_bindings()
        params.update(bindings or {})
        for t in t_values:
            b = dict(params)
            b[Indeterminate.T] = Fraction(t) if isinstance(t, float) else t
            worst = 0.0
            worst_neg = 0.0
            largest = 0.0
            for c in checks:
                a = float(c.computed.evaluate(b)) if c.computed.num else 0.0
                r = float(c.reference.evaluate(b)) if c.reference.num else 0.0
                largest = max(largest, abs(a))
                scale = max(abs(a), abs(r), ABS_FLOOR / REL_TOL)
                worst = max(worst, abs(a - r) / scale)
                worst_neg = max(worst_neg, abs(a + r) / scale)
            ok_lit = worst <= REL_TOL
            ok_neg = worst_neg <= REL_TOL
            report.numeric.append({"t": float(t), "max_component": largest,
                                   "max_rel_error": worst, "max_rel_error_negated": worst_neg,
                                   "ok": ok_lit or (ok_neg and report.convention == "negated")})
    return report
