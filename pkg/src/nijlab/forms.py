"""Left-invariant exterior forms and the Chevalley-Eilenberg complex.

Forms are stored by strictly increasing 1-based multi-indices: the key
``(1, 4)`` means x1^x4, where x1..xn is the dual basis of X1..Xn. The
differential is fixed by dα(X, Y) = -α([X, Y]) in degree 1 and extends by the
usual alternating sum over bracket insertions.

Everything here is Lie algebra cohomology. Whether it agrees with the de Rham
cohomology of a compact quotient is a separate theorem about the quotient.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import exact
from .errors import (
    DimensionMismatch,
    NotAlmostComplex,
    SymbolicCoefficients,
    UnboundIndeterminate,
    WrongDegree,
)
from .liealg import FloatLieAlgebra, LieAlgebra
from .scalar import ONE_SCALAR, ZERO_SCALAR, Scalar, parse_scalar

FLOAT_RANK_TOL = 1e-9


def _zero(x) -> bool:
    if isinstance(x, (float, int, np.floating)):
        return x == 0
    return x.is_zero()


def _wedge_sign(a: Sequence[int], b: Sequence[int]) -> int:
    inversions = sum(1 for x in a for y in b if x > y)
    return -1 if inversions % 2 else 1


def _insert_sign(m: int, rest: Sequence[int]) -> tuple[int, tuple[int, ...]] | None:
    """alpha(X_m, X_rest...) = sign * alpha(sorted(m, rest)), or None if m repeats."""
    if m in rest:
        return None
    pos = sum(1 for r in rest if r < m)
    key = tuple(sorted((*rest, m)))
    return (-1 if pos % 2 else 1), key


# forms ------------------------------------------------------------------------

class ExteriorForm:
    """A p-form on an n-dimensional algebra with Scalar (or float) coefficients."""

    def __init__(self, dim: int, degree: int, coeffs: Mapping[tuple[int, ...], object] | None = None) -> None:
        if degree < 0:
            raise DimensionMismatch(f"negative degree {degree}")
        self.dim = dim
        self.degree = degree
        self.coeffs: dict[tuple[int, ...], object] = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(not 1 <= i <= dim for i in idx):
                raise DimensionMismatch(f"multi-index {idx} invalid for a {degree}-form in dimension {dim}")
            if len(set(idx)) < degree:
                continue
            sign = _permutation_sign(idx)
            key = tuple(sorted(idx))
            c = _coerce(c)
            value = c if sign > 0 else -c
            if key in self.coeffs:
                value = self.coeffs[key] + value
            self.coeffs[key] = value
        self.coeffs = {k: v for k, v in self.coeffs.items() if not _zero(v)}

    @classmethod
    def basis(cls, dim: int, *idx: int) -> ExteriorForm:
        """x_{i1} ^ ... ^ x_{ip} (1-based)."""
        return cls(dim, len(idx), {tuple(idx): ONE_SCALAR})

    @classmethod
    def zero(cls, dim: int, degree: int) -> ExteriorForm:
        return cls(dim, degree)

    @property
    def is_numeric(self) -> bool:
        return any(isinstance(c, float) for c in self.coeffs.values())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, idx: tuple[int, ...]):
        return self.coeffs.get(tuple(idx), ZERO_SCALAR)

    def _check(self, other: ExteriorForm) -> None:
        if self.dim != other.dim or self.degree != other.degree:
            raise DimensionMismatch("forms of different dimension or degree")

    def __add__(self, other: ExteriorForm) -> ExteriorForm:
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return ExteriorForm(self.dim, self.degree, out)

    def __neg__(self) -> ExteriorForm:
        return ExteriorForm(self.dim, self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: ExteriorForm) -> ExteriorForm:
        return self + (-other)

    def __rmul__(self, c) -> ExteriorForm:
        c = _coerce(c)
        return ExteriorForm(self.dim, self.degree, {k: c * v for k, v in self.coeffs.items()})

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExteriorForm):
            return NotImplemented
        return self.dim == other.dim and self.degree == other.degree and (self - other).is_zero()

    __hash__ = None

    def wedge(self, other: ExteriorForm) -> ExteriorForm:
        if self.dim != other.dim:
            raise DimensionMismatch("wedge of forms on different dimensions")
        p = self.degree + other.degree
        if p > self.dim:
            return ExteriorForm(self.dim, p)
        out: dict = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                if set(a) & set(b):
                    continue
                key = tuple(sorted(a + b))
                v = x * y if _wedge_sign(a, b) > 0 else -(x * y)
                out[key] = out[key] + v if key in out else v
        return ExteriorForm(self.dim, p, out)

    __xor__ = wedge

    def matrix(self) -> list[list]:
        """Skew matrix W[i][j] = omega(X_i, X_j) of a 2-form (0-based)."""
        if self.degree != 2:
            raise WrongDegree(f"expected a 2-form, got degree {self.degree}")
        n = self.dim
        numeric = self.is_numeric
        zero = 0.0 if numeric else ZERO_SCALAR
        W = [[zero] * n for _ in range(n)]
        for (i, j), c in self.coeffs.items():
            W[i - 1][j - 1] = c
            W[j - 1][i - 1] = -c
        return W

    def vector(self, basis: Sequence[tuple[int, ...]]) -> list:
        zero = 0.0 if self.is_numeric else ZERO_SCALAR
        return [self.coeffs.get(idx, zero) for idx in basis]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for idx in sorted(self.coeffs):
            mono = "^".join(f"x{i}" for i in idx) or "1"
            c = self.coeffs[idx]
            text = repr(c) if isinstance(c, float) else str(c)
            if text == "1":
                parts.append(f"+ {mono}")
            elif text == "-1":
                parts.append(f"- {mono}")
            elif text.startswith("-") and "+" not in text[1:] and "-" not in text[1:]:
                parts.append(f"- {text[1:]}*{mono}")
            else:
                wrap = f"({text})" if any(ch in text[1:] for ch in "+-/") else text
                parts.append(f"+ {wrap}*{mono}")
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self) -> str:
        return f"ExteriorForm(dim={self.dim}, degree={self.degree}, {self})"

    def to_json(self) -> dict:
        terms = []
        for idx in sorted(self.coeffs):
            c = self.coeffs[idx]
            terms.append({"idx": list(idx), "coeff": repr(c) if isinstance(c, float) else str(c)})
        return {"dim": self.dim, "degree": self.degree, "terms": terms}


def _permutation_sign(idx: Sequence[int]) -> int:
    inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
    return -1 if inv % 2 else 1


def _coerce(c):
    if isinstance(c, (float, np.floating)):
        return float(c)
    if isinstance(c, str):
        return parse_scalar(c)
    return Scalar.of(c)


def form_from_json(data: Mapping, dim: int | None = None) -> ExteriorForm:
    p = int(data["degree"])
    terms = data.get("terms", [])
    if dim is None:
        dim = data.get("dim")
    if dim is None:
        dim = max((max(t["idx"]) for t in terms if t["idx"]), default=p)
    coeffs: dict = {}
    for t in terms:
        idx = tuple(int(i) for i in t["idx"])
        c = t["coeff"]
        value = float(c) if isinstance(c, float) else parse_scalar(str(c))
        coeffs[idx] = coeffs[idx] + value if idx in coeffs else value
    return ExteriorForm(int(dim), p, coeffs)


def load_form(path: str | Path, dim: int | None = None) -> ExteriorForm:
    with open(path) as fh:
        return form_from_json(json.load(fh), dim)


def dump_form(form: ExteriorForm, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(form.to_json(), fh, indent=2)


def dual(dim: int, i: int) -> ExteriorForm:
    """The 1-form x_i."""
    return ExteriorForm.basis(dim, i)


# the differential -------------------------------------------------------------

def _structure(g: LieAlgebra | FloatLieAlgebra):
    """Nonzero structure constants as {(a, b): [(m, c)]} with 1-based a < b."""
    n = g.dim
    out: dict = {}
    for a in range(n):
        for b in range(a + 1, n):
            if isinstance(g, FloatLieAlgebra):
                row = [(m + 1, float(g.c[a, b, m])) for m in range(n) if g.c[a, b, m] != 0]
            else:
                row = [(m + 1, g.c[a][b][m]) for m in range(n) if g.c[a][b][m].num]
            if row:
                out[(a + 1, b + 1)] = row
    return out


def ce_differential(g: LieAlgebra | FloatLieAlgebra, alpha: ExteriorForm) -> ExteriorForm:
    """d alpha on the basis (p+1)-tuples.

    (dα)(X_0..X_p) = sum_{a<b} (-1)^(a+b) α([X_a, X_b], X_0..^a..^b..X_p)
    """
    n, p = g.dim, alpha.degree
    if alpha.dim != n:
        raise DimensionMismatch(f"{alpha.dim}-dimensional form on a {n}-dimensional algebra")
    if p >= n:
        return ExteriorForm(n, p + 1)
    consts = _structure(g)
    out: dict = {}
    for idx in combinations(range(1, n + 1), p + 1):
        total = None
        for a in range(p + 1):
            for b in range(a + 1, p + 1):
                row = consts.get((idx[a], idx[b]))
                if not row:
                    continue
                rest = idx[:a] + idx[a + 1:b] + idx[b + 1:]
                sign = -1 if (a + b) % 2 else 1
                for m, c in row:
                    ins = _insert_sign(m, rest)
                    if ins is None or ins[1] not in alpha.coeffs:
                        continue
                    term = c * alpha.coeffs[ins[1]]
                    term = term if sign * ins[0] > 0 else -term
                    total = term if total is None else total + term
        if total is not None:
            out[idx] = total
    return ExteriorForm(n, p + 1, out)


@dataclass
class CochainComplex:
    """Matrices of d_p : Λ^p -> Λ^{p+1} in the basis of increasing multi-indices."""

    dim: int
    bases: list[list[tuple[int, ...]]]
    d: list[list[list]]  # d[p] has len(bases[p+1]) rows, len(bases[p]) columns
    numeric: bool

    def d_squared_defects(self, tol: float = 0.0) -> list[tuple[int, int, int]]:
        """(p, row, col) entries where d_{p+1} d_p is nonzero."""
        bad = []
        for p in range(self.dim - 1):
            A, B = self.d[p + 1], self.d[p]
            if self.numeric:
                P = np.asarray(A, dtype=float) @ np.asarray(B, dtype=float)
                bad += [(p, int(r), int(c)) for r, c in zip(*np.nonzero(np.abs(P) > tol))]
                continue
            P = exact.matmul(A, B, ZERO_SCALAR) if A and B else []
            bad += [(p, r, c) for r, row in enumerate(P) for c, x in enumerate(row) if not x.is_zero()]
        return bad


def cochain_complex(g: LieAlgebra | FloatLieAlgebra) -> CochainComplex:
    n = g.dim
    numeric = isinstance(g, FloatLieAlgebra)
    bases = [list(combinations(range(1, n + 1), p)) for p in range(n + 1)]
    mats = []
    for p in range(n):
        rows = bases[p + 1]
        zero = 0.0 if numeric else ZERO_SCALAR
        cols = []
        for idx in bases[p]:
            beta = ExteriorForm(n, p, {idx: 1.0 if numeric else ONE_SCALAR})
            cols.append(ce_differential(g, beta).vector(rows) if not numeric
                        else [float(ce_differential(g, beta).coeffs.get(r, zero)) for r in rows])
        mats.append([[cols[c][r] for c in range(len(cols))] for r in range(len(rows))])
    return CochainComplex(n, bases, mats, numeric)


# cohomology -------------------------------------------------------------------

def _prepare(g: LieAlgebra | FloatLieAlgebra, bindings: Mapping | None) -> LieAlgebra | FloatLieAlgebra:
    if isinstance(g, FloatLieAlgebra):
        return g
    free = g.variables()
    if bindings:
        if any(isinstance(v, float) for v in bindings.values()):
            g = g.to_float(bindings)
            return g
        g = g.specialize(bindings)
        free = g.variables()
    if free:
        names = ", ".join(sorted(v.value for v in free))
        raise SymbolicCoefficients(
            f"structure constants depend on {names}; bind them (for example --at k=1)")
    return g


def _exact_rank(M: list[list]) -> int:
    if not M or not M[0]:
        return 0
    return exact.rank(M, ZERO_SCALAR)


def _float_rank(M: list[list], tol: float) -> int:
    if not M or not M[0]:
        return 0
    s = np.linalg.svd(np.asarray(M, dtype=float), compute_uv=False)
    if not s.size:
        return 0
    return int((s > tol * max(1.0, s[0])).sum())


def betti_numbers(g: LieAlgebra | FloatLieAlgebra, bindings: Mapping | None = None,
                  tol: float = FLOAT_RANK_TOL) -> list[int]:
    """b_0..b_n of the Chevalley-Eilenberg complex.

    Exact structure constants give exact ranks. Float constants (or float
    bindings) use singular values with relative cutoff ``tol``.
    """
    g = _prepare(g, bindings)
    cx = cochain_complex(g)
    n = g.dim
    rank = (lambda M: _float_rank(M, tol)) if cx.numeric else _exact_rank
    ranks = [rank(cx.d[p]) for p in range(n)] + [0]
    out = []
    for p in range(n + 1):
        kernel = len(cx.bases[p]) - ranks[p]
        image = ranks[p - 1] if p > 0 else 0
        out.append(kernel - image)
    return out


def cohomology_generators(g: LieAlgebra | FloatLieAlgebra, p: int, bindings: Mapping | None = None,
                          tol: float = FLOAT_RANK_TOL) -> list[ExteriorForm]:
    """Closed p-forms whose classes form a basis of H^p.

    Exact case: kernel vectors are reduced against the echelon form of the
    exact image, then put in reduced echelon form themselves, so output is
    deterministic and free of image pivot components.
    """
    g = _prepare(g, bindings)
    n = g.dim
    if not 0 <= p <= n:
        raise DimensionMismatch(f"degree {p} outside 0..{n}")
    cx = cochain_complex(g)
    basis = cx.bases[p]
    m = len(basis)
    if cx.numeric:
        return _float_generators(cx, p, tol)
    kernel = exact.nullspace(cx.d[p], m, ZERO_SCALAR, ONE_SCALAR) if p < n else \
        [[ONE_SCALAR if i == j else ZERO_SCALAR for i in range(m)] for j in range(m)]
    image: list[list] = []
    pivots: list[int] = []
    if p > 0:
        D = cx.d[p - 1]
        cols = [[D[r][c] for r in range(m)] for c in range(len(D[0]))]
        red, pivots = exact.rref(cols, ZERO_SCALAR, ONE_SCALAR) if cols else ([], [])
        image = red[:len(pivots)]
    reduced = []
    for v in kernel:
        v = list(v)
        for row, pc in zip(image, pivots):
            if not v[pc].is_zero():
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        reduced.append(v)
    if not reduced:
        return []
    red, piv = exact.rref(reduced, ZERO_SCALAR, ONE_SCALAR)
    return [ExteriorForm(n, p, {basis[i]: x for i, x in enumerate(red[r]) if not x.is_zero()})
            for r in range(len(piv))]


def _float_generators(cx: CochainComplex, p: int, tol: float) -> list[ExteriorForm]:
    n = cx.dim
    m = len(cx.bases[p])
    if p < n and cx.d[p]:
        _, s, vt = np.linalg.svd(np.asarray(cx.d[p], dtype=float))
        r = int((s > tol * max(1.0, s[0] if s.size else 0.0)).sum())
        K = vt[r:].T
    else:
        K = np.eye(m)
    if p > 0 and cx.d[p - 1] and cx.d[p - 1][0]:
        u, s, _ = np.linalg.svd(np.asarray(cx.d[p - 1], dtype=float))
        r = int((s > tol * max(1.0, s[0] if s.size else 0.0)).sum())
        B = u[:, :r]
        K = K - B @ (B.T @ K)
    if not K.size:
        return []
    u, s, _ = np.linalg.svd(K, full_matrices=False)
    r = int((s > tol * max(1.0, s[0] if s.size else 0.0)).sum())
    out = []
    for c in range(r):
        v = u[:, c]
        out.append(ExteriorForm(n, p, {cx.bases[p][i]: float(v[i]) for i in range(m)
                                       if abs(v[i]) > tol}))
    return out


# symplectic and almost Kahler -------------------------------------------------

@dataclass
class SymplecticReport:
    closed: bool
    nondegenerate: bool
    d_omega: ExteriorForm

    @property
    def ok(self) -> bool:
        return self.closed and self.nondegenerate


@dataclass
class AlmostKahlerReport:
    closed: bool
    nondegenerate: bool
    compatible: bool
    taming: bool
    incompatible_pairs: list = field(default_factory=list)  # (i, j, omega(JXi,JXj) - omega(Xi,Xj))
    taming_min: float = float("nan")
    taming_max: float = float("nan")

    @property
    def ok(self) -> bool:
        return self.closed and self.nondegenerate and self.compatible and self.taming

    def to_json(self) -> dict:
        return {"closed": self.closed, "nondegenerate": self.nondegenerate,
                "compatible": self.compatible, "taming": self.taming,
                "incompatible_pairs": [[i, j, str(d)] for i, j, d in self.incompatible_pairs],
                "taming_min": self.taming_min, "taming_max": self.taming_max}


def _nondegenerate(omega: ExteriorForm) -> bool:
    W = omega.matrix()
    n = omega.dim
    if n % 2:
        return False
    if omega.is_numeric:
        return _float_rank(W, FLOAT_RANK_TOL) == n
    if not omega.coeffs:
        return False
    return not exact.determinant(W, ZERO_SCALAR, ONE_SCALAR).is_zero()


def symplectic_check(g: LieAlgebra | FloatLieAlgebra, omega: ExteriorForm,
                     tol: float = 1e-10) -> SymplecticReport:
    if omega.degree != 2:
        raise WrongDegree(f"symplectic forms have degree 2, got {omega.degree}")
    d = ce_differential(g, omega)
    if isinstance(g, FloatLieAlgebra) or omega.is_numeric:
        closed = all(abs(float(c)) <= tol for c in d.coeffs.values())
    else:
        closed = d.is_zero()
    return SymplecticReport(closed, _nondegenerate(omega), d)


def _matrix(J) -> list[list]:
    if isinstance(J, np.ndarray):
        return [[float(x) for x in row] for row in J]
    return [[parse_scalar(x) if isinstance(x, str) else (x if isinstance(x, (Scalar, float)) else Scalar.of(x))
             for x in row] for row in J]


def _to_float_matrix(M: list[list], bindings: Mapping | None) -> np.ndarray:
    out = np.zeros((len(M), len(M[0]) if M else 0))
    for i, row in enumerate(M):
        for j, x in enumerate(row):
            if isinstance(x, float):
                out[i, j] = x
            elif x.num:
                if x.variables() and not bindings:
                    raise UnboundIndeterminate(
                        f"taming needs numeric values for {', '.join(sorted(v.value for v in x.variables()))}")
                out[i, j] = float(x.evaluate(bindings or {}))
    return out


def almost_kahler_check(g: LieAlgebra | FloatLieAlgebra, omega: ExteriorForm, J,
                        samples: int = 256, seed: int = 0, bindings: Mapping | None = None,
                        tol: float = 1e-10) -> AlmostKahlerReport:
    """Closed, nondegenerate, J-compatible and taming.

    Compatibility is exact for Scalar data. Taming samples omega(x, Jx) on
    seeded random nonzero x; ``bindings`` supply numeric values when J or
    omega carry indeterminates.
    """
    from .acstruct import check_acs

    Jm = _matrix(J)
    n = g.dim
    if len(Jm) != n or omega.dim != n:
        raise DimensionMismatch("J, omega and the algebra must share a dimension")
    acs = check_acs(Jm)
    if not acs:
        raise NotAlmostComplex("J^2 != -I", acs.defects)
    sym = symplectic_check(g, omega, tol)
    W = omega.matrix()
    numeric = omega.is_numeric or isinstance(Jm[0][0], float)
    bad = []
    if numeric:
        Wf = _to_float_matrix(W, bindings)
        Jf = _to_float_matrix(Jm, bindings)
        D = Jf.T @ Wf @ Jf - Wf
        bad = [(i + 1, j + 1, float(D[i, j])) for i in range(n) for j in range(i + 1, n)
               if abs(D[i, j]) > tol]
    else:
        JWJ = exact.matmul(exact.matmul([list(r) for r in zip(*Jm)], W, ZERO_SCALAR), Jm, ZERO_SCALAR)
        for i in range(n):
            for j in range(i + 1, n):
                diff = JWJ[i][j] - W[i][j]
                if not diff.is_zero():
                    bad.append((i + 1, j + 1, diff))
        Wf = _to_float_matrix(W, bindings)
        Jf = _to_float_matrix(Jm, bindings)
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, n))
    vals = np.einsum("si,ij,jk,sk->s", X, Wf, Jf, X)
    scale = max(1.0, float(np.abs(Wf).max(initial=0.0) * np.abs(Jf).max(initial=0.0)))
    taming = bool(vals.min() > tol * scale) if samples else False
    return AlmostKahlerReport(sym.closed, sym.nondegenerate, not bad, taming, bad,
                              float(vals.min()) if samples else float("nan"),
                              float(vals.max()) if samples else float("nan"))


def induced_two_form(J, count: int | None = None, sign: int = 1) -> ExteriorForm:
    """sign * sum_{i<=count} x_i ^ (x_i o J).

    (x_i o J)(X_j) = x_i(J X_j) = J[i][j]. With sign +1,
    omega(x, y) = sum_i x_i(x) x_i(Jy) - x_i(y) x_i(Jx).
    """
    Jm = _matrix(J)
    n = len(Jm)
    count = n // 2 if count is None else count
    if not 0 < count <= n:
        raise DimensionMismatch(f"count {count} outside 1..{n}")
    out = ExteriorForm(n, 2)
    for i in range(count):
        xi = ExteriorForm(n, 1, {(i + 1,): 1.0 if isinstance(Jm[0][0], float) else ONE_SCALAR})
        xiJ = ExteriorForm(n, 1, {(j + 1,): Jm[i][j] for j in range(n)})
        out = out + xi.wedge(xiJ)
    return out if sign > 0 else -out


@dataclass
class InducedFormResult:
    sign: int | None  # the sign that validated, None if neither did
    omega: ExteriorForm | None
    reports: dict  # sign -> AlmostKahlerReport


def induced_almost_kahler(g: LieAlgebra | FloatLieAlgebra, J, count: int | None = None,
                          **kwargs) -> InducedFormResult:
    """Try both sign conventions for the induced 2-form; report which validates."""
    reports = {}
    chosen = None
    for sign in (1, -1):
        omega = induced_two_form(J, count, sign)
        rep = almost_kahler_check(g, omega, J, **kwargs)
        reports[sign] = rep
        if rep.ok and chosen is None:
            chosen = (sign, omega)
    if chosen is None:
        return InducedFormResult(None, None, reports)
    return InducedFormResult(chosen[0], chosen[1], reports)


def structure_from_images(n: int, images: Mapping[int, Mapping[int, object]]) -> list[list[Scalar]]:
    """J from prescribed images J X_i = sum_k a_k X_k on half the basis.

    The remaining images follow from J^2 = -I: if J X_i = Y then J Y = -X_i.
    Only images that are signed basis vectors can be completed this way.
    """
    J = [[ZERO_SCALAR] * n for _ in range(n)]
    for i, img in images.items():
        if len(img) != 1:
            raise ValueError("only signed basis images can be completed automatically")
        (k, a), = img.items()
        a = Scalar.of(Fraction(a) if isinstance(a, int) else a)
        J[k - 1][i - 1] = a
        J[i - 1][k - 1] = -a.inverse()
    return J


def wedge_power(omega: ExteriorForm, m: int) -> ExteriorForm:
    out = ExteriorForm(omega.dim, 0, {(): 1.0 if omega.is_numeric else ONE_SCALAR})
    for _ in range(m):
        out = out.wedge(omega)
    return out


def exact_forms(g: LieAlgebra | FloatLieAlgebra, p: int) -> Iterable[ExteriorForm]:
    """d of each basis (p-1)-form."""
    n = g.dim
    one = 1.0 if isinstance(g, FloatLieAlgebra) else ONE_SCALAR
    for idx in combinations(range(1, n + 1), p - 1):
        yield ce_differential(g, ExteriorForm(n, p - 1, {idx: one}))
