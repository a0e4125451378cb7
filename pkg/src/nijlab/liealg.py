"""Lie algebras given by structure constants c^k_ij, with [X_i, X_j] = sum_k c^k_ij X_k.

Two parallel types exist. ``LieAlgebra`` holds exact Scalars. ``FloatLieAlgebra``
holds a float array and is used when the constants are transcendental (the
logarithm of an integer matrix). The two never mix inside one algebra.
Public indices in constructors and files are 1-based, matching the X_1..X_n
labels; internal storage is 0-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from . import exact
from .errors import (
    DimensionMismatch,
    EigenvalueConstraintViolated,
    NijlabError,
    SingularMatrix,
    UnknownName,
)
from .scalar import ONE_SCALAR, ZERO_SCALAR, Scalar, parse_scalar

FLOAT_JACOBI_TOL = 1e-10

ALGEBRA_NAMES = ("filiform4", "filiform6", "fg_solv", "hasegawa_symbolic", "hasegawa_numeric")


@dataclass(frozen=True)
class JacobiViolation:
    i: int
    j: int
    k: int
    defect: list

    def __str__(self) -> str:
        return f"Jacobi fails on (X{self.i}, X{self.j}, X{self.k}): defect {[str(x) for x in self.defect]}"


class LieAlgebra:
    """Exact Lie algebra; ``c[i][j][k]`` is the X_{k+1} coefficient of [X_{i+1}, X_{j+1}]."""

    def __init__(self, c: Sequence, labels: Sequence[str] | None = None,
                 check: bool = True, name: str = "") -> None:
        n = len(c)
        self.dim = n
        self.c = [[[Scalar.of(c[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
        self.labels = list(labels) if labels else [f"X{i + 1}" for i in range(n)]
        self.name = name
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if not (self.c[i][j][k] + self.c[j][i][k]).is_zero():
                        raise ValueError(f"structure constants are not antisymmetric at ({i + 1},{j + 1},{k + 1})")
        self.checked = False
        if check:
            bad = self.jacobi_check()
            if bad:
                raise NijlabError(f"not a Lie algebra: {bad[0]}")
            self.checked = True

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]],
                      **kwargs) -> LieAlgebra:
        """Build from the nonzero brackets {(i, j): {k: coeff}} with 1-based i < j."""
        c = [[[ZERO_SCALAR] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), coeffs in brackets.items():
            if not (1 <= i <= dim and 1 <= j <= dim) or i == j:
                raise DimensionMismatch(f"bad bracket index pair ({i}, {j})")
            for k, v in coeffs.items():
                v = parse_scalar(v) if isinstance(v, str) else Scalar.of(v)
                c[i - 1][j - 1][k - 1] = c[i - 1][j - 1][k - 1] + v
                c[j - 1][i - 1][k - 1] = c[j - 1][i - 1][k - 1] - v
        return cls(c, **kwargs)

    # brackets -------------------------------------------------------------
    def basis(self, i: int) -> list[Scalar]:
        """The basis vector X_{i+1} (0-based index)."""
        return [ONE_SCALAR if k == i else ZERO_SCALAR for k in range(self.dim)]

    def bracket(self, x: Sequence, y: Sequence) -> list[Scalar]:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise DimensionMismatch(f"vectors of length {len(x)}, {len(y)} in a {n}-dimensional algebra")
        out = [ZERO_SCALAR] * n
        xs = [(i, Scalar.of(a)) for i, a in enumerate(x)]
        xs = [(i, a) for i, a in xs if not a.is_zero()]
        ys = [(j, Scalar.of(b)) for j, b in enumerate(y)]
        ys = [(j, b) for j, b in ys if not b.is_zero()]
        for i, a in xs:
            for j, b in ys:
                row = self.c[i][j]
                coeff = None
                for k in range(n):
                    if row[k].num:
                        if coeff is None:
                            coeff = a * b
                        out[k] = out[k] + coeff * row[k]
        return out

    def jacobi_check(self) -> list[JacobiViolation]:
        n = self.dim
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    xi, xj, xk = self.basis(i), self.basis(j), self.basis(k)
                    terms = (self.bracket(self.bracket(xi, xj), xk),
                             self.bracket(self.bracket(xj, xk), xi),
                             self.bracket(self.bracket(xk, xi), xj))
                    defect = [a + b + c for a, b, c in zip(*terms)]
                    if any(not d.is_zero() for d in defect):
                        out.append(JacobiViolation(i + 1, j + 1, k + 1, defect))
        return out

    def is_abelian(self) -> bool:
        return all(x.is_zero() for plane in self.c for row in plane for x in row)

    # transformations ------------------------------------------------------
    def change_basis(self, V: BasisChange | Sequence) -> LieAlgebra:
        """Algebra with bracket {x, y} = V^-1 [V x, V y]."""
        V = V if isinstance(V, BasisChange) else BasisChange.of(V)
        n = self.dim
        if len(V.matrix) != n:
            raise DimensionMismatch("basis change has the wrong size")
        cols = [[V.matrix[r][i] for r in range(n)] for i in range(n)]
        c = [[[ZERO_SCALAR] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                b = exact.matvec(V.inverse, self.bracket(cols[i], cols[j]), ZERO_SCALAR)
                c[i][j] = b
                c[j][i] = [-x for x in b]
        return LieAlgebra(c, labels=self.labels, name=self.name and f"{self.name}'")

    def variables(self) -> set:
        out = set()
        for plane in self.c:
            for row in plane:
                for x in row:
                    out |= x.variables()
        return out

    def specialize(self, bindings: Mapping) -> LieAlgebra:
        """Substitute exact values for indeterminates in the structure constants."""
        c = [[[x.substitute(bindings) for x in row] for row in plane] for plane in self.c]
        return LieAlgebra(c, labels=self.labels, name=self.name, check=False)

    def to_float(self, bindings: Mapping | None = None) -> FloatLieAlgebra:
        b = dict(bindings or {})
        n = self.dim
        arr = np.zeros((n, n, n))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    x = self.c[i][j][k]
                    if x.num:
                        arr[i, j, k] = float(x.evaluate(b))
        return FloatLieAlgebra(arr, labels=self.labels, name=self.name)

    # serialization --------------------------------------------------------
    def to_json(self) -> dict:
        brackets = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                coeffs = {str(k + 1): str(x) for k, x in enumerate(self.c[i][j]) if x.num}
                if coeffs:
                    brackets.append({"i": i + 1, "j": j + 1, "coeffs": coeffs})
        return {"dim": n, "brackets": brackets}

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, name={self.name!r})"


class FloatLieAlgebra:
    """Float-coefficient algebra; ``c[i, j, k]`` as in LieAlgebra."""

    def __init__(self, c, labels: Sequence[str] | None = None, name: str = "",
                 tol: float = FLOAT_JACOBI_TOL) -> None:
        c = np.asarray(c, dtype=float)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise DimensionMismatch(f"structure constant array has shape {c.shape}")
        if np.abs(c + c.transpose(1, 0, 2)).max(initial=0.0) > tol:
            raise ValueError("structure constants are not antisymmetric")
        self.c = c
        self.dim = c.shape[0]
        self.labels = list(labels) if labels else [f"X{i + 1}" for i in range(self.dim)]
        self.name = name
        self.tol = tol

    def bracket(self, x, y) -> np.ndarray:
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise DimensionMismatch("vector length does not match algebra dimension")
        return np.einsum("i,j,ijk->k", x, y, self.c)

    def jacobi_check(self, tol: float | None = None) -> list[JacobiViolation]:
        tol = self.tol if tol is None else tol
        n = self.dim
        eye = np.eye(n)
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    b = self.bracket
                    d = (b(b(eye[i], eye[j]), eye[k]) + b(b(eye[j], eye[k]), eye[i])
                         + b(b(eye[k], eye[i]), eye[j]))
                    if np.abs(d).max() > tol:
                        out.append(JacobiViolation(i + 1, j + 1, k + 1, list(d)))
        return out

    def jacobi_defect(self) -> float:
        n = self.dim
        # J[i,j,k,m] = sum_a c[i,j,a] c[a,k,m] + cyclic
        t = np.einsum("ija,akm->ijkm", self.c, self.c)
        d = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
        return float(np.abs(d).max()) if n else 0.0

    def change_basis(self, V) -> FloatLieAlgebra:
        V = np.asarray(V, dtype=float)
        if V.shape != (self.dim, self.dim):
            raise DimensionMismatch("basis change has the wrong size")
        if np.linalg.cond(V) > 1e14:
            raise SingularMatrix("basis change is numerically singular")
        Vinv = np.linalg.inv(V)
        c = np.einsum("ai,bj,abm,km->ijk", V, V, self.c, Vinv)
        return FloatLieAlgebra(c, labels=self.labels, name=self.name)

    def to_float(self, bindings=None) -> FloatLieAlgebra:
        return self

    def variables(self) -> set:
        return set()

    def to_json(self) -> dict:
        brackets = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                coeffs = {str(k + 1): repr(float(self.c[i, j, k])) for k in range(n) if self.c[i, j, k] != 0}
                if coeffs:
                    brackets.append({"i": i + 1, "j": j + 1, "coeffs": coeffs})
        return {"dim": n, "brackets": brackets, "numeric": True}

    def __repr__(self) -> str:
        return f"FloatLieAlgebra(dim={self.dim}, name={self.name!r})"


@dataclass
class BasisChange:
    """Invertible exact matrix with its exact inverse."""

    matrix: list
    inverse: list = field(repr=False)

    @classmethod
    def of(cls, matrix: Sequence[Sequence]) -> BasisChange:
        m = [[Scalar.of(x) for x in row] for row in matrix]
        return cls(m, exact.inverse(m, ZERO_SCALAR, ONE_SCALAR))

    def inverted(self) -> BasisChange:
        return BasisChange(self.inverse, self.matrix)


# constructors ---------------------------------------------------------------

def abelian(n: int) -> LieAlgebra:
    return LieAlgebra.from_brackets(n, {}, name=f"abelian{n}")


def filiform(n: int) -> LieAlgebra:
    """[X_1, X_i] = X_{i+1} for i = 2..n-1."""
    return LieAlgebra.from_brackets(n, {(1, i): {i + 1: 1} for i in range(2, n)},
                                    name=f"filiform{n}")


def solvable_from_derivation(L) -> LieAlgebra | FloatLieAlgebra:
    """4-dimensional algebra with [E_1, E_i] = L E_i on span(E_2, E_3, E_4)."""
    labels = ["E1", "E2", "E3", "E4"]
    if isinstance(L, np.ndarray) or any(isinstance(x, float) for row in L for x in row):
        L = np.asarray(L, dtype=float)
        if L.shape != (3, 3):
            raise DimensionMismatch("derivation must be 3x3")
        c = np.zeros((4, 4, 4))
        c[0, 1:, 1:] = L.T
        c[1:, 0, 1:] = -L.T
        return FloatLieAlgebra(c, labels=labels, name="solvable")
    if len(L) != 3 or any(len(row) != 3 for row in L):
        raise DimensionMismatch("derivation must be 3x3")
    brackets = {}
    for i in range(3):
        coeffs = {m + 2: L[m][i] for m in range(3)}
        brackets[(1, i + 2)] = coeffs
    return LieAlgebra.from_brackets(4, brackets, labels=labels, name="solvable")


def matrix_log3(A) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Real logarithm of a 3x3 matrix with three distinct positive eigenvalues.

    Returns (L, lambdas, V): A = V diag(exp(lambdas)) V^-1, L = V diag(lambdas) V^-1,
    eigenvalues in decreasing order, eigenvector columns of unit length.
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (3, 3):
        raise DimensionMismatch("matrix_log3 needs a 3x3 matrix")
    w, V = np.linalg.eig(A)
    scale = max(1.0, float(np.abs(w).max()))
    if np.abs(w.imag).max() > 1e-12 * scale:
        raise EigenvalueConstraintViolated(f"complex eigenvalues {w}")
    w, V = w.real, V.real
    order = np.argsort(-w)
    w, V = w[order], V[:, order]
    if (w <= 0).any():
        raise EigenvalueConstraintViolated(f"non-positive eigenvalue in {w}")
    gaps = np.abs(np.diff(w))
    if gaps.min() <= 1e-9 * scale:
        raise EigenvalueConstraintViolated(f"repeated eigenvalue in {w}")
    if np.linalg.cond(V) > 1e10:
        raise EigenvalueConstraintViolated("eigenvector matrix is ill-conditioned")
    Vinv = np.linalg.inv(V)
    err = np.abs(V @ np.diag(w) @ Vinv - A).max()
    if err > 1e-10 * scale:
        raise EigenvalueConstraintViolated(f"eigendecomposition reconstruction error {err:.2e}")
    lam = np.log(w)
    L = V @ np.diag(lam) @ Vinv
    return L, lam, V


def hasegawa_matrix(k: int) -> np.ndarray:
    return np.array([[0, 0, 1], [1, 0, -k], [0, 1, 8]], dtype=float)


@dataclass
class HasegawaData:
    """Numeric Hasegawa algebra for one lattice matrix A and its diagonalization."""

    k: int
    A: np.ndarray
    L: np.ndarray
    lambdas: np.ndarray
    V3: np.ndarray
    algebra: FloatLieAlgebra

    @property
    def V(self) -> np.ndarray:
        """4x4 transport diag(1, V3) taking the diagonal basis to E_1..E_4."""
        out = np.eye(4)
        out[1:, 1:] = self.V3
        return out


def hasegawa_numeric(k: int = 6) -> HasegawaData:
    if not 6 <= k <= 15:
        raise EigenvalueConstraintViolated(f"k must satisfy 6 <= k <= 15, got {k}")
    A = hasegawa_matrix(k)
    L, lam, V3 = matrix_log3(A)
    g = solvable_from_derivation(L)
    g.name = f"hasegawa_numeric(k={k})"
    return HasegawaData(k, A, L, lam, V3, g)


def catalog_algebra(name: str, k: int | None = None) -> LieAlgebra | FloatLieAlgebra:
    """Catalog algebras: filiform4, filiform6, fg_solv (symbolic k),
    hasegawa_symbolic (diagonal basis, symbolic l1, l2), hasegawa_numeric(k)."""
    if name == "filiform4":
        return filiform(4)
    if name == "filiform6":
        return filiform(6)
    if name == "fg_solv":
        return LieAlgebra.from_brackets(4, {(1, 3): {1: "-k"}, (2, 3): {2: "k"}}, name="fg_solv")
    if name in ("hasegawa_symbolic", "hasegawa"):
        return LieAlgebra.from_brackets(
            4, {(1, 2): {2: "l1"}, (1, 3): {3: "l2"}, (1, 4): {4: "-l1-l2"}},
            name="hasegawa_symbolic")
    if name == "hasegawa_numeric":
        return hasegawa_numeric(6 if k is None else k).algebra
    raise UnknownName(f"unknown algebra {name!r}; expected one of {', '.join(ALGEBRA_NAMES)}")


# files ----------------------------------------------------------------------

def algebra_from_json(data: Mapping) -> LieAlgebra | FloatLieAlgebra:
    n = int(data["dim"])
    if data.get("numeric"):
        c = np.zeros((n, n, n))
        for entry in data.get("brackets", []):
            i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
            for k, v in entry["coeffs"].items():
                c[i, j, int(k) - 1] += float(v)
                c[j, i, int(k) - 1] -= float(v)
        return FloatLieAlgebra(c)
    brackets: dict = {}
    for entry in data.get("brackets", []):
        i, j = int(entry["i"]), int(entry["j"])
        if i >= j:
            raise ValueError(f"bracket entries must have i < j, got ({i}, {j})")
        brackets[(i, j)] = {int(k): parse_scalar(v) for k, v in entry["coeffs"].items()}
    return LieAlgebra.from_brackets(n, brackets, check=False)


def load_algebra(path: str | Path) -> LieAlgebra | FloatLieAlgebra:
    with open(path) as fh:
        return algebra_from_json(json.load(fh))


def dump_algebra(g: LieAlgebra | FloatLieAlgebra, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(g.to_json(), fh, indent=2)
