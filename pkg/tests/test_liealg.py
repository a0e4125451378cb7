from __future__ import annotations

import json

import numpy as np
import pytest

from nijlab.errors import DimensionMismatch, EigenvalueConstraintViolated, SingularMatrix, UnknownName
from nijlab.liealg import (
    ALGEBRA_NAMES,
    FloatLieAlgebra,
    LieAlgebra,
    abelian,
    algebra_from_json,
    catalog_algebra,
    dump_algebra,
    filiform,
    hasegawa_matrix,
    hasegawa_numeric,
    load_algebra,
    matrix_log3,
    solvable_from_derivation,
)
from nijlab.scalar import ONE_SCALAR, ZERO_SCALAR, parse_scalar

P = parse_scalar


def vec(*xs):
    return [P(str(x)) for x in xs]


def test_filiform_brackets():
    g = filiform(4)
    assert g.bracket(g.basis(0), g.basis(1)) == g.basis(2)
    assert all(x.is_zero() for x in g.bracket(g.basis(1), g.basis(2)))
    x = vec(1, 2, 3, 4)
    assert all(c.is_zero() for c in g.bracket(x, x))
    with pytest.raises(DimensionMismatch):
        g.bracket(vec(1, 2), vec(1, 2))


def test_catalog_jacobi_exact():
    for name in ALGEBRA_NAMES:
        g = catalog_algebra(name)
        assert g.jacobi_check() == []
    assert hasegawa_numeric(6).algebra.jacobi_defect() <= 1e-10


def test_catalog_entries():
    g6 = catalog_algebra("filiform6")
    for i in range(1, 5):
        assert g6.bracket(g6.basis(0), g6.basis(i)) == g6.basis(i + 1)
    fg = catalog_algebra("fg_solv")
    assert fg.bracket(fg.basis(0), fg.basis(2)) == [-P("k"), ZERO_SCALAR, ZERO_SCALAR, ZERO_SCALAR]
    assert fg.bracket(fg.basis(1), fg.basis(2)) == [ZERO_SCALAR, P("k"), ZERO_SCALAR, ZERO_SCALAR]
    with pytest.raises(UnknownName):
        catalog_algebra("filiform5")


def test_tampered_algebra_fails_jacobi():
    # adding [X2, X3] = X4 to filiform4 keeps Jacobi (X4 is central)
    still_lie = LieAlgebra.from_brackets(4, {(1, 2): {3: 1}, (1, 3): {4: 1}, (2, 3): {4: 1}}, check=False)
    assert still_lie.jacobi_check() == []
    bad = LieAlgebra.from_brackets(4, {(1, 2): {3: 1}, (1, 3): {4: 1}, (2, 3): {2: 1}}, check=False)
    violations = bad.jacobi_check()
    assert [(v.i, v.j, v.k) for v in violations] == [(1, 2, 3)]
    assert violations[0].defect == vec(0, 0, -1, 0)


def test_change_basis_identity_and_scaling():
    g = filiform(4)
    I = [[ONE_SCALAR if i == j else ZERO_SCALAR for j in range(4)] for i in range(4)]
    assert g.change_basis(I).c == g.c
    two = [[P("2") if i == j else ZERO_SCALAR for j in range(4)] for i in range(4)]
    h = g.change_basis(two)
    # {x, y} = V^-1 [Vx, Vy] = 2 [x, y]
    for i in range(4):
        for j in range(4):
            assert h.bracket(h.basis(i), h.basis(j)) == [2 * x for x in g.bracket(g.basis(i), g.basis(j))]
    with pytest.raises(SingularMatrix):
        g.change_basis([[ZERO_SCALAR] * 4 for _ in range(4)])


def test_solvable_from_derivation():
    L = [["l1", "0", "0"], ["0", "l2", "0"], ["0", "0", "-l1-l2"]]
    g = solvable_from_derivation([[P(x) for x in row] for row in L])
    h = catalog_algebra("hasegawa_symbolic")
    assert all(a == b for pa, pb in zip(g.c, h.c) for ra, rb in zip(pa, pb) for a, b in zip(ra, rb))
    assert solvable_from_derivation([[P("0")] * 3 for _ in range(3)]).is_abelian()


def test_matrix_log3_hasegawa():
    L, lam, V = matrix_log3(hasegawa_matrix(6))
    assert lam[0] > lam[1] > lam[2]
    assert abs(lam.sum()) <= 1e-12
    g = solvable_from_derivation(L)
    ad = g.c[0, 1:, 1:].T
    assert abs(np.trace(ad)) <= 1e-12
    with pytest.raises(EigenvalueConstraintViolated):
        matrix_log3(np.eye(3))
    with pytest.raises(EigenvalueConstraintViolated):
        hasegawa_numeric(5)


def test_hasegawa_diagonalization():
    data = hasegawa_numeric(6)
    h = data.algebra.change_basis(data.V)
    expected = np.zeros((4, 4, 4))
    l1, l2 = data.lambdas[0], data.lambdas[1]
    for idx, val in ((1, l1), (2, l2), (3, -l1 - l2)):
        expected[0, idx, idx] = val
        expected[idx, 0, idx] = -val
    assert np.abs(h.c - expected).max() <= 1e-10


def test_json_round_trip(tmp_path):
    g = catalog_algebra("fg_solv")
    path = tmp_path / "g.json"
    dump_algebra(g, path)
    back = load_algebra(path)
    assert all(a == b for pa, pb in zip(g.c, back.c) for ra, rb in zip(pa, pb) for a, b in zip(ra, rb))
    f = hasegawa_numeric(6).algebra
    back = algebra_from_json(json.loads(json.dumps(f.to_json())))
    assert isinstance(back, FloatLieAlgebra)
    assert np.array_equal(back.c, f.c)


def test_abelian():
    g = abelian(4)
    assert g.is_abelian()
    assert g.jacobi_check() == []
