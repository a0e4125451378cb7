from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from nijlab.acstruct import standard_structure
from nijlab.errors import SymbolicCoefficients, WrongDegree
from nijlab.forms import (
    ExteriorForm,
    almost_kahler_check,
    betti_numbers,
    ce_differential,
    cochain_complex,
    cohomology_generators,
    dual,
    dump_form,
    induced_almost_kahler,
    induced_two_form,
    load_form,
    structure_from_images,
    symplectic_check,
    wedge_power,
)
from nijlab.liealg import ALGEBRA_NAMES, abelian, catalog_algebra
from nijlab.scalar import parse_scalar

P = parse_scalar


def x(n, *idx):
    return ExteriorForm.basis(n, *idx)


def test_wedge_signs():
    a = x(4, 1) ^ x(4, 2)
    assert a == x(4, 1, 2)
    assert (x(4, 2) ^ x(4, 1)) == -x(4, 1, 2)
    assert (x(4, 1) ^ x(4, 1)).is_zero()
    assert ExteriorForm(4, 2, {(3, 1): P("1")}) == -x(4, 1, 3)
    om = x(4, 1, 4) + x(4, 2, 3)
    assert wedge_power(om, 2) == 2 * x(4, 1, 2, 3, 4)


def test_differential_examples():
    f4 = catalog_algebra("filiform4")
    assert ce_differential(f4, dual(4, 3)) == -x(4, 1, 2)
    assert ce_differential(f4, dual(4, 4)) == -x(4, 1, 3)
    fg = catalog_algebra("fg_solv")
    assert ce_differential(fg, dual(4, 1)) == P("k") * x(4, 1, 3)
    for name in ("filiform4", "filiform6", "fg_solv", "hasegawa_symbolic"):
        g = catalog_algebra(name)
        for i in range(1, g.dim + 1):
            assert ce_differential(g, ce_differential(g, dual(g.dim, i))).is_zero()


def test_degree_one_rule():
    """(d alpha)(X, Y) = -alpha([X, Y]) on every basis pair."""
    g = catalog_algebra("fg_solv")
    for m in range(1, 5):
        d = ce_differential(g, dual(4, m))
        for i in range(4):
            for j in range(i + 1, 4):
                bracket = g.bracket(g.basis(i), g.basis(j))
                assert d[(i + 1, j + 1)] == -bracket[m - 1]


def test_d_squared_all_catalog():
    for name in ALGEBRA_NAMES:
        cx = cochain_complex(catalog_algebra(name))
        assert cx.d_squared_defects(tol=1e-10) == []


def test_betti_examples():
    assert betti_numbers(catalog_algebra("filiform4")) == [1, 2, 2, 2, 1]
    assert betti_numbers(abelian(4)) == [1, 4, 6, 4, 1]
    assert betti_numbers(catalog_algebra("fg_solv"), {"k": 1}) == [1, 2, 2, 2, 1]
    b6 = betti_numbers(catalog_algebra("filiform6"))
    assert b6[0] == b6[6] == 1
    assert all(b6[p] == b6[6 - p] for p in range(7))
    assert sum((-1) ** p * b for p, b in enumerate(b6)) == 0
    with pytest.raises(SymbolicCoefficients):
        betti_numbers(catalog_algebra("fg_solv"))


def test_hasegawa_first_betti_degenerates():
    h = catalog_algebra("hasegawa_symbolic")
    generic = betti_numbers(h, {"l1": Fraction(3, 10), "l2": Fraction(2, 5)})
    assert generic[1] == 1
    assert betti_numbers(h, {"l1": Fraction(1, 2), "l2": Fraction(1, 2)})[1] == 1
    assert betti_numbers(h, {"l1": 0, "l2": 1})[1] == 2
    assert betti_numbers(h, {"l1": 1, "l2": -1})[1] == 2
    assert betti_numbers(catalog_algebra("hasegawa_numeric")) == generic


def test_generators():
    f4 = catalog_algebra("filiform4")
    assert cohomology_generators(f4, 1) == [dual(4, 1), dual(4, 2)]
    assert cohomology_generators(f4, 2) == [x(4, 1, 4), x(4, 2, 3)]
    assert cohomology_generators(abelian(4), 4) == [x(4, 1, 2, 3, 4)]
    for name in ("filiform4", "filiform6"):
        g = catalog_algebra(name)
        b = betti_numbers(g)
        for p in range(g.dim + 1):
            gens = cohomology_generators(g, p)
            assert len(gens) == b[p]
            assert all(ce_differential(g, f).is_zero() for f in gens)
    num = cohomology_generators(catalog_algebra("hasegawa_numeric"), 1)
    assert len(num) == 1


def test_symplectic_examples():
    f4 = catalog_algebra("filiform4")
    rep = symplectic_check(f4, x(4, 1, 4) + x(4, 2, 3))
    assert rep.closed and rep.nondegenerate
    rep = symplectic_check(f4, x(4, 1, 2))
    assert rep.closed and not rep.nondegenerate
    rep = symplectic_check(f4, ExteriorForm(4, 2))
    assert rep.closed and not rep.nondegenerate
    with pytest.raises(WrongDegree):
        symplectic_check(f4, dual(4, 1))


def test_almost_kahler_six_dimensional():
    g = catalog_algebra("filiform6")
    J = structure_from_images(6, {1: {6: 1}, 2: {5: 1}, 3: {4: -1}})
    res = induced_almost_kahler(g, J)
    assert res.sign == -1
    assert res.omega == x(6, 1, 6) + x(6, 2, 5) - x(6, 3, 4)
    assert res.reports[-1].ok
    plus = res.reports[1]
    assert plus.closed and plus.nondegenerate and plus.compatible and not plus.taming
    assert induced_two_form(J) == -res.omega


def test_almost_kahler_incompatible_and_flat():
    f4 = catalog_algebra("filiform4")
    rep = almost_kahler_check(f4, x(4, 1, 4) + x(4, 2, 3), standard_structure(4))
    assert not rep.compatible
    assert [(i, j) for i, j, _ in rep.incompatible_pairs] == [(1, 4), (2, 3)]
    flat = almost_kahler_check(abelian(4), x(4, 1, 2) + x(4, 3, 4), standard_structure(4))
    assert flat.ok


def test_form_json_round_trip(tmp_path):
    om = P("r2") * x(6, 1, 6) + P("t/3") * x(6, 2, 5)
    path = tmp_path / "omega.json"
    dump_form(om, path)
    assert load_form(path) == om


def test_float_forms():
    g = catalog_algebra("hasegawa_numeric")
    alpha = ExteriorForm(4, 1, {(1,): 1.0})
    assert ce_differential(g, alpha).is_zero()
    d = ce_differential(g, ExteriorForm(4, 1, {(2,): 1.0}))
    assert np.isfinite([float(v) for v in d.coeffs.values()]).all()
