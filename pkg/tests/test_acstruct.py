from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from nijlab.acstruct import (
    FAMILY_NAMES,
    as_scalar_matrix,
    catalog_family,
    check_acs,
    conjugate,
    family_nijenhuis,
    family_raw_texts,
    hasegawa_original_structure,
    is_integrable,
    nijenhuis,
    nijenhuis_float,
    nijenhuis_pair,
    numeric_acs_defect,
    standard_structure,
    verify_family,
)
from nijlab.errors import DimensionMismatch, NotAlmostComplex, OddDimension, UnknownName
from nijlab.forms import structure_from_images
from nijlab.liealg import BasisChange, abelian, catalog_algebra, hasegawa_numeric
from nijlab.scalar import ZERO_SCALAR, Indeterminate, parse_scalar

P = parse_scalar


def test_check_acs_examples():
    assert check_acs(standard_structure(4))
    ident = as_scalar_matrix([["1", "0"], ["0", "1"]])
    rep = check_acs(ident)
    assert not rep
    assert [(i, j, str(d)) for i, j, d in rep.defects] == [(1, 1, "2"), (2, 2, "2")]
    assert check_acs(catalog_family("filiform4").J)
    with pytest.raises(OddDimension):
        check_acs(as_scalar_matrix([["0"] * 3] * 3))
    assert check_acs(np.array([[0.0, -1.0], [1.0, 0.0]]))


def test_nijenhuis_examples():
    N4 = family_nijenhuis("filiform4")
    assert N4(1, 3) == [ZERO_SCALAR, ZERO_SCALAR, P("(4+4*r2)/s"), ZERO_SCALAR]
    assert all(x.is_zero() for x in N4(3, 4))
    assert N4(3, 1) == [-x for x in N4(1, 3)]
    N6 = family_nijenhuis("filiform6")
    # the reference lists -(t^2+1)/t^6 X6, i.e. the opposite sign convention
    assert N6(2, 6)[5] == P("(t^2+1)/t^6")
    assert catalog_family("filiform6").reference(2, 6)[5] == P("-(t^2+1)/t^6")
    assert nijenhuis(abelian(4), catalog_family("filiform4").J).is_zero()


def test_sign_argument():
    g = catalog_algebra("filiform4")
    J = catalog_family("filiform4").J
    flipped = nijenhuis(g, J, sign=-1)
    assert all(a == -b for (_, a), (_, b) in zip(flipped.items(), nijenhuis(g, J).items()))


def test_nijenhuis_errors():
    g = catalog_algebra("filiform4")
    with pytest.raises(NotAlmostComplex) as exc:
        nijenhuis(g, as_scalar_matrix([["1" if i == j else "0" for j in range(4)] for i in range(4)]))
    assert exc.value.defects
    with pytest.raises(DimensionMismatch):
        nijenhuis(g, standard_structure(2))


def test_is_integrable():
    assert is_integrable(abelian(4), standard_structure(4))
    assert not is_integrable(catalog_algebra("filiform4"), catalog_family("filiform4").J)
    # fg_solv with J X1 = X2, J X3 = X4: not integrable for k != 0
    fg = catalog_algebra("fg_solv")
    J = structure_from_images(4, {1: {2: 1}, 3: {4: 1}})
    N = nijenhuis(fg, J)
    assert {key: str(x) for key, x in N.nonzero()} == {
        (1, 3, 1): "-2*k", (1, 4, 2): "2*k", (2, 3, 2): "2*k", (2, 4, 1): "2*k"}
    assert is_integrable(fg.specialize({"k": 0}), J)


def test_formula_oracle_exact():
    g = catalog_algebra("filiform6")
    J = catalog_family("filiform6").J
    N = family_nijenhuis("filiform6")
    x = [P(str(v)) for v in (1, -2, 0, 3, 1, 5)]
    y = [P(str(v)) for v in (0, 1, 1, -1, 2, 0)]
    direct = nijenhuis_pair(g, J, x, y)
    via_tensor = [ZERO_SCALAR] * 6
    for i in range(6):
        for j in range(6):
            if x[i].is_zero() or y[j].is_zero() or i == j:
                continue
            comp = N(i + 1, j + 1)
            via_tensor = [a + x[i] * y[j] * c for a, c in zip(via_tensor, comp)]
    assert all((a - b).is_zero() for a, b in zip(direct, via_tensor))


def test_conjugate():
    J = catalog_family("filiform4").J
    I = BasisChange.of([[1 if i == j else 0 for j in range(4)] for i in range(4)])
    assert conjugate(J, I) == J
    V = BasisChange.of([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 1, 1]])
    assert conjugate(conjugate(J, V), V.inverted()) == J
    Jf = np.array([[0.0, -1.0], [1.0, 0.0]])
    Vf = np.array([[2.0, 1.0], [0.0, 1.0]])
    back = conjugate(conjugate(Jf, Vf), np.linalg.inv(Vf))
    assert np.allclose(back, Jf)


def test_catalog_family_entries():
    f4 = catalog_family("filiform4")
    assert [str(x) for x in f4.J[0]] == ["1", "-2/s", "0", "0"]
    assert f4.J[1][0] == P("s")
    fg = catalog_family("fg_solv")
    assert fg.J[0][0] == P("-2/(k*t^2)")
    h = catalog_family("hasegawa")
    assert h.J[0][1] == P("1/t") and h.J[2][0] == P("t")
    with pytest.raises(UnknownName):
        catalog_family("filiform5")
    for name in FAMILY_NAMES:
        assert check_acs(catalog_family(name).J)


def test_verify_family_reports():
    r4 = verify_family("filiform4")
    assert r4.convention == "as_defined" and r4.decay_ok
    r6 = verify_family("filiform6")
    assert r6.convention == "negated" and r6.decay_ok
    assert r6.nonzero_pairs == [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6)]
    rh = verify_family("hasegawa")
    assert rh.convention == "negated"
    assert all(c.order is None or c.order[0] < 0 or c.order[1] <= -1 for c in rh.components)
    rf = verify_family("fg_solv")
    assert rf.convention is None and rf.decay_ok
    assert [(c.i, c.j, c.k) for c in rf.mismatches_negated] == [(2, 4, 2)]


def test_verify_family_numeric_decay():
    rep = verify_family("filiform4", "numeric", t_values=[5.0, 10.0])
    assert rep.numeric_ok
    m5, m10 = rep.numeric[0]["max_component"], rep.numeric[1]["max_component"]
    assert m5 / m10 >= math.exp(4) * 0.9


def test_numeric_acs_defect_precision():
    J = catalog_family("filiform6").J
    hi = numeric_acs_defect(J, {"t": 100.0}, dps=30)
    assert hi <= 1e-20
    lo = numeric_acs_defect(J, {"t": 2.0})
    assert lo <= 1e-10


def test_float_pipeline_matches_pair_formula():
    g = catalog_algebra("hasegawa_numeric")
    rng = np.random.default_rng(3)
    P_ = rng.standard_normal((4, 4))
    J = P_ @ np.array(standard_structure_float(4)) @ np.linalg.inv(P_)
    N = nijenhuis_float(g, J)
    for i in range(4):
        for j in range(4):
            e = np.eye(4)
            assert np.allclose(N[i, j], nijenhuis_pair(g, J, e[i], e[j]), atol=1e-9)


def standard_structure_float(n):
    return [[float(x.evaluate({})) if x.num else 0.0 for x in row] for row in standard_structure(n)]


def test_hasegawa_transport():
    """N of J = V K V^-1 on the E-basis algebra is V N(K) in the diagonal basis."""
    data = hasegawa_numeric(6)
    g_e, J, K = hasegawa_original_structure(7.0)
    V = data.V
    g_x = g_e.change_basis(V)
    N_e = nijenhuis_float(g_e, J)
    N_x = nijenhuis_float(g_x, K)
    for i in range(4):
        for j in range(4):
            lhs = nijenhuis_pair(g_e, J, V[:, i], V[:, j])
            assert np.allclose(lhs, V @ N_x[i, j], atol=1e-9)
    b = {Indeterminate.T: Fraction(7), Indeterminate.L1: float(data.lambdas[0]),
         Indeterminate.L2: float(data.lambdas[1])}
    exact = family_nijenhuis("hasegawa").evaluate(b)
    assert np.allclose(exact, N_x, atol=1e-8)
    assert np.abs(N_e).max() > 0


def test_raw_texts_nonempty():
    for name in FAMILY_NAMES:
        assert family_raw_texts(name)
