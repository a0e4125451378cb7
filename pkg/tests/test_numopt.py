from __future__ import annotations

import math

import numpy as np
import pytest

from nijlab.acstruct import catalog_family, standard_structure
from nijlab.errors import NotAlmostComplex, RetractionFailure, UnboundIndeterminate
from nijlab.liealg import abelian, catalog_algebra
from nijlab.numopt import (
    NormConfig,
    descend,
    family_norm,
    fit_rate,
    gradient_check,
    nijenhuis_norm,
    objective,
    project_to_acs,
    random_structure,
    sweep,
    tangent_projector,
)

J0 = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=float)


def test_norm_config_validation():
    with pytest.raises(ValueError):
        NormConfig("operator_sampled", sample_count=10)
    with pytest.raises(ValueError):
        NormConfig("spectral")


def test_abelian_norm_is_zero():
    J = random_structure(4, np.random.default_rng(0))
    assert nijenhuis_norm(abelian(4), J) == 0.0


def test_family_norm_matches_component_formulas():
    t = math.asinh(1.0)
    r2 = math.sqrt(2)
    # the six filiform4 components at sinh t = 1
    comps = [4 + 4 * r2, 24 + 16 * r2, -4 - 4 * r2, 8 + 4 * r2, -4 - 4 * r2, -8 - 4 * r2]
    expected = math.sqrt(sum(c * c for c in comps))
    assert math.isclose(family_norm("filiform4", t), expected, rel_tol=1e-9)
    g = catalog_algebra("filiform4").to_float()
    J = np.array([[float(x.evaluate({"t": t})) if x.num else 0.0 for x in row]
                  for row in catalog_family("filiform4").J])
    assert math.isclose(nijenhuis_norm(g, J), expected, rel_tol=1e-9)


def test_operator_norm_below_frobenius():
    g = catalog_algebra("filiform6").to_float()
    op = NormConfig("operator_sampled", sample_count=200, seed=5)
    for seed in range(100):
        J = random_structure(6, np.random.default_rng(seed))
        assert nijenhuis_norm(g, J, op) <= nijenhuis_norm(g, J) * (1 + 1e-12)


def test_norm_errors():
    with pytest.raises(UnboundIndeterminate):
        nijenhuis_norm(catalog_algebra("fg_solv"), J0)
    with pytest.raises(NotAlmostComplex):
        nijenhuis_norm(catalog_algebra("filiform4"), np.eye(4))


def test_sweeps():
    r6 = sweep("filiform6", 1e2, 1e4, 16)
    assert r6.model == "power" and abs(r6.rate + 1) <= 0.1 and r6.r_squared >= 0.999
    rf = sweep("fg_solv", 1e2, 1e4, 16)
    assert abs(rf.rate + 1) <= 0.1
    r4 = sweep("filiform4", 5, 20, 16)
    assert r4.model == "exponential" and abs(r4.rate + 1) <= 0.05
    assert all(a < b for a, b in zip(r4.t_grid, r4.t_grid[1:]))
    with pytest.raises(ValueError):
        sweep("filiform6", 1e2, 1e4, 4)


def test_fit_rate_exact_line():
    x = np.linspace(0, 1, 10)
    rate, intercept, r2 = fit_rate(x, 3 * x - 2)
    assert math.isclose(rate, 3) and math.isclose(intercept, -2) and math.isclose(r2, 1)


def test_project_to_acs_examples():
    assert np.array_equal(project_to_acs(J0), J0)
    assert np.allclose(project_to_acs(2 * J0), J0, atol=1e-12)
    rng = np.random.default_rng(2)
    A = J0 + 0.01 * rng.standard_normal((4, 4))
    J = project_to_acs(A)
    assert np.abs(J @ J + np.eye(4)).max() <= 1e-10
    assert np.abs(J - A).max() <= 0.1
    assert np.abs(project_to_acs(J) - J).max() <= 1e-10
    with pytest.raises(RetractionFailure):
        project_to_acs(np.eye(4))


def test_tangent_projector():
    J = random_structure(4, np.random.default_rng(4))
    Pm = tangent_projector(J)
    assert np.allclose(Pm @ Pm, Pm, atol=1e-10)
    assert np.allclose(Pm, Pm.T, atol=1e-10)
    T = (Pm @ np.random.default_rng(1).standard_normal(16)).reshape(4, 4)
    assert np.abs(T @ J + J @ T).max() <= 1e-9


def test_gradient_check():
    g = catalog_algebra("filiform4")
    rng = np.random.default_rng(7)
    J = project_to_acs(J0 + 0.1 * rng.standard_normal((4, 4)))
    assert gradient_check(g, J, directions=20, seed=1) <= 1e-5
    assert gradient_check(abelian(4), J, directions=20) == 0.0


def test_descent_abelian_stops_immediately():
    J = random_structure(4, np.random.default_rng(0))
    res = descend(abelian(4), J)
    assert res.final.iteration == 0 and res.final.objective == 0.0


def test_descent_monotone_and_valid():
    g = catalog_algebra("filiform4")
    res = descend(g, random_structure(4, np.random.default_rng(11)), max_iters=200)
    assert res.monotone
    for s in res.states:
        assert np.abs(s.J @ s.J + np.eye(4)).max() <= 1e-8
    assert res.final.objective < res.initial_objective


def test_descent_from_family_member():
    g = catalog_algebra("filiform4").to_float()
    t = 5.0
    J = np.array([[float(x.evaluate({"t": t})) if x.num else 0.0 for x in row]
                  for row in catalog_family("filiform4").J])
    f_family = objective(g.c, J)
    res = descend(g, J, max_iters=50)
    assert res.final.objective <= f_family * (1 + 1e-9)


def test_standard_structure_float_objective():
    g = catalog_algebra("filiform4").to_float()
    J = np.array([[float(x.evaluate({})) if x.num else 0.0 for x in row] for row in standard_structure(4)])
    assert objective(g.c, J) > 0
