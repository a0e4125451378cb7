"""Numeric Nijenhuis norms, decay sweeps and descent on {J : J^2 = -I}.

The basis of the algebra is declared orthonormal, so the Frobenius norm of a
left-invariant tensor is computed straight from its components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .acstruct import FamilyCatalogEntry, catalog_family, family_nijenhuis
from .errors import NotAlmostComplex, PoleError, RetractionFailure, UnboundIndeterminate
from .liealg import FloatLieAlgebra, LieAlgebra
from .scalar import Indeterminate

ACS_TOL = 1e-8
RETRACTION_TOL = 1e-10
MIN_SWEEP_POINTS = 8


@dataclass
class NormConfig:
    kind: str = "frobenius"  # or "operator_sampled"
    sample_count: int = 256
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("frobenius", "operator_sampled"):
            raise ValueError(f"unknown norm kind {self.kind!r}")
        if self.kind == "operator_sampled" and self.sample_count < 100:
            raise ValueError("operator_sampled needs sample_count >= 100")


# tensor evaluation ------------------------------------------------------------

def _float_algebra(g: LieAlgebra | FloatLieAlgebra, bindings: Mapping | None = None) -> FloatLieAlgebra:
    if isinstance(g, FloatLieAlgebra):
        return g
    free = {v for v in g.variables() if not bindings or
            (v not in bindings and v.value not in bindings)}
    if free:
        raise UnboundIndeterminate(
            f"structure constants depend on unbound {', '.join(sorted(v.value for v in free))}")
    return g.to_float(bindings)


def nijenhuis_batch(C: np.ndarray, Js: np.ndarray) -> np.ndarray:
    """N[b, i, j, k] for a stack of matrices Js[b] (no J^2 = -I check)."""
    JC = np.einsum("bai,ajk->bijk", Js, C)
    CJ = np.einsum("bcj,ick->bijk", Js, C)
    JJC = np.einsum("bai,bcj,ack->bijk", Js, Js, C)
    return C[None] + np.einsum("bmk,bijk->bijm", Js, JC + CJ) - JJC


def objective(C: np.ndarray, J: np.ndarray) -> float:
    """||N_J||^2 summed over i < j."""
    N = nijenhuis_batch(C, J[None])[0]
    return 0.5 * float(np.sum(N * N))


def _objectives(C: np.ndarray, Js: np.ndarray) -> np.ndarray:
    N = nijenhuis_batch(C, Js)
    return 0.5 * np.sum(N * N, axis=(1, 2, 3))


def tensor_norm(N: np.ndarray, cfg: NormConfig | None = None) -> float:
    """Norm of a full skew array N[i, j, k]."""
    cfg = cfg or NormConfig()
    if cfg.kind == "frobenius":
        return math.sqrt(0.5 * float(np.sum(N * N)))
    n = N.shape[0]
    rng = np.random.default_rng(cfg.seed)
    X = rng.standard_normal((cfg.sample_count, n))
    Y = rng.standard_normal((cfg.sample_count, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    V = np.einsum("si,sj,ijk->sk", X, Y, N)
    return float(np.linalg.norm(V, axis=1).max())


def nijenhuis_norm(g: LieAlgebra | FloatLieAlgebra, J, cfg: NormConfig | None = None,
                   bindings: Mapping | None = None, tol: float = ACS_TOL) -> float:
    fg = _float_algebra(g, bindings)
    J = np.asarray(J, dtype=float)
    defect = float(np.abs(J @ J + np.eye(len(J))).max())
    if defect > tol:
        raise NotAlmostComplex(f"|J^2 + I| = {defect:.3e} exceeds {tol:g}", [])
    N = nijenhuis_batch(fg.c, J[None])[0]
    return tensor_norm(N, cfg)


def family_tensor(family: str | FamilyCatalogEntry, t, bindings: Mapping | None = None) -> np.ndarray:
    """N_t of a catalog family as a float array, from the exact components."""
    fam = catalog_family(family) if isinstance(family, str) else family
    b = fam.default_bindings()
    for key, v in (bindings or {}).items():
        b[key if isinstance(key, Indeterminate) else Indeterminate.from_name(str(key))] = v
    b[Indeterminate.T] = Fraction(t) if isinstance(t, float) else t
    return family_nijenhuis(fam.name).evaluate(b)


def family_norm(family: str | FamilyCatalogEntry, t, cfg: NormConfig | None = None,
                bindings: Mapping | None = None) -> float:
    return tensor_norm(family_tensor(family, t, bindings), cfg)


# sweeps -----------------------------------------------------------------------

@dataclass
class SweepReport:
    family: str
    t_grid: list[float]
    norms: list[float]
    model: str
    rate: float
    intercept: float
    r_squared: float
    skipped: list[tuple[float, str]] = field(default_factory=list)

    def records(self) -> list[dict]:
        out = [{"t": t, "norm": v} for t, v in zip(self.t_grid, self.norms)]
        out.append({"summary": True, "family": self.family, "model": self.model,
                    "rate": self.rate, "intercept": self.intercept,
                    "r_squared": self.r_squared, "points": len(self.t_grid),
                    "skipped": [[t, why] for t, why in self.skipped]})
        return out


def fit_rate(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """Least-squares line y = rate * x + intercept and its r^2."""
    rate, intercept = np.polyfit(x, y, 1)
    resid = y - (rate * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return float(rate), float(intercept), r2


def sweep(family: str | FamilyCatalogEntry, t_min: float, t_max: float, points: int = 16,
          cfg: NormConfig | None = None, bindings: Mapping | None = None,
          model: str | None = None) -> SweepReport:
    """||N_t|| on a geometric grid plus a decay fit.

    Power model: log||N|| against log t. Exponential model: log||N|| against t.
    The model defaults to the family's decay kind.
    """
    fam = catalog_family(family) if isinstance(family, str) else family
    if points < MIN_SWEEP_POINTS:
        raise ValueError(f"a sweep needs at least {MIN_SWEEP_POINTS} points")
    if not 0 < t_min < t_max:
        raise ValueError("need 0 < t_min < t_max")
    model = model or ("exponential" if fam.decay_kind.startswith("exponential") else "power")
    grid, norms, skipped = [], [], []
    for t in np.geomspace(t_min, t_max, points):
        t = float(t)
        try:
            v = family_norm(fam, t, cfg, bindings)
        except PoleError as exc:
            skipped.append((t, str(exc)))
            continue
        if v <= 0 or not math.isfinite(v):
            skipped.append((t, f"norm {v} cannot be fitted on a log scale"))
            continue
        grid.append(t)
        norms.append(v)
    if len(grid) < MIN_SWEEP_POINTS:
        raise PoleError(f"only {len(grid)} usable grid points; need {MIN_SWEEP_POINTS}")
    x = np.log(grid) if model == "power" else np.asarray(grid)
    rate, intercept, r2 = fit_rate(x, np.log(norms))
    return SweepReport(fam.name, grid, norms, model, rate, intercept, r2, skipped)


# retraction -------------------------------------------------------------------

def project_to_acs(A, tol: float = RETRACTION_TOL, max_iter: int = 100) -> np.ndarray:
    """J = A (-A^2)^(-1/2), the nearest point of {J^2 = -I} in the polar sense.

    The inverse square root comes from the scaled Denman-Beavers iteration.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    eye = np.eye(n)
    if not np.isfinite(A).all():
        raise RetractionFailure("matrix has non-finite entries")
    if np.abs(A @ A + eye).max() <= tol * 1e-3:
        return A.copy()
    M = -A @ A
    Y, Z = M.copy(), eye.copy()
    try:
        for _ in range(max_iter):
            detY = abs(np.linalg.det(Y))
            detZ = abs(np.linalg.det(Z))
            if detY == 0 or detZ == 0 or not math.isfinite(detY * detZ):
                raise RetractionFailure("square-root iteration hit a singular matrix")
            mu = (detY * detZ) ** (-1.0 / (2 * n))
            Yn = 0.5 * (mu * Y + np.linalg.inv(mu * Z))
            Zn = 0.5 * (mu * Z + np.linalg.inv(mu * Y))
            done = np.abs(Yn - Y).max() <= 1e-15 * max(1.0, np.abs(Yn).max())
            Y, Z = Yn, Zn
            if done:
                break
        J = A @ Z
        # Newton polish for J^2 = -I; its fixed points are exactly the targets
        for _ in range(3):
            if np.abs(J @ J + eye).max() <= tol * 1e-2:
                break
            J = 0.5 * (J - np.linalg.inv(J))
    except np.linalg.LinAlgError as exc:
        raise RetractionFailure(f"square-root iteration failed: {exc}") from None
    defect = float(np.abs(J @ J + eye).max()) if np.isfinite(J).all() else math.inf
    if defect > tol:
        raise RetractionFailure(f"retraction did not converge (|J^2 + I| = {defect:.2e})")
    return J


def random_structure(n: int, rng: np.random.Generator) -> np.ndarray:
    """P J_std P^-1 for a Gaussian P."""
    Jstd = np.zeros((n, n))
    for b in range(0, n, 2):
        Jstd[b, b + 1], Jstd[b + 1, b] = -1.0, 1.0
    while True:
        P = rng.standard_normal((n, n))
        if np.linalg.cond(P) < 1e3:
            return P @ Jstd @ np.linalg.inv(P)


# descent ----------------------------------------------------------------------

def tangent_projector(J: np.ndarray) -> np.ndarray:
    """Orthogonal (Frobenius) projector onto {T : TJ + JT = 0}, acting on flattened matrices."""
    n = J.shape[0]
    eye = np.eye(n)
    L = np.kron(J, eye) + np.kron(eye, J.T)  # row-major vec(JX + XJ)
    _, s, vt = np.linalg.svd(L)
    rank = int((s > 1e-10 * max(1.0, s[0])).sum())
    B = vt[rank:]
    return B.T @ B


def fd_gradient(C: np.ndarray, J: np.ndarray) -> np.ndarray:
    """Central differences of the objective in every matrix entry."""
    n = J.shape[0]
    m = n * n
    h = 1e-6 * (1.0 + np.abs(J).reshape(-1))
    E = np.zeros((m, n, n))
    E.reshape(m, m)[np.arange(m), np.arange(m)] = h
    stack = np.concatenate([J[None] + E, J[None] - E])
    f = _objectives(C, stack)
    return ((f[:m] - f[m:]) / (2 * h)).reshape(n, n)


def projected_gradient(C: np.ndarray, J: np.ndarray) -> np.ndarray:
    G = fd_gradient(C, J)
    return (tangent_projector(J) @ G.reshape(-1)).reshape(G.shape)


@dataclass
class DescentState:
    J: np.ndarray
    objective: float
    iteration: int
    step: float
    grad_norm: float

    def record(self) -> dict:
        return {"iter": self.iteration, "objective": self.objective, "step": self.step,
                "grad_norm": self.grad_norm}


@dataclass
class DescentResult:
    states: list[DescentState]
    status: str
    message: str = ""

    @property
    def final(self) -> DescentState:
        return self.states[-1]

    @property
    def initial_objective(self) -> float:
        return self.states[0].objective

    @property
    def objectives(self) -> list[float]:
        return [s.objective for s in self.states]

    @property
    def monotone(self) -> bool:
        obj = self.objectives
        return all(b <= a for a, b in zip(obj, obj[1:]))

    @property
    def reduction(self) -> float:
        f0 = self.initial_objective
        return self.final.objective / f0 if f0 > 0 else 0.0


def descend(g: LieAlgebra | FloatLieAlgebra, J0, max_iters: int = 5000, step0: float = 1.0,
            tol: float = 1e-8, bindings: Mapping | None = None,
            stop_below: float | None = None, armijo: float = 1e-4,
            shrink: float = 0.5, max_backtracks: int = 60) -> DescentResult:
    """Projected gradient descent of ||N_J||^2 with Armijo backtracking.

    Every trial step is retracted onto J^2 = -I. Stops on a small gradient,
    on objective < tol^2, on ``stop_below`` or after ``max_iters``.
    """
    C = _float_algebra(g, bindings).c
    J = project_to_acs(J0)
    f = objective(C, J)
    states: list[DescentState] = []
    step = step0
    for it in range(max_iters + 1):
        G = projected_gradient(C, J)
        gnorm = float(np.linalg.norm(G))
        states.append(DescentState(J, f, it, step, gnorm))
        if f < tol * tol:
            return DescentResult(states, "objective_below_tol")
        if stop_below is not None and f <= stop_below:
            return DescentResult(states, "target_reached")
        if gnorm < tol:
            return DescentResult(states, "gradient_below_tol")
        if it == max_iters:
            break
        alpha = step
        for _ in range(max_backtracks):
            try:
                Jt = project_to_acs(J - alpha * G)
            except RetractionFailure:
                alpha *= shrink
                continue
            ft = objective(C, Jt)
            if ft <= f - armijo * alpha * gnorm * gnorm:
                break
            alpha *= shrink
        else:
            return DescentResult(states, "line_search_failed",
                                 f"no acceptable step after {max_backtracks} halvings")
        J, f = Jt, ft
        step = min(2.0 * alpha, 1e3 * step0)
    return DescentResult(states, "max_iters")


def gradient_check(g: LieAlgebra | FloatLieAlgebra, J, directions: int = 20, seed: int = 0,
                   h: float = 1e-5, bindings: Mapping | None = None) -> float:
    """Max relative gap between <grad f, A> and a central secant along the retraction.

    Directions are seeded random tangent vectors; zero directions are skipped.
    """
    C = _float_algebra(g, bindings).c
    J = np.asarray(J, dtype=float)
    n = J.shape[0]
    P = tangent_projector(J)
    G = (P @ fd_gradient(C, J).reshape(-1)).reshape(n, n)
    rng = np.random.default_rng(seed)
    worst = 0.0
    f0 = objective(C, J)
    for _ in range(directions):
        A = (P @ rng.standard_normal(n * n)).reshape(n, n)
        norm = np.linalg.norm(A)
        if norm == 0:
            continue
        A /= norm
        predicted = float(np.sum(G * A))
        secant = (objective(C, project_to_acs(J + h * A)) - objective(C, project_to_acs(J - h * A))) / (2 * h)
        scale = max(abs(predicted), abs(secant), 1e-12 * max(1.0, f0))
        worst = max(worst, abs(predicted - secant) / scale)
    return worst


@dataclass
class MultiStartSummary:
    seeds: list[int]
    results: list[DescentResult]
    ratio: float

    @property
    def successes(self) -> list[bool]:
        return [r.reduction <= self.ratio for r in self.results]

    @property
    def success_fraction(self) -> float:
        return sum(self.successes) / len(self.results) if self.results else 0.0

    @property
    def all_monotone(self) -> bool:
        return all(r.monotone for r in self.results)

    def records(self) -> list[dict]:
        out = []
        for seed, r, ok in zip(self.seeds, self.results, self.successes):
            out.append({"seed": seed, "status": r.status, "iterations": r.final.iteration,
                        "initial_objective": r.initial_objective,
                        "final_objective": r.final.objective, "reduction": r.reduction,
                        "monotone": r.monotone, "success": ok})
        out.append({"summary": True, "runs": len(self.results), "ratio": self.ratio,
                    "success_fraction": self.success_fraction, "all_monotone": self.all_monotone})
        return out


def multi_start(g: LieAlgebra | FloatLieAlgebra, seeds: Sequence[int], max_iters: int = 5000,
                ratio: float = 0.01, bindings: Mapping | None = None, **kwargs) -> MultiStartSummary:
    """Descent from random P J_std P^-1 starts, one per seed.

    A run stops early once the objective falls to ``ratio`` times its start.
    """
    fg = _float_algebra(g, bindings)
    results = []
    for seed in seeds:
        J0 = random_structure(fg.dim, np.random.default_rng(seed))
        f0 = objective(fg.c, project_to_acs(J0))
        results.append(descend(fg, J0, max_iters=max_iters, stop_below=ratio * f0, **kwargs))
    return MultiStartSummary(list(seeds), results, ratio)
