"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .acstruct import (
    FAMILY_NAMES,
    as_scalar_matrix,
    catalog_family,
    check_acs,
    family_nijenhuis,
    nijenhuis,
    numeric_acs_defect,
    verify_family,
)
from .errors import NijlabError, NotAlmostComplex, ScalarSyntaxError, SymbolicCoefficients
from .forms import betti_numbers, cohomology_generators
from .liealg import ALGEBRA_NAMES, FloatLieAlgebra, catalog_algebra, load_algebra
from .numopt import NormConfig, descend, multi_start, random_structure, sweep
from .scalar import VARIABLES, Indeterminate

CONVENTION_NOTE = ("convention: N(X,Y) = [X,Y] + J[JX,Y] + J[X,JY] - [JX,JY]; "
                   "norms are Frobenius over i<j with the algebra basis declared orthonormal")
LIE_NOTE = "Betti numbers are Lie algebra cohomology of the structure constants"
ACS_DPS = 40


class UsageError(Exception):
    pass


# argument helpers -------------------------------------------------------------

def parse_bindings(text: str | None) -> dict:
    """'k=1,l1=3/10' -> {Indeterminate: Fraction}. Values are exact rationals."""
    out: dict = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise UsageError(f"binding {item!r} is not of the form name=value")
        name, value = (x.strip() for x in item.split("=", 1))
        try:
            var = Indeterminate.from_name(name)
        except (KeyError, ValueError):
            raise UsageError(f"unknown binding {name!r}; allowed: {', '.join(v.value for v in VARIABLES)}") from None
        try:
            out[var] = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"binding {name}={value!r} is not a rational or decimal number") from None
    return out


def parse_t_list(text: str | None) -> list[Fraction]:
    if not text:
        return []
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--t expects a comma separated list of numbers, got {text!r}") from None


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("NIJLAB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"NIJLAB_SEED must be an integer, got {env!r}") from None


def load_algebra_arg(name: str):
    """A catalog algebra or family name, or a JSON file."""
    if name in FAMILY_NAMES:
        return catalog_family(name).algebra
    if name in ALGEBRA_NAMES:
        return catalog_algebra(name)
    path = Path(name)
    if path.suffix == ".json" or path.exists():
        return load_algebra(path)
    raise UsageError(f"{name!r} is neither a catalog algebra ({', '.join(ALGEBRA_NAMES)}) nor a file")


def load_structure(path: str) -> list:
    """J file: {"rows": [[entry, ...], ...]} with scalar texts or numbers."""
    with open(path) as fh:
        data = json.load(fh)
    rows = data["rows"] if isinstance(data, dict) else data
    if any(isinstance(x, float) for row in rows for x in row):
        return np.asarray(rows, dtype=float)
    return as_scalar_matrix([[str(x) for x in row] for row in rows])


def emit(args, payload: dict, text_lines: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def emit_records(records: Sequence[dict]) -> None:
    for rec in records:
        print(json.dumps(rec, sort_keys=True))


# commands ---------------------------------------------------------------------

def cmd_catalog(args) -> int:
    entries = []
    for name in FAMILY_NAMES:
        fam = catalog_family(name)
        entries.append({"name": name, "dim": fam.dim, "decay_kind": fam.decay_kind,
                        "algebra": fam.algebra.name, "title": fam.title,
                        "parameters": fam.parameters})
    lines = [f"{e['name']:<10} dim={e['dim']}  {e['decay_kind']:<17} {e['title']}" for e in entries]
    emit(args, {"families": entries, "note": CONVENTION_NOTE}, lines + ["", CONVENTION_NOTE])
    return 0


def _verify_family(args) -> int:
    name = args.target
    mode = "numeric" if args.numeric else "symbolic"
    t_values = parse_t_list(args.t) if args.numeric else []
    if args.numeric and not t_values:
        t_values = [Fraction(2), Fraction(5), Fraction(10), Fraction(100)]
    fam = catalog_family(name)
    jac = fam.algebra.jacobi_check()
    report = verify_family(name, mode, t_values=t_values, bindings=parse_bindings(args.at))
    acs_numeric = []
    if args.numeric:
        b = fam.default_bindings()
        b.update(parse_bindings(args.at))
        for t in t_values:
            b[Indeterminate.T] = t
            d = numeric_acs_defect(fam.J, b, dps=ACS_DPS)
            acs_numeric.append({"t": float(t), "defect": d, "ok": d <= args.tol})
    formula_ok = report.convention is not None or args.allow_formula_diff
    numeric_ok = all(r["ok"] for r in acs_numeric) and (report.numeric_ok or args.allow_formula_diff)
    ok = not jac and report.acs.ok and report.decay_ok and formula_ok and numeric_ok
    payload = report.to_json()
    payload.update({"jacobi_ok": not jac, "acs_numeric": acs_numeric, "pass": ok,
                    "note": CONVENTION_NOTE})
    lines = [f"family {name} ({mode})",
             f"  jacobi: {'ok' if not jac else 'FAILED'}",
             f"  J^2 = -I exactly: {'ok' if report.acs.ok else 'FAILED'}"]
    for r in acs_numeric:
        lines.append(f"  J^2 + I at t={r['t']:g}: {r['defect']:.3e} {'ok' if r['ok'] else 'FAILED'}")
    nz = report.nonzero_pairs
    lines.append(f"  nonzero components N(X_i,X_j): {len(nz)} pairs {', '.join(f'({i},{j})' for i, j in nz)}")
    vanishing = [(i, j) for i in range(1, fam.dim + 1) for j in range(i + 1, fam.dim + 1) if (i, j) not in nz]
    if vanishing:
        lines.append(f"  identically zero: {', '.join(f'({i},{j})' for i, j in vanishing)}")
    lines.append(f"  decay (every component has order < (0,0)): {'ok' if report.decay_ok else 'FAILED'}")
    conv = {"as_defined": "reference matches N as defined here",
            "negated": "reference matches -N (opposite sign convention)",
            None: "reference differs under both sign conventions"}[report.convention]
    lines.append(f"  reference formulas: {conv}")
    if report.convention is None:
        lines.append("  components differing from the reference (as -N):")
        for c in report.mismatches_negated:
            lines.append(f"    N({c.i},{c.j})_{c.k}: computed {c.computed}, reference {c.reference}")
        if args.allow_formula_diff:
            lines.append("  formula differences acknowledged (--allow-formula-diff)")
    for r in report.numeric:
        lines.append(f"  t={r['t']:g}: |N| max {r['max_component']:.3e}, "
                     f"rel err {r['max_rel_error']:.1e} (negated {r['max_rel_error_negated']:.1e})")
    lines += [f"result: {'PASS' if ok else 'FAIL'}", CONVENTION_NOTE]
    emit(args, payload, lines)
    return 0 if ok else 1


def _verify_files(args) -> int:
    if not args.j:
        raise UsageError("verifying an algebra file needs --j <structure.json>")
    g = load_algebra_arg(args.target)
    J = load_structure(args.j)
    jac = g.jacobi_check()
    acs = check_acs(J, tol=args.tol)
    payload = {"jacobi_ok": not jac, "acs_ok": acs.ok,
               "acs_defects": [[i, j, str(d)] for i, j, d in acs.defects], "note": CONVENTION_NOTE}
    lines = [f"jacobi: {'ok' if not jac else 'FAILED'}"]
    lines += [f"  {v}" for v in jac[:10]]
    if not acs.ok:
        lines.append("NotAlmostComplex: J^2 + I has nonzero entries")
        lines += [f"  ({i},{j}): {d}" for i, j, d in acs.defects]
    ok = not jac and acs.ok
    if ok:
        N = nijenhuis(g, J)
        if isinstance(N, np.ndarray):
            nz = [(i + 1, j + 1) for i in range(g.dim) for j in range(i + 1, g.dim)
                  if np.abs(N[i, j]).max() > args.tol]
            payload["integrable"] = not nz
        else:
            nz = sorted({(i, j) for (i, j, _), _x in N.nonzero()})
            payload["integrable"] = not nz
            payload["decay_ok"] = all(x.tends_to_zero() for _, x in N.nonzero())
        payload["nonzero_pairs"] = [list(p) for p in nz]
        lines.append(f"integrable: {'yes' if not nz else 'no'}; nonzero pairs: {nz}")
    payload["pass"] = ok
    lines += [f"result: {'PASS' if ok else 'FAIL'}", CONVENTION_NOTE]
    emit(args, payload, lines)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    if args.target in FAMILY_NAMES and not args.j:
        return _verify_family(args)
    return _verify_files(args)


def cmd_betti(args) -> int:
    g = load_algebra_arg(args.target)
    bindings = parse_bindings(args.at)
    b = betti_numbers(g, bindings or None, tol=args.tol)
    gens = {p: [str(f) for f in cohomology_generators(g, p, bindings or None, tol=args.tol)]
            for p in (1, 2) if p <= g.dim}
    payload = {"algebra": args.target, "bindings": {k.value: str(v) for k, v in bindings.items()},
               "betti": b, "generators": {str(p): v for p, v in gens.items()}, "note": LIE_NOTE}
    lines = [" ".join(str(x) for x in b)]
    for p, forms in gens.items():
        lines.append(f"H^{p}: " + (", ".join(forms) if forms else "0"))
    emit(args, payload, lines)
    return 0


def cmd_nijenhuis(args) -> int:
    if args.target in FAMILY_NAMES and not args.j:
        fam = catalog_family(args.target)
        N = family_nijenhuis(args.target)
        dim = fam.dim
        defaults = fam.default_bindings()
    else:
        if not args.j:
            raise UsageError("an algebra file needs --j <structure.json>")
        g = load_algebra_arg(args.target)
        N = nijenhuis(g, load_structure(args.j))
        dim = g.dim
        defaults = {}
    t_values = parse_t_list(args.t)
    records = []
    lines = []
    if isinstance(N, np.ndarray):
        for i in range(dim):
            for j in range(i + 1, dim):
                for k in range(dim):
                    if abs(N[i, j, k]) > 0:
                        records.append({"i": i + 1, "j": j + 1, "k": k + 1, "value": float(N[i, j, k])})
                        lines.append(f"N(X{i + 1},X{j + 1})_{k + 1} = {N[i, j, k]!r}")
    elif args.numeric or t_values:
        b = dict(defaults)
        b.update(parse_bindings(args.at))
        for t in t_values or [Fraction(1)]:
            b[Indeterminate.T] = t
            arr = N.evaluate(b)
            for (i, j, k), x in N.nonzero():
                v = float(arr[i - 1, j - 1, k - 1])
                records.append({"t": float(t), "i": i, "j": j, "k": k, "value": v})
                lines.append(f"t={float(t):g} N(X{i},X{j})_{k} = {v!r}")
    else:
        for (i, j, k), x in N.nonzero():
            records.append({"i": i, "j": j, "k": k, "value": str(x), "order": list(x.asymptotic_order())})
            lines.append(f"N(X{i},X{j})_{k} = {x}")
    emit(args, {"components": records, "note": CONVENTION_NOTE}, lines + [CONVENTION_NOTE])
    return 0


def cmd_sweep(args) -> int:
    if args.target not in FAMILY_NAMES:
        raise UsageError(f"sweep needs a catalog family ({', '.join(FAMILY_NAMES)})")
    cfg = NormConfig(args.norm, args.samples, resolve_seed(args.seed))
    rep = sweep(args.target, args.t_min, args.t_max, args.points, cfg,
                bindings=parse_bindings(args.at), model=args.model)
    records = rep.records()
    records[-1]["note"] = CONVENTION_NOTE
    if args.format == "json":
        emit_records(records)
    else:
        for t, v in zip(rep.t_grid, rep.norms):
            print(f"{t:14.6g}  {v:.6e}")
        print(f"model {rep.model}: rate {rep.rate:.6f}, r^2 {rep.r_squared:.8f}")
        for t, why in rep.skipped:
            print(f"skipped t={t:g}: {why}")
        print(CONVENTION_NOTE)
    return 0


def cmd_optimize(args) -> int:
    g = load_algebra_arg(args.target)
    bindings = parse_bindings(args.at)
    if args.target in FAMILY_NAMES and not bindings:
        bindings = catalog_family(args.target).default_bindings()
    if not isinstance(g, FloatLieAlgebra):
        g = g.to_float(bindings)
    base = resolve_seed(args.seed)
    seeds = list(range(base, base + args.seeds))
    if args.trajectory:
        J0 = random_structure(g.dim, np.random.default_rng(base))
        res = descend(g, J0, max_iters=args.max_iters)
        records = [s.record() for s in res.states]
        records.append({"summary": True, "status": res.status, "monotone": res.monotone,
                        "reduction": res.reduction, "seed": base})
        emit_records(records)
        return 0
    summary = multi_start(g, seeds, max_iters=args.max_iters, ratio=args.ratio)
    records = summary.records()
    ok = summary.success_fraction >= args.min_success and summary.all_monotone
    records[-1]["pass"] = ok
    records[-1]["note"] = CONVENTION_NOTE
    if args.format == "json":
        emit_records(records)
    else:
        for r in records[:-1]:
            print(f"seed {r['seed']:>4}: {r['status']:<20} iters {r['iterations']:>5} "
                  f"f0 {r['initial_objective']:.4e} -> {r['final_objective']:.4e} "
                  f"({'ok' if r['success'] else 'no'})")
        print(f"success fraction {summary.success_fraction:.2f} (target ratio {args.ratio}), "
              f"monotone: {summary.all_monotone}")
        print(CONVENTION_NOTE)
    return 0 if ok else 1


def cmd_jacobi(args) -> int:
    g = load_algebra_arg(args.target)
    bindings = parse_bindings(args.at)
    if bindings and not isinstance(g, FloatLieAlgebra):
        g = g.specialize(bindings)
    if isinstance(g, FloatLieAlgebra):
        bad = g.jacobi_check(args.tol)
        defect = g.jacobi_defect()
    else:
        bad = g.jacobi_check()
        defect = None
    payload = {"algebra": args.target, "ok": not bad, "violations": [str(v) for v in bad],
               "float_defect": defect}
    lines = [f"jacobi {args.target}: {'ok' if not bad else 'FAILED'}"]
    if defect is not None:
        lines.append(f"max float defect {defect:.3e}")
    lines += [str(v) for v in bad]
    emit(args, payload, lines)
    return 0 if not bad else 1


# parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=None, help="random seed (fallback: NIJLAB_SEED, then 0)")
    common.add_argument("--tol", type=float, default=1e-10, help="numeric tolerance")
    common.add_argument("--at", default=None, help="bindings such as k=1 or l1=3/10,l2=2/5")

    p = argparse.ArgumentParser(prog="nijlab", description="Almost complex structures and Nijenhuis tensors on Lie algebras.")
    p.add_argument("--version", action="version", version=f"nijlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("catalog", parents=[common], help="list the catalog families")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("verify", parents=[common], help="verify a family or an (algebra, J) pair")
    s.add_argument("target", help="family name or algebra JSON file")
    s.add_argument("--j", help="structure JSON file")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--symbolic", action="store_true", default=True)
    mode.add_argument("--numeric", action="store_true")
    s.add_argument("--t", help="comma separated t values for --numeric")
    s.add_argument("--allow-formula-diff", action="store_true",
                   help="pass even if reference formulas differ (the differences are still listed)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("betti", parents=[common], help="Betti numbers and H^1, H^2 generators")
    s.add_argument("target")
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("nijenhuis", parents=[common], help="print Nijenhuis tensor components")
    s.add_argument("target")
    s.add_argument("--j")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--symbolic", action="store_true", default=True)
    mode.add_argument("--numeric", action="store_true")
    s.add_argument("--t")
    s.set_defaults(func=cmd_nijenhuis)

    s = sub.add_parser("sweep", parents=[common], help="norm of N_t over a geometric t grid")
    s.add_argument("target")
    s.add_argument("--t-min", type=float, required=True)
    s.add_argument("--t-max", type=float, required=True)
    s.add_argument("--points", type=int, default=16)
    s.add_argument("--norm", choices=("frobenius", "operator_sampled"), default="frobenius")
    s.add_argument("--samples", type=int, default=256)
    s.add_argument("--model", choices=("power", "exponential"), default=None)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("optimize", parents=[common], help="projected gradient descent from random starts")
    s.add_argument("target")
    s.add_argument("--seeds", type=int, default=20)
    s.add_argument("--max-iters", type=int, default=5000)
    s.add_argument("--ratio", type=float, default=0.01, help="success means final <= ratio * initial")
    s.add_argument("--min-success", type=float, default=0.8)
    s.add_argument("--trajectory", action="store_true", help="emit one run's iterations as JSON lines")
    s.set_defaults(func=cmd_optimize)

    s = sub.add_parser("jacobi", parents=[common], help="check the Jacobi identity")
    s.add_argument("target")
    s.set_defaults(func=cmd_jacobi)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotAlmostComplex as exc:
        print(f"NotAlmostComplex: {exc}", file=sys.stderr)
        for d in exc.defects:
            print(f"  {d}", file=sys.stderr)
        return 1
    except (UsageError, OSError, json.JSONDecodeError, KeyError, ValueError,
            ScalarSyntaxError, SymbolicCoefficients, NijlabError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
