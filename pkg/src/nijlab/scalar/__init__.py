"""Exact coefficient field: Q(sqrt2, sqrt3)(t, s, k, l1, l2)."""

from .algebraic import ONE, R2, R3, R6, ZERO, AlgebraicNumber
from .field import ONE_SCALAR, ZERO_SCALAR, Scalar, family_time
from .grammar import format_algebraic, format_poly, parse_scalar, print_scalar
from .poly import MAX_DEGREE, VARIABLES, Indeterminate, Poly, poly_is_zero

T, S, K, L1, L2 = VARIABLES


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Field operation by name: add, sub, mul or div."""
    a, b = Scalar.of(a), Scalar.of(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def evaluate(x: Scalar, bindings):
    return Scalar.of(x).evaluate(bindings)


def asymptotic_order(x: Scalar) -> tuple[int, int]:
    return Scalar.of(x).asymptotic_order()


__all__ = [
    "AlgebraicNumber", "Indeterminate", "MAX_DEGREE", "ONE", "ONE_SCALAR", "Poly",
    "R2", "R3", "R6", "Scalar", "VARIABLES", "ZERO", "ZERO_SCALAR", "T", "S", "K",
    "L1", "L2", "asymptotic_order", "evaluate", "family_time", "format_algebraic",
    "format_poly", "parse_scalar", "poly_is_zero", "print_scalar", "scalar_arith",
]
