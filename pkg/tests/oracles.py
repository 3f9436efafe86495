"""Independent brute-force oracles built on sympy."""

from __future__ import annotations

import itertools

import sympy

from conftest import from_sympy, to_sympy
from lndcert.derivation import Derivation
from lndcert.poly import VarTable


def window_exponents(n: int, d: int):
    return [e for e in itertools.product(range(d + 1), repeat=n) if sum(e) <= d]


def brute_force_kernel(derivations, table: VarTable, d: int):
    """Solve D(f) = 0 for every D with all window coefficients as unknowns."""
    syms = sympy.symbols(table.names)
    exps = window_exponents(len(table), d)
    unknowns = sympy.symbols(f"c0:{len(exps)}")
    f = sum(c * sympy.Mul(*[s ** k for s, k in zip(syms, e)]) for c, e in zip(unknowns, exps))
    equations = []
    for D in derivations:
        images = [to_sympy(D.image(n)) for n in table.names]
        Df = sympy.expand(sum(sympy.diff(f, s) * img for s, img in zip(syms, images)))
        if Df != 0:
            equations += sympy.Poly(Df, *syms).coeffs()
    if not equations:
        matrix = sympy.zeros(1, len(unknowns))
    else:
        matrix = sympy.Matrix([[sympy.diff(eq, c) for c in unknowns] for eq in equations])
    basis = []
    for vec in matrix.nullspace():
        expr = sum(vec[i] * sympy.Mul(*[s ** k for s, k in zip(syms, e)]) for i, e in enumerate(exps))
        basis.append(from_sympy(expr, table))
    return basis


def brute_force_lex_value(v_kind, parameter, f, table):
    """Minimum over terms of (main exponent, base value of its coefficient)."""
    syms = sympy.symbols(table.names)
    mains = [syms[i] for i in table.main_indices]
    poly = sympy.Poly(to_sympy(f), *mains)
    best = None
    t = sympy.Symbol(parameter) if parameter else None
    for e, c in poly.terms():
        if v_kind == "trivial":
            b = 0
        elif v_kind == "order_at_infinity":
            b = -sympy.degree(c, t)
        else:  # order at t = 0
            b = min(m[0] for m in sympy.Poly(c, t).monoms())
        key = (tuple(e), int(b))
        best = key if best is None or key < best else best
    return best


__all__ = ["brute_force_kernel", "brute_force_lex_value", "window_exponents", "Derivation"]
