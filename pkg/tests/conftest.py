"""Shared strategies and sympy oracles."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lndcert.derivation import Derivation, conjugate
from lndcert.poly import Poly, RatFunc, VarTable

settings.register_profile("lndcert", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("lndcert")

XY = VarTable(("x", "y"))
XYZ = VarTable(("x", "y", "z"))
TXY = VarTable(("t", "x", "y"), ("t",))
RSXY = VarTable(("r", "s", "x", "y"), ("r", "s"))


def to_sympy(p: Poly):
    syms = sympy.symbols(p.table.names)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, table: VarTable) -> Poly:
    syms = sympy.symbols(table.names)
    sp = sympy.Poly(sympy.expand(expr), *syms)
    return Poly(table, {e: Fraction(int(c.p), int(c.q)) for e, c in sp.terms()})


def ratfunc_to_sympy(f: RatFunc):
    return to_sympy(f.num) / to_sympy(f.den)


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, table: VarTable = XY, max_degree: int = 3, max_terms: int = 4, nonzero: bool = False):
    n = len(table)
    exps = st.lists(st.integers(0, max_degree), min_size=n, max_size=n).map(tuple).filter(
        lambda e: sum(e) <= max_degree)
    terms = draw(st.dictionaries(exps, coeffs.filter(bool), min_size=1 if nonzero else 0, max_size=max_terms))
    return Poly(table, terms)


def random_poly(rng: random.Random, table: VarTable, max_degree: int, max_terms: int,
                nonzero: bool = True) -> Poly:
    n = len(table)
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            budget = rng.randint(0, max_degree)
            e = [0] * n
            for _ in range(budget):
                e[rng.randrange(n)] += 1
            terms[tuple(e)] = Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3]))
        p = Poly(table, terms)
        if p.terms or not nonzero:
            return p


def random_triangular_lnd(rng, table, max_degree=2):
    """D(x_i) depends only on later variables, so D is locally nilpotent."""
    n = len(table)
    images = {}
    for i, name in enumerate(table.names):
        later = list(range(i + 1, n))
        terms = {}
        for _ in range(rng.randint(0, 2)):
            e = [0] * n
            for _ in range(rng.randint(0, max_degree)):
                if later:
                    e[rng.choice(later)] += 1
            terms[tuple(e)] = Fraction(rng.randint(-3, 3))
        images[name] = Poly(table, terms)
    return Derivation(table, images)


def random_lnd(rng, table):
    """A triangular LND, possibly conjugated by another one to break triangularity."""
    D = random_triangular_lnd(rng, table)
    if rng.random() < 0.5:
        rev = VarTable(tuple(reversed(table.names)))
        E0 = random_triangular_lnd(rng, rev, 1)
        E = Derivation(table, {n: E0.image(n).substitute({m: Poly.var(table, m) for m in rev.names}, table)
                               for n in table.names})
        D = conjugate(D, E)
    return D


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
