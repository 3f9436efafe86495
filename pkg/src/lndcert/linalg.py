"""Exact sparse linear algebra over Q used by the window computations.

Vectors are dicts ``column -> Fraction`` with integer columns; column 0 is
the most significant one, so reduced row-echelon rows start at their pivot.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence

from .poly import GREVLEX, Monomial, MonomialOrder, Poly, VarTable

Vector = Dict[int, Fraction]


def rref(rows: Iterable[Vector]) -> List[Vector]:
    """Reduced row-echelon form: pivots ascending, pivot entries 1, zero rows dropped."""
    basis: Dict[int, Vector] = {}
    for row in rows:
        v = {c: Fraction(x) for c, x in row.items() if x}
        # clear every existing pivot column from v
        hits = [c for c in v if c in basis]
        while hits:
            for q in hits:
                f = v.pop(q, None)
                if not f:
                    continue
                for c, x in basis[q].items():
                    if c == q:
                        continue
                    s = v.get(c, 0) - f * x
                    if s:
                        v[c] = s
                    else:
                        v.pop(c, None)
            hits = [c for c in v if c in basis]
        if not v:
            continue
        p = min(v)
        inv = 1 / v[p]
        v = {c: x * inv for c, x in v.items()}
        for other in basis.values():
            f = other.pop(p, None)
            if f:
                for c, x in v.items():
                    if c == p:
                        continue
                    s = other.get(c, 0) - f * x
                    if s:
                        other[c] = s
                    else:
                        other.pop(c, None)
        basis[p] = v
    return [basis[p] for p in sorted(basis)]


def rank(rows: Iterable[Vector]) -> int:
    return len(rref(rows))


def nullspace(columns: Sequence[Vector]) -> List[Vector]:
    """Basis of ``{c : sum_j c_j * columns[j] = 0}`` as sparse vectors over ``j``."""
    eqs: Dict[int, Vector] = {}
    for j, col in enumerate(columns):
        for r, x in col.items():
            if x:
                eqs.setdefault(r, {})[j] = Fraction(x)
    red = rref(eqs.values())
    pivots = {min(row): row for row in red}
    out: List[Vector] = []
    for f in range(len(columns)):
        if f in pivots:
            continue
        v: Vector = {f: Fraction(1)}
        for p, row in pivots.items():
            x = row.get(f)
            if x:
                v[p] = -x
        out.append(v)
    return out


class MonomialIndex:
    """Bijection between monomials and columns, largest monomial first."""

    def __init__(self, monomials: Iterable[Monomial], order: MonomialOrder = GREVLEX):
        key = order.key()
        self.monomials: List[Monomial] = sorted(set(monomials), key=key, reverse=True)
        self.column = {m: i for i, m in enumerate(self.monomials)}

    @classmethod
    def of(cls, polys: Iterable[Poly], order: MonomialOrder = GREVLEX) -> "MonomialIndex":
        return cls((e for p in polys for e in p.terms), order)

    def vector(self, p: Poly) -> Vector:
        return {self.column[e]: c for e, c in p.terms.items()}

    def poly(self, table: VarTable, v: Vector) -> Poly:
        return Poly(table, {self.monomials[c]: x for c, x in v.items()})


def canonical_basis(polys: Sequence[Poly], table: VarTable) -> List[Poly]:
    """Canonical Q-basis of span(polys): reduced row-echelon in grevlex
    coordinates, listed from smallest to largest leading monomial."""
    idx = MonomialIndex.of(polys)
    rows = rref(idx.vector(p) for p in polys)
    return [idx.poly(table, r) for r in reversed(rows)]


def combine(coeffs: Vector, polys: Sequence[Poly], table: VarTable) -> Poly:
    out = Poly.zero(table)
    for j, c in coeffs.items():
        out = out + polys[j].scale(c)
    return out


def same_span(a: Sequence[Poly], b: Sequence[Poly], table: VarTable) -> bool:
    return canonical_basis(list(a), table) == canonical_basis(list(b), table)
