"""Buchberger's algorithm, normal forms and exact subalgebra membership."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import GREVLEX, Monomial, MonomialOrder, Poly, VarTable, VarTableMismatch

Terms = Dict[Monomial, Fraction]


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    generators: Tuple[Poly, ...]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def contains(self, f: Poly) -> bool:
        return normal_form(f, self).is_zero()


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _Elem:
    """Basis element with its leading term cached."""

    __slots__ = ("terms", "lm", "lc", "tail")

    def __init__(self, terms: Terms, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]
        self.tail = [(e, c) for e, c in terms.items() if e != self.lm]


def _reduce(terms: Terms, basis: Sequence[_Elem], key, full: bool = True) -> Terms:
    """Multivariate division remainder of ``terms`` by ``basis``."""
    r = dict(terms)
    rem: Terms = {}
    while r:
        lm = max(r, key=key)
        for g in basis:
            if _divides(g.lm, lm):
                q = tuple(x - y for x, y in zip(lm, g.lm))
                qc = r.pop(lm) / g.lc
                for e, c in g.tail:
                    ne = tuple(x + y for x, y in zip(e, q))
                    s = r.get(ne, 0) - qc * c
                    if s:
                        r[ne] = s
                    else:
                        r.pop(ne, None)
                break
        else:
            if not full:
                rem.update(r)
                return rem
            rem[lm] = r.pop(lm)
    return rem


def _spoly(f: _Elem, g: _Elem) -> Terms:
    l = _lcm(f.lm, g.lm)
    mf = tuple(x - y for x, y in zip(l, f.lm))
    mg = tuple(x - y for x, y in zip(l, g.lm))
    out: Terms = {}
    for e, c in f.tail:
        out[tuple(x + y for x, y in zip(e, mf))] = c / f.lc
    for e, c in g.tail:
        ne = tuple(x + y for x, y in zip(e, mg))
        s = out.get(ne, 0) - c / g.lc
        if s:
            out[ne] = s
        else:
            out.pop(ne, None)
    return out


def buchberger(gens: Sequence[Poly], order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Normal selection strategy (smallest lcm first) with Buchberger's coprime
    and chain criteria. Basis elements are monic.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return GroebnerBasis(order, ())
    table = gens[0].table
    for g in gens:
        if g.table != table:
            raise VarTableMismatch("generators over different variable tables")
    key = order.key()

    basis: List[_Elem] = []
    for g in gens:
        red = _reduce(g.terms, basis, key)
        if red:
            basis.append(_Elem(red, key))
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}

    while pairs:
        i, j = min(pairs, key=lambda p: (key(_lcm(basis[p[0]].lm, basis[p[1]].lm)), p))
        pairs.discard((i, j))
        fi, fj = basis[i], basis[j]
        l = _lcm(fi.lm, fj.lm)
        if all(a == 0 or b == 0 for a, b in zip(fi.lm, fj.lm)):
            continue
        if any(
            k != i and k != j
            and _divides(basis[k].lm, l)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        r = _reduce(_spoly(fi, fj), basis, key)
        if r:
            n = len(basis)
            basis.append(_Elem(r, key))
            pairs.update((k, n) for k in range(n))

    # minimalize, then interreduce
    minimal: List[_Elem] = []
    for idx, g in enumerate(basis):
        if any(
            _divides(h.lm, g.lm) and (h.lm != g.lm or jdx < idx)
            for jdx, h in enumerate(basis) if jdx != idx
        ):
            continue
        minimal.append(g)
    reduced: List[Poly] = []
    for idx, g in enumerate(minimal):
        others = [h for jdx, h in enumerate(minimal) if jdx != idx]
        r = _reduce(g.terms, others, key)
        lc = r[g.lm]
        reduced.append(Poly._raw(table, {e: c / lc for e, c in r.items()}))
    reduced.sort(key=lambda p: key(max(p.terms, key=key)))
    return GroebnerBasis(order, tuple(reduced))


def normal_form(f: Poly, gb: GroebnerBasis) -> Poly:
    """Remainder of ``f`` on division by ``gb``; zero iff ``f`` is in the ideal."""
    if not gb.generators:
        return f
    if f.table != gb.generators[0].table:
        raise VarTableMismatch("polynomial and basis over different tables")
    key = gb.order.key()
    elems = [_Elem(g.terms, key) for g in gb.generators]
    return Poly._raw(f.table, _reduce(f.terms, elems, key))


# --- subalgebra membership --------------------------------------------------

@dataclass(frozen=True)
class Membership:
    """Outcome of a subalgebra membership test.

    ``witness`` is a polynomial in the tag variables ``g1..gk`` (one per
    generator) that evaluates to the tested element; ``None`` for non-members.
    """

    member: bool
    witness: Optional[Poly] = None

    def __bool__(self) -> bool:
        return self.member


def tag_names(table: VarTable, k: int) -> Tuple[str, ...]:
    """Tag variable names ``g1..gk`` that do not clash with ``table``."""
    prefix = "g"
    while any(n.startswith(prefix) for n in table.names):
        prefix = "_" + prefix
    return tuple(f"{prefix}{i + 1}" for i in range(k))


@lru_cache(maxsize=256)
def _tag_basis(table: VarTable, gens: Tuple[Poly, ...]) -> Tuple[VarTable, VarTable, GroebnerBasis]:
    tags = tag_names(table, len(gens))
    ext = table.extend(tags)
    tag_table = VarTable(tags)
    ideal = [Poly.var(ext, t) - g.embed(ext) for t, g in zip(tags, gens)]
    gb = buchberger(ideal, MonomialOrder.block(len(table)))
    return ext, tag_table, gb


def subalgebra_membership(f: Poly, gens) -> Membership:
    """Decide whether ``f`` lies in Q[gens] and give an explicit expression.

    Uses the tag-variable test: reduce ``f`` modulo a Groebner basis of
    ``<g_i - gen_i>`` in a block order with the ambient variables greater
    than the tags; ``f`` is a member iff the remainder involves tags only.
    """
    table = f.table
    gens = tuple(getattr(gens, "generators", gens))
    for g in gens:
        if g.table != table:
            raise VarTableMismatch("element and generators over different tables")
    if not gens:
        if f.is_constant():
            return Membership(True, Poly.const(VarTable(()), f.constant_value()))
        return Membership(False)
    ext, tag_table, gb = _tag_basis(table, gens)
    nf = normal_form(f.embed(ext), gb)
    n = len(table)
    if any(any(e[:n]) for e in nf.terms):
        return Membership(False)
    return Membership(True, Poly._raw(tag_table, {e[n:]: c for e, c in nf.terms.items()}))


def evaluate_witness(witness: Poly, gens: Sequence[Poly], table: VarTable) -> Poly:
    """Evaluate a tag-variable expression on the generators."""
    return witness.substitute(dict(zip(witness.table.names, gens)), target=table)
