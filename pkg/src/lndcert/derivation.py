"""Derivations of polynomial rings and their restrictions to subalgebras."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .grobner import Membership, subalgebra_membership
from .poly import Poly, RatFunc, VarTable, VarTableMismatch, grevlex_key

DEFAULT_ITER_BOUND = 64


class UnstableDerivationError(ValueError):
    """A derivation does not map the algebra into itself."""

    def __init__(self, generator: Poly, image: Poly):
        super().__init__(f"D({generator}) = {image} is not in the algebra")
        self.generator = generator
        self.image = image


class NotLocallyNilpotentError(ValueError):
    """Nilpotency could not be established within the iteration bound."""


@dataclass(frozen=True)
class Algebra:
    """Subalgebra Q[generators] of the ambient polynomial ring."""

    table: VarTable
    generators: Tuple[Poly, ...]
    name: Optional[str] = None

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.table != self.table:
                raise VarTableMismatch(f"generator {g} is over another table")
            if g.is_zero():
                raise ValueError("algebra generators must be nonzero")

    @classmethod
    def ambient(cls, table: VarTable, name: Optional[str] = None) -> "Algebra":
        """The full polynomial ring Q[all variables]."""
        return cls(table, tuple(Poly.var(table, n) for n in table.names), name)

    def __len__(self) -> int:
        return len(self.generators)

    def contains(self, f: Poly) -> Membership:
        return subalgebra_membership(f, self.generators)

    def words(self, length: int) -> Iterator[Tuple[Tuple[int, ...], Poly]]:
        """Products of exactly ``length`` generators (as index multisets)."""
        one = Poly.const(self.table, 1)
        cache: Dict[Tuple[int, ...], Poly] = {(): one}
        for combo in combinations_with_replacement(range(len(self.generators)), length):
            prefix = combo[:-1]
            base = cache.get(prefix)
            if base is None:
                base = one
                for i in prefix:
                    base = base * self.generators[i]
            value = base * self.generators[combo[-1]] if combo else one
            cache[combo] = value
            yield combo, value


class Derivation:
    """Q-derivation of Q[table] given by the images of the variables."""

    __slots__ = ("table", "images", "name")

    def __init__(self, table: VarTable, images: Union[Mapping[str, Poly], Sequence[Poly]], name: Optional[str] = None):
        self.table = table
        if isinstance(images, Mapping):
            unknown = set(images) - set(table.names)
            if unknown:
                raise KeyError(f"images for unknown variables {sorted(unknown)}")
            imgs = tuple(images.get(n, Poly.zero(table)) for n in table.names)
        else:
            imgs = tuple(images)
            if len(imgs) != len(table):
                raise ValueError("one image per variable is required")
        for p in imgs:
            if p.table != table:
                raise VarTableMismatch("derivation image over another table")
        self.images = imgs
        self.name = name

    @classmethod
    def partial(cls, table: VarTable, var: str, name: Optional[str] = None) -> "Derivation":
        return cls(table, {var: Poly.const(table, 1)}, name)

    @classmethod
    def zero(cls, table: VarTable) -> "Derivation":
        return cls(table, {})

    def image(self, var: str) -> Poly:
        return self.images[self.table.index(var)]

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.images)

    def __call__(self, f: Poly) -> Poly:
        return apply(self, f)

    def __neg__(self) -> "Derivation":
        return Derivation(self.table, [-p for p in self.images])

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.table, [a + b for a, b in zip(self.images, other.images)])

    def scale(self, c: Union[int, Fraction, Poly]) -> "Derivation":
        return Derivation(self.table, [p * c for p in self.images])

    def __eq__(self, other) -> bool:
        return isinstance(other, Derivation) and self.table == other.table and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.table, self.images))

    def __repr__(self) -> str:
        body = ", ".join(f"{n} -> {p}" for n, p in zip(self.table.names, self.images) if p)
        return f"Derivation({body or '0'})"


def apply(D: Derivation, f: Poly) -> Poly:
    """D(f) by the Leibniz rule: sum over variables of D(x_i) * df/dx_i."""
    if f.table != D.table:
        raise VarTableMismatch("derivation and polynomial over different tables")
    out = Poly.zero(f.table)
    for i, img in enumerate(D.images):
        if img:
            d = f.diff(i)
            if d:
                out = out + d * img
    return out


def apply_ratfunc(D: Derivation, f: RatFunc) -> RatFunc:
    """Extension to the fraction field: D(u/v) = (D(u) v - u D(v)) / v^2."""
    u, v = f.num, f.den
    if v.is_constant():
        return RatFunc(apply(D, u).scale(1 / v.constant_value()))
    return RatFunc(apply(D, u) * v - u * apply(D, v), v * v)


def iterate(D: Derivation, f: Poly, n: int) -> Poly:
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    for _ in range(n):
        if f.is_zero():
            break
        f = apply(D, f)
    return f


def nilpotency_index(D: Derivation, f: Poly, bound: int = DEFAULT_ITER_BOUND) -> Optional[int]:
    """Least n with D^n(f) = 0 (0 for f = 0), or None if it exceeds ``bound``."""
    n = 0
    while f:
        if n >= bound:
            return None
        f = apply(D, f)
        n += 1
    return n


def orbit(D: Derivation, f: Poly, bound: int = DEFAULT_ITER_BOUND) -> List[Poly]:
    """[f, D(f), D^2(f), ...] up to the last nonzero term."""
    out = []
    while f:
        if len(out) >= bound:
            raise NotLocallyNilpotentError(f"D^{bound}({out[0]}) != 0")
        out.append(f)
        f = apply(D, f)
    return out


# --- stability and local nilpotency ----------------------------------------

@dataclass(frozen=True)
class Stability:
    """``stable`` with membership expressions for each D(g_i), or the first
    generator whose image leaves the algebra."""

    stable: bool
    witnesses: Tuple[Membership, ...] = ()
    counterexample: Optional[Poly] = None

    def __bool__(self) -> bool:
        return self.stable


def check_stability(D: Derivation, B: Algebra) -> Stability:
    if D.table != B.table:
        raise VarTableMismatch("derivation and algebra over different tables")
    witnesses = []
    for g in B.generators:
        m = subalgebra_membership(apply(D, g), B.generators)
        if not m.member:
            return Stability(False, tuple(witnesses), g)
        witnesses.append(m)
    return Stability(True, tuple(witnesses))


@dataclass(frozen=True)
class LndStatus:
    """Local nilpotency verdict for a stable derivation on an algebra.

    ``indices[i]`` is the least n with D^n(g_i) = 0. When some generator did
    not reach zero within ``bound`` applications the verdict is inconclusive.
    """

    stability: Stability
    nilpotent: bool
    indices: Tuple[int, ...] = ()
    bound: int = DEFAULT_ITER_BOUND

    @property
    def inconclusive(self) -> bool:
        return not self.nilpotent


def check_lnd(D: Derivation, B: Algebra, iter_bound: int = DEFAULT_ITER_BOUND) -> LndStatus:
    """Decide local nilpotency of D restricted to B.

    D stable on B and nilpotent on every generator implies D is locally
    nilpotent on B, because the elements killed by a power of D form a
    subalgebra. Failure to reach zero within the bound is reported as
    inconclusive, never as a negative answer.
    """
    st = check_stability(D, B)
    if not st.stable:
        raise UnstableDerivationError(st.counterexample, apply(D, st.counterexample))
    indices = []
    for g in B.generators:
        k = nilpotency_index(D, g, iter_bound)
        if k is None:
            return LndStatus(st, False, tuple(indices), iter_bound)
        indices.append(k)
    return LndStatus(st, True, tuple(indices), iter_bound)


def _variable_indices(D: Derivation, iter_bound: int) -> Optional[List[int]]:
    out = []
    for n in D.table.names:
        k = nilpotency_index(D, Poly.var(D.table, n), iter_bound)
        if k is None:
            return None
        out.append(k)
    return out


def is_ambient_lnd(D: Derivation, iter_bound: int = DEFAULT_ITER_BOUND) -> bool:
    """Locally nilpotent on the whole polynomial ring (checked on the variables)."""
    return _variable_indices(D, iter_bound) is not None


def _index_bound(indices: Sequence[int], f: Poly) -> int:
    # index(gh) <= index(g) + index(h) - 1
    return 1 + max((sum(k * (n - 1) for k, n in zip(e, indices)) for e in f.terms), default=0)


# --- exponentials and conjugation ------------------------------------------

def exp_map(D: Derivation, f: Poly, iter_bound: int = DEFAULT_ITER_BOUND) -> Poly:
    """exp(D)(f) = sum_n D^n(f) / n!  (a finite sum for locally nilpotent D)."""
    indices = _variable_indices(D, iter_bound)
    if indices is None:
        raise NotLocallyNilpotentError("exp(D) needs D locally nilpotent on the variables")
    out = Poly.zero(f.table)
    for n, term in enumerate(orbit(D, f, _index_bound(indices, f))):
        out = out + term.scale(Fraction(1, factorial(n)))
    return out


def conjugate(D: Derivation, E: Derivation, iter_bound: int = DEFAULT_ITER_BOUND) -> Derivation:
    """exp(E) o D o exp(-E), computed on each variable."""
    if E.table != D.table:
        raise VarTableMismatch("derivations over different tables")
    images = []
    minus = -E
    for n in D.table.names:
        x = Poly.var(D.table, n)
        images.append(exp_map(E, apply(D, exp_map(minus, x, iter_bound)), iter_bound))
    return Derivation(D.table, images)


# --- local slices and the Dixmier map --------------------------------------

@dataclass(frozen=True)
class LocalSlice:
    s: Poly
    a: Poly
    word: Tuple[int, ...] = ()


def find_local_slice(D: Derivation, B: Algebra, search_degree: int = 3,
                     iter_bound: int = DEFAULT_ITER_BOUND) -> Optional[LocalSlice]:
    """Search s in B with D(s) != 0 and D^2(s) = 0.

    Generator words are visited by increasing length. A word w with
    nilpotency index n >= 2 yields the slice D^(n-2)(w), which lies in B
    because D is stable. Within one length the candidate with the largest
    D(s) in grevlex order wins.
    """
    for length in range(search_degree + 1):
        found: List[LocalSlice] = []
        for combo, w in B.words(length):
            chain = orbit(D, w, iter_bound)
            if len(chain) < 2:
                continue
            s, a = chain[-2], chain[-1]
            found.append(LocalSlice(s, a, combo))
        if found:
            return max(found, key=lambda c: [grevlex_key(e) for e, _ in c.a.sorted_terms()])
    return None


def _dixmier_projection(D: Derivation, f: Poly, sigma: RatFunc) -> RatFunc:
    total = RatFunc.from_poly(Poly.zero(f.table))
    power = RatFunc.from_poly(Poly.const(f.table, 1))
    for k, term in enumerate(orbit(D, f, 10 ** 6)):
        c = Fraction((-1) ** k, factorial(k))
        total = total + power * RatFunc.from_poly(term.scale(c))
        power = power * sigma
    return total


def dixmier_decompose(D: Derivation, s: Poly, b: Poly) -> List[RatFunc]:
    """Coefficients c_n with b = sum c_n sigma^n, sigma = s / D(s), D(c_n) = 0.

    c_n = pi(D^n(b)) / n! where pi(f) = sum_k (-1)^k D^k(f) sigma^k / k!.
    """
    a = apply(D, s)
    if a.is_zero() or not apply(D, a).is_zero():
        raise ValueError(f"{s} is not a local slice: D(s) = {a}")
    indices = _variable_indices(D, DEFAULT_ITER_BOUND)
    if indices is None:
        raise NotLocallyNilpotentError("Dixmier map needs a locally nilpotent derivation")
    sigma = RatFunc(s, a)
    coeffs = []
    for n, term in enumerate(orbit(D, b, _index_bound(indices, b))):
        coeffs.append(_dixmier_projection(D, term, sigma) * RatFunc.from_poly(Poly.const(b.table, Fraction(1, factorial(n)))))
    if not coeffs:
        coeffs.append(RatFunc.from_poly(b))
    return coeffs


def reconstruct(coeffs: Sequence[RatFunc], s: Poly, a: Poly) -> RatFunc:
    """sum c_n (s/a)^n."""
    sigma = RatFunc(s, a)
    total = RatFunc.from_poly(Poly.zero(s.table))
    power = RatFunc.from_poly(Poly.const(s.table, 1))
    for c in coeffs:
        total = total + c * power
        power = power * sigma
    return total
