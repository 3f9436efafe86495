"""Degree-bounded kernels, Makar-Limanov windows, plinth ideals, LND-rank
witnesses and chain certificates.

Every computation here works inside a finite window: ambient total degree
``d`` for kernel spaces, generator word length ``L`` for subalgebra spans.
Results certify statements about the window only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .derivation import (
    DEFAULT_ITER_BOUND,
    Algebra,
    Derivation,
    NotLocallyNilpotentError,
    apply,
    check_lnd,
)
from .grobner import Membership, buchberger, normal_form, subalgebra_membership
from .linalg import MonomialIndex, Vector, canonical_basis, combine, nullspace
from .poly import Poly, VarTable, VarTableMismatch, exact_quotient, grevlex_key, monomials_up_to


@dataclass(frozen=True)
class TruncationSpec:
    degree: int = 6
    word_length: int = 4

    def __post_init__(self) -> None:
        if self.degree < 0 or self.word_length < 0:
            raise ValueError("truncation bounds must be non-negative")


@dataclass(frozen=True)
class KernelBasis:
    derivations: Tuple[Derivation, ...]
    spec: TruncationSpec
    basis: Tuple[Poly, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def window_monomials(table: VarTable, degree: int) -> List[Poly]:
    return [Poly.monomial(table, e) for e in monomials_up_to(len(table), degree)]


def _common_kernel(polys: Sequence[Poly], derivations: Sequence[Derivation], table: VarTable) -> List[Poly]:
    """Canonical basis of the elements of span(polys) killed by every derivation."""
    if not polys:
        return []
    if not derivations:
        return canonical_basis(list(polys), table)
    images = [[apply(D, p) for p in polys] for D in derivations]
    idx = MonomialIndex.of(q for row in images for q in row)
    width = len(idx.monomials)
    columns: List[Vector] = []
    for j in range(len(polys)):
        col: Vector = {}
        for k, row in enumerate(images):
            for c, x in idx.vector(row[j]).items():
                col[k * width + c] = x
        columns.append(col)
    sols = nullspace(columns)
    return canonical_basis([combine(v, polys, table) for v in sols], table)


def kernel_intersection_bounded(derivations: Sequence[Derivation], spec: TruncationSpec,
                                table: Optional[VarTable] = None) -> KernelBasis:
    """Q-basis of {f : deg f <= d, D(f) = 0 for all D}; the empty set gives the window."""
    derivations = tuple(derivations)
    if table is None:
        if not derivations:
            raise ValueError("a variable table is required when no derivation is given")
        table = derivations[0].table
    for D in derivations:
        if D.table != table:
            raise VarTableMismatch("derivations over different tables")
    basis = _common_kernel(window_monomials(table, spec.degree), derivations, table)
    return KernelBasis(derivations, spec, tuple(basis))


def kernel_basis_bounded(D: Derivation, spec: TruncationSpec) -> KernelBasis:
    return kernel_intersection_bounded((D,), spec, D.table)


# --- subalgebra windows and ML certificates --------------------------------

@dataclass(frozen=True)
class Window:
    """Products of at most ``word_length`` generators and a Q-basis of their span."""

    algebra: Algebra
    word_length: int
    words: Tuple[Poly, ...]
    basis: Tuple[Poly, ...]


def subalgebra_window(B: Algebra, L: int) -> Window:
    words: List[Poly] = []
    for length in range(L + 1):
        words.extend(w for _, w in B.words(length))
    return Window(B, L, tuple(words), tuple(canonical_basis(words, B.table)))


@dataclass(frozen=True)
class MLCertificate:
    """Window form of a Makar-Limanov computation.

    ``constants_only`` means: inside the span of generator words of length
    at most ``word_length``, the only elements killed by every derivation
    are the constants. It makes no claim beyond the window.
    """

    algebra: Algebra
    derivations: Tuple[Derivation, ...]
    word_length: int
    window_dimension: int
    kernel: Tuple[Poly, ...]
    lnd_indices: Tuple[Tuple[int, ...], ...]

    @property
    def constants_only(self) -> bool:
        return len(self.kernel) == 1 and self.kernel[0] == 1

    @property
    def outcome(self) -> str:
        return "constants_only" if self.constants_only else "extra_elements"

    @property
    def extra_elements(self) -> Tuple[Poly, ...]:
        return tuple(p for p in self.kernel if not p.is_constant())


def ml_certificate(B: Algebra, derivations: Sequence[Derivation], L: int,
                   iter_bound: int = DEFAULT_ITER_BOUND) -> MLCertificate:
    """Intersect the word-length-``L`` window of B with the kernels of ``derivations``.

    Each derivation is first certified stable and locally nilpotent on B.
    """
    derivations = tuple(derivations)
    indices = []
    for D in derivations:
        status = check_lnd(D, B, iter_bound)  # raises on unstable input
        if not status.nilpotent:
            raise NotLocallyNilpotentError(
                f"local nilpotency of {D.name or D} on B not reached within {iter_bound} steps")
        indices.append(status.indices)
    window = subalgebra_window(B, L)
    kernel = _common_kernel(list(window.basis), derivations, B.table)
    return MLCertificate(B, derivations, L, len(window.basis), tuple(kernel), tuple(indices))


# --- plinth ideals and tightness --------------------------------------------

@dataclass(frozen=True)
class PlinthBasis:
    """Basis of D(window) intersected with ker D, for the degree-``d`` window."""

    derivation: Derivation
    spec: TruncationSpec
    basis: Tuple[Poly, ...]


def plinth_bounded(D: Derivation, spec: TruncationSpec) -> PlinthBasis:
    window = window_monomials(D.table, spec.degree)
    image = canonical_basis([apply(D, m) for m in window], D.table)
    return PlinthBasis(D, spec, tuple(_common_kernel(image, (D,), D.table)))


@dataclass(frozen=True)
class Tightness:
    """``tight`` when D(m) lies in the ideal generated by the plinth window for
    every window monomial m; otherwise ``violation`` is the first failing m."""

    plinth: PlinthBasis
    tight: bool
    violation: Optional[Poly] = None

    @property
    def outcome(self) -> str:
        return "tight_within_window" if self.tight else "violation"


def tightness_check(D: Derivation, spec: TruncationSpec) -> Tightness:
    pl = plinth_bounded(D, spec)
    gb = buchberger(pl.basis)
    for m in window_monomials(D.table, spec.degree):
        if not normal_form(apply(D, m), gb).is_zero():
            return Tightness(pl, False, m)
    return Tightness(pl, True)


# --- LND-rank ---------------------------------------------------------------

def poly_det(matrix: Sequence[Sequence[Poly]], table: VarTable) -> Poly:
    """Determinant by fraction-free (Bareiss) elimination with exact division."""
    n = len(matrix)
    if n == 0:
        return Poly.const(table, 1)
    m = [list(row) for row in matrix]
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = Poly.const(table, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return Poly.zero(table)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                q = exact_quotient(num, prev)
                assert q is not None, "Bareiss division must be exact"
                m[i][j] = q
            m[i][k] = Poly.zero(table)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def poly_rank(columns: Sequence[Sequence[Poly]], table: VarTable) -> int:
    """Rank over the fraction field of a matrix given by its columns."""
    if not columns:
        return 0
    rows = [list(r) for r in zip(*columns)]
    nrows, ncols = len(rows), len(columns)
    r = 0
    prev = Poly.const(table, 1)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                q = exact_quotient(rows[i][j] * rows[r][c] - rows[i][c] * rows[r][j], prev)
                assert q is not None
                rows[i][j] = q
            rows[i][c] = Poly.zero(table)
        prev = rows[r][c]
        r += 1
        if r == nrows:
            break
    return r


@dataclass(frozen=True)
class RankWitness:
    """det(D_i(b_j)) != 0, certifying n in S_r (or S_f) and lndrk >= n."""

    derivations: Tuple[Derivation, ...]
    elements: Tuple[Poly, ...]
    matrix: Tuple[Tuple[Poly, ...], ...]
    determinant: Poly

    @property
    def rank(self) -> int:
        return len(self.elements)


class RankWitnessFailure(ValueError):
    """The determinant vanished."""


def rank_witness(derivations: Sequence[Derivation], elements: Sequence[Poly]) -> RankWitness:
    derivations, elements = tuple(derivations), tuple(elements)
    if len(derivations) != len(elements):
        raise ValueError(f"{len(derivations)} derivations but {len(elements)} elements")
    if not derivations:
        raise ValueError("empty rank witness")
    table = derivations[0].table
    matrix = tuple(tuple(apply(D, b) for b in elements) for D in derivations)
    det = poly_det(matrix, table)
    if det.is_zero():
        raise RankWitnessFailure("det(D_i(b_j)) = 0")
    return RankWitness(derivations, elements, matrix, det)


def _candidates(table: VarTable, cap: int, algebra: Optional[Algebra]):
    if algebra is None:
        for d in range(1, cap + 1):
            mons = sorted((e for e in monomials_up_to(len(table), d) if sum(e) == d),
                          key=grevlex_key, reverse=True)
            for e in mons:
                yield Poly.monomial(table, e)
    else:
        for length in range(1, cap + 1):
            for _, w in algebra.words(length):
                yield w


def find_rank_witness(derivations: Sequence[Derivation], degree_cap: int,
                      algebra: Optional[Algebra] = None) -> Optional[RankWitness]:
    """Greedy search for b_1..b_n with det(D_i(b_j)) != 0.

    Candidates are ambient monomials by degree (largest first within a
    degree) or, when ``algebra`` is given, its generator words by length.
    A candidate is kept when it raises the rank of the column matrix
    (D_i(b)); the search stops once the rank equals the number of
    derivations. Returns None when it never does.
    """
    derivations = tuple(derivations)
    if not derivations:
        return None
    table = derivations[0].table
    n = len(derivations)
    chosen: List[Poly] = []
    columns: List[List[Poly]] = []
    for b in _candidates(table, degree_cap, algebra):
        col = [apply(D, b) for D in derivations]
        if all(c.is_zero() for c in col):
            continue
        if poly_rank(columns + [col], table) > len(columns):
            chosen.append(b)
            columns.append(col)
            if len(chosen) == n:
                return rank_witness(derivations, chosen)
    return None


# --- chains in the poset of kernel intersections ---------------------------

class ChainError(ValueError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"chain level {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass(frozen=True)
class ChainLevel:
    algebra: Algebra
    derivations: Tuple[Derivation, ...]


@dataclass(frozen=True)
class ChainCertificate:
    """Verified strict chain A_0 < A_1 < ... < A_n, each A_i inside the common
    kernel of its derivation set; n is a lower bound for the poset height."""

    levels: Tuple[ChainLevel, ...]
    witnesses: Tuple[Poly, ...]
    inclusion_witnesses: Tuple[Tuple[Membership, ...], ...]
    strictness_witnesses: Tuple[Membership, ...]

    @property
    def length(self) -> int:
        return len(self.levels) - 1


def chain_certificate(levels: Sequence[Union[ChainLevel, Tuple[Algebra, Sequence[Derivation]]]],
                      witnesses: Sequence[Poly]) -> ChainCertificate:
    """Verify a chain; ``witnesses[i-1]`` must lie in A_i but not in A_{i-1}."""
    levels = tuple(lv if isinstance(lv, ChainLevel) else ChainLevel(lv[0], tuple(lv[1])) for lv in levels)
    witnesses = tuple(witnesses)
    if not levels:
        raise ChainError(0, "empty chain")
    if len(witnesses) != len(levels) - 1:
        raise ChainError(len(levels) - 1, f"expected {len(levels) - 1} witnesses, got {len(witnesses)}")
    table = levels[0].algebra.table
    for i, lv in enumerate(levels):
        if lv.algebra.table != table:
            raise ChainError(i, "algebra over a different variable table")
        for D in lv.derivations:
            for g in lv.algebra.generators:
                if not apply(D, g).is_zero():
                    raise ChainError(i, f"generator {g} is not killed by {D.name or D}")
    inclusions = []
    strict = []
    for i in range(1, len(levels)):
        lower, upper = levels[i - 1].algebra, levels[i].algebra
        incl = []
        for g in lower.generators:
            m = subalgebra_membership(g, upper)
            if not m.member:
                raise ChainError(i, f"generator {g} of level {i - 1} is not in level {i}")
            incl.append(m)
        inclusions.append(tuple(incl))
        w = witnesses[i - 1]
        m = subalgebra_membership(w, upper)
        if not m.member:
            raise ChainError(i, f"witness {w} is not in level {i}")
        if subalgebra_membership(w, lower).member:
            raise ChainError(i, f"witness {w} already lies in level {i - 1}")
        strict.append(m)
    return ChainCertificate(levels, witnesses, tuple(inclusions), tuple(strict))
