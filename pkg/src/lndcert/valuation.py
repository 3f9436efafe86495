"""Gauss-lexicographic valuations on K(x_1, ..., x_n) and non-membership
certificates built from them.

The coefficient field K is generated by the table's parameter variables.
A base valuation of K is one of a few rank-one descriptors; its extension
sends x_i to the i-th unit vector of Z^n and is read off recursively: the
lowest power of x_1, then the value of that coefficient in K(x_2, ..., x_n).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .derivation import Algebra
from .poly import Poly, RatFunc, VarTable, exact_quotient


class ValuationError(ValueError):
    pass


@dataclass(frozen=True)
class BaseValuation:
    """``trivial``, ``order_at_value(t, c)``, ``order_at_infinity(t)`` or
    ``order_at_irreducible(p)`` with ``p`` a polynomial in the parameters."""

    kind: str
    parameter: Optional[str] = None
    value: Fraction = Fraction(0)
    irreducible: Optional[Poly] = None

    @classmethod
    def trivial(cls) -> "BaseValuation":
        return cls("trivial")

    @classmethod
    def at_value(cls, parameter: str, c: Union[int, Fraction] = 0) -> "BaseValuation":
        return cls("order_at_value", parameter, Fraction(c))

    @classmethod
    def at_infinity(cls, parameter: str) -> "BaseValuation":
        return cls("order_at_infinity", parameter)

    @classmethod
    def at_irreducible(cls, p: Poly) -> "BaseValuation":
        if p.is_constant():
            raise ValuationError("irreducible generator must be nonconstant")
        return cls("order_at_irreducible", irreducible=p)

    def validate(self, table: VarTable) -> None:
        if self.kind in ("order_at_value", "order_at_infinity"):
            if self.parameter not in table.params:
                raise ValuationError(f"{self.parameter!r} is not a parameter variable")
        elif self.kind == "order_at_irreducible":
            if self.irreducible is None or self.irreducible.table != table:
                raise ValuationError("irreducible generator over another table")
            mains = set(table.main_indices)
            if mains & set(self.irreducible.variables()):
                raise ValuationError("irreducible generator must involve parameters only")
        elif self.kind != "trivial":
            raise ValuationError(f"unknown valuation kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "trivial":
            return "trivial"
        if self.kind == "order_at_value":
            v = self.value
            c = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
            return f"order_at_value({self.parameter}, {c})"
        if self.kind == "order_at_infinity":
            return f"order_at_infinity({self.parameter})"
        return f"order_at_irreducible({self.irreducible})"


_DESCRIPTOR = re.compile(r"^\s*(\w+)\s*(?:\((.*)\))?\s*$", re.S)


def parse_valuation(text: str, table: VarTable) -> BaseValuation:
    """Parse the canonical descriptor text, e.g. ``order_at_infinity(t)``."""
    from .dsl import parse_polynomial  # local import: dsl depends on this module

    m = _DESCRIPTOR.match(text)
    if not m:
        raise ValuationError(f"bad valuation descriptor {text!r}")
    kind, args = m.group(1), m.group(2)
    if kind == "trivial" and args is None:
        v = BaseValuation.trivial()
    elif kind == "order_at_infinity" and args:
        v = BaseValuation.at_infinity(args.strip())
    elif kind == "order_at_value" and args:
        name, _, c = args.partition(",")
        v = BaseValuation.at_value(name.strip(), Fraction(c.strip() or "0"))
    elif kind == "order_at_irreducible" and args:
        v = BaseValuation.at_irreducible(parse_polynomial(args, table))
    else:
        raise ValuationError(f"bad valuation descriptor {text!r}")
    v.validate(table)
    return v


@dataclass(frozen=True, order=True)
class LexValue:
    """Element of Z^n x Z, ordered lexicographically (main part first)."""

    main: Tuple[int, ...]
    base: int

    def __add__(self, other: "LexValue") -> "LexValue":
        return LexValue(tuple(a + b for a, b in zip(self.main, other.main)), self.base + other.base)

    def __neg__(self) -> "LexValue":
        return LexValue(tuple(-a for a in self.main), -self.base)

    def __sub__(self, other: "LexValue") -> "LexValue":
        return self + (-other)

    @classmethod
    def zero(cls, n: int) -> "LexValue":
        return cls((0,) * n, 0)

    def is_nonneg(self) -> bool:
        return self >= LexValue.zero(len(self.main))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.main)) + f"|{self.base})"


def _as_ratfunc(f: Union[Poly, RatFunc]) -> RatFunc:
    return f if isinstance(f, RatFunc) else RatFunc.from_poly(f)


def _order_at_poly(f: Poly, p: Poly) -> int:
    k = 0
    while True:
        q = exact_quotient(f, p)
        if q is None:
            return k
        f, k = q, k + 1


def _poly_base_value(v: BaseValuation, f: Poly) -> int:
    if f.is_zero():
        raise ValuationError("0 has no value")
    if v.kind == "trivial":
        return 0
    if v.kind == "order_at_infinity":
        return -f.degree_in(v.parameter)
    if v.kind == "order_at_value":
        i = f.table.index(v.parameter)
        shift = Poly.var(f.table, v.parameter) + v.value
        g = f.substitute({v.parameter: shift}) if v.value else f
        return min(e[i] for e in g.terms)
    return _order_at_poly(f, v.irreducible)


def base_value(v: BaseValuation, f: Union[Poly, RatFunc]) -> int:
    """Value of a nonzero parameter-only rational function."""
    f = _as_ratfunc(f)
    if f.is_zero():
        raise ValuationError("0 has no value")
    mains = set(f.table.main_indices)
    if mains & (set(f.num.variables()) | set(f.den.variables())):
        raise ValuationError(f"{f} involves main variables")
    v.validate(f.table)
    return _poly_base_value(v, f.num) - _poly_base_value(v, f.den)


def _poly_lex_value(v: BaseValuation, f: Poly) -> LexValue:
    mains = f.table.main_indices
    exps = []
    for i in mains:
        m = min(e[i] for e in f.terms)
        exps.append(m)
        f = Poly._raw(f.table, {e: c for e, c in f.terms.items() if e[i] == m})
    # f is now the coefficient of x^exps, a polynomial in the parameters
    return LexValue(tuple(exps), _poly_base_value(v, f))


def gauss_lex_value(v: BaseValuation, f: Union[Poly, RatFunc]) -> LexValue:
    """Valuation on K(x_1..x_n) extending ``v`` with x_i -> e_i, lex ordered."""
    f = _as_ratfunc(f)
    if f.is_zero():
        raise ValuationError("0 has no value")
    v.validate(f.table)
    return _poly_lex_value(v, f.num) - _poly_lex_value(v, f.den)


@dataclass(frozen=True)
class NonnegResult:
    """Values of the generators; ``violation`` is the first negative one."""

    valuation: BaseValuation
    values: Tuple[LexValue, ...]
    violation: Optional[Poly] = None

    @property
    def all_nonneg(self) -> bool:
        return self.violation is None

    @property
    def outcome(self) -> str:
        return "all_nonneg" if self.all_nonneg else "violation"


def nonneg_certificate(B: Algebra, v: BaseValuation) -> NonnegResult:
    """Check the extended valuation is >= 0 on every generator, hence on B."""
    v.validate(B.table)
    values = []
    violation = None
    for g in B.generators:
        val = gauss_lex_value(v, g)
        values.append(val)
        if violation is None and not val.is_nonneg():
            violation = g
    return NonnegResult(v, tuple(values), violation)


@dataclass(frozen=True)
class NonMembershipCertificate:
    """One valuation that is >= 0 on B and < 0 on ``element``.

    Such a valuation is also >= 0 on the integral closure of B, so the
    element lies neither in B nor in its normalization.
    """

    element: RatFunc
    algebra: Algebra
    valuation: BaseValuation
    element_value: LexValue
    generator_values: Tuple[LexValue, ...]


def non_membership_by_valuation(alpha: Union[Poly, RatFunc], B: Algebra,
                                v: BaseValuation) -> Optional[NonMembershipCertificate]:
    """Certificate that ``alpha`` is not in B, or None (inconclusive)."""
    alpha = _as_ratfunc(alpha)
    if alpha.is_zero():
        raise ValuationError("0 has no value")
    nn = nonneg_certificate(B, v)
    value = gauss_lex_value(v, alpha)
    if not nn.all_nonneg or value.is_nonneg():
        return None
    return NonMembershipCertificate(alpha, B, v, value, nn.values)
