"""Exact sparse multivariate polynomials and rational functions over Q.

Coefficients are :class:`fractions.Fraction`. A :class:`Poly` maps exponent
tuples to nonzero coefficients over a fixed :class:`VarTable`; parameter
variables (the ones that generate the coefficient field ``K``) live in the
same table as the main variables, so one representation serves everything.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Rat = Fraction
Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


class VarTableMismatch(ValueError):
    """Raised when two objects over different variable tables are combined."""


@dataclass(frozen=True)
class VarTable:
    """Ordered variable names, split into parameter and main variables."""

    names: Tuple[str, ...]
    params: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "params", tuple(self.params))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        unknown = [p for p in self.params if p not in self.names]
        if unknown:
            raise ValueError(f"parameters {unknown} are not variables")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    @property
    def mains(self) -> Tuple[str, ...]:
        return tuple(n for n in self.names if n not in self.params)

    @property
    def main_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, n in enumerate(self.names) if n not in self.params)

    @property
    def param_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, n in enumerate(self.names) if n in self.params)

    def extend(self, extra: Sequence[str]) -> "VarTable":
        """Table with ``extra`` appended (as main variables)."""
        return VarTable(self.names + tuple(extra), self.params)


# --- monomial orders -------------------------------------------------------

def grevlex_key(e: Monomial) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e: Monomial) -> tuple:
    return e


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order: ``grevlex``, ``lex`` or ``block`` (first block greater).

    A block order compares the first ``block_size`` exponents by grevlex and
    breaks ties by grevlex on the remaining ones, so it eliminates the first
    block.
    """

    kind: str = "grevlex"
    block_size: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block_size < 0:
            raise ValueError("block size must be non-negative")

    @classmethod
    def block(cls, size: int) -> "MonomialOrder":
        return cls("block", size)

    def key(self) -> Callable[[Monomial], tuple]:
        if self.kind == "grevlex":
            return grevlex_key
        if self.kind == "lex":
            return lex_key
        k = self.block_size
        return lambda e: (grevlex_key(e[:k]), grevlex_key(e[k:]))

    def __str__(self) -> str:
        return f"block({self.block_size})" if self.kind == "block" else self.kind


GREVLEX = MonomialOrder()


def _add_exp(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _divides_exp(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Poly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: VarTable, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.table = table
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            n = len(table)
            for e, c in terms.items():
                if c:
                    if len(e) != n:
                        raise ValueError(f"exponent {e} does not match {n} variables")
                    clean[tuple(e)] = Fraction(c)
        self.terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, table: VarTable, terms: Dict[Monomial, Fraction]) -> "Poly":
        p = object.__new__(cls)
        p.table = table
        p.terms = terms
        p._hash = None
        return p

    # --- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, table: VarTable) -> "Poly":
        return cls._raw(table, {})

    @classmethod
    def const(cls, table: VarTable, c: Scalar) -> "Poly":
        return cls._raw(table, {(0,) * len(table): Fraction(c)} if c else {})

    @classmethod
    def var(cls, table: VarTable, name: str) -> "Poly":
        i = table.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(table)))
        return cls._raw(table, {e: Fraction(1)})

    @classmethod
    def monomial(cls, table: VarTable, exp: Monomial, c: Scalar = 1) -> "Poly":
        return cls._raw(table, {tuple(exp): Fraction(c)} if c else {})

    # --- basic queries --------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.table), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: Union[int, str]) -> int:
        i = var if isinstance(var, int) else self.table.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> Tuple[int, ...]:
        """Indices of the variables that actually occur."""
        used = [False] * len(self.table)
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return tuple(i for i, u in enumerate(used) if u)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> List[Tuple[Monomial, Fraction]]:
        """Terms from largest to smallest monomial."""
        key = order.key()
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> Tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key()
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def lc(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self.leading_term(order)[1]

    # --- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.table != self.table:
                raise VarTableMismatch(f"{self.table.names} vs {other.table.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.table, other)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.table, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.table, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out: Dict[Monomial, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly._raw(self.table, out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.table)
        return Poly._raw(self.table, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, exp: Monomial, c: Fraction) -> "Poly":
        return Poly._raw(self.table, {_add_exp(e, exp): v * c for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.table, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c) -> "Poly":
        if isinstance(c, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(c))
        if isinstance(c, Poly) and c.is_constant() and c:
            return self.scale(1 / c.constant_value())
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.table == other.table and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.table, frozenset(self.terms.items())))
        return self._hash

    # --- calculus and substitution -------------------------------------
    def diff(self, var: Union[int, str]) -> "Poly":
        i = var if isinstance(var, int) else self.table.index(var)
        out: Dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return Poly._raw(self.table, out)

    def substitute(self, images: Mapping[str, "Poly"], target: Optional[VarTable] = None) -> "Poly":
        """Replace variables by polynomials over ``target`` (default: own table).

        Variables not in ``images`` are kept; they must then exist in ``target``.
        """
        target = target or self.table
        subs: List["Poly"] = []
        for name in self.table.names:
            if name in images:
                subs.append(images[name])
            else:
                subs.append(Poly.var(target, name))
        result = Poly.zero(target)
        cache: Dict[Tuple[int, int], Poly] = {}
        for e, c in self.terms.items():
            term = Poly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    pw = cache.get((i, k))
                    if pw is None:
                        pw = cache[(i, k)] = subs[i] ** k
                    term = term * pw
            result = result + term
        return result

    def embed(self, target: VarTable) -> "Poly":
        """Same polynomial over a table containing all of our variables."""
        pos = [target.index(n) for n in self.table.names]
        m = len(target)
        out: Dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            ne = [0] * m
            for i, k in zip(pos, e):
                ne[i] = k
            out[tuple(ne)] = c
        return Poly._raw(target, out)

    def restrict(self, target: VarTable) -> "Poly":
        """Inverse of :meth:`embed`; fails if a dropped variable occurs."""
        keep = [self.table.index(n) for n in target.names]
        dropped = set(range(len(self.table))) - set(keep)
        out: Dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            if any(e[i] for i in dropped):
                raise ValueError(f"{self} involves variables outside {target.names}")
            out[tuple(e[i] for i in keep)] = c
        return Poly._raw(target, out)

    def coefficients_in(self, i: int) -> Dict[int, "Poly"]:
        """Coefficients with respect to variable index ``i`` (free of it)."""
        groups: Dict[int, Dict[Monomial, Fraction]] = {}
        for e, c in self.terms.items():
            groups.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: Poly._raw(self.table, t) for k, t in groups.items()}

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        vals = [Fraction(point[n]) for n in self.table.names]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v ** k
            total += t
        return total

    # --- content --------------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        den = reduce(lambda a, b: a * b // igcd(a, b), (c.denominator for c in self.terms.values()), 1)
        num = reduce(igcd, (abs(c.numerator * (den // c.denominator)) for c in self.terms.values()), 0)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer-coefficient primitive part with positive grevlex leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.lc() < 0:
            c = -c
        return self.scale(1 / c)

    # --- printing -------------------------------------------------------
    def __str__(self) -> str:
        return self.to_str()

    def to_str(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        parts: List[str] = []
        for idx, (e, c) in enumerate(self.sorted_terms(order)):
            factors = []
            for name, k in zip(self.table.names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mag = abs(c)
            body = "*".join(([_fmt_rat(mag)] if mag != 1 or not factors else []) + factors)
            if idx == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.to_str()!r})"


def _check_same(a: Poly, b: Poly) -> None:
    if a.table != b.table:
        raise VarTableMismatch(f"{a.table.names} vs {b.table.names}")


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    _check_same(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def exact_quotient(g: Poly, f: Poly) -> Optional[Poly]:
    """``g / f`` if ``f`` divides ``g`` exactly, else ``None``."""
    _check_same(f, g)
    if not f.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not g.terms:
        return g
    if f.is_constant():
        return g.scale(1 / f.constant_value())
    key = grevlex_key
    lf = max(f.terms, key=key)
    cf = f.terms[lf]
    if len(f.terms) == 1:
        out = {}
        for e, c in g.terms.items():
            if not _divides_exp(lf, e):
                return None
            out[_sub_exp(e, lf)] = c / cf
        return Poly._raw(g.table, out)
    rest = [(e, c) for e, c in f.terms.items() if e != lf]
    r = dict(g.terms)
    q: Dict[Monomial, Fraction] = {}
    while r:
        lr = max(r, key=key)
        if not _divides_exp(lf, lr):
            return None
        qe = _sub_exp(lr, lf)
        qc = r.pop(lr) / cf
        q[qe] = qc
        for e, c in rest:
            ne = _add_exp(e, qe)
            s = r.get(ne, 0) - qc * c
            if s:
                r[ne] = s
            else:
                r.pop(ne, None)
    return Poly._raw(g.table, q)


def poly_divides(f: Poly, g: Poly) -> Tuple[bool, Optional[Poly]]:
    """Whether ``f`` divides ``g``; the quotient is returned when it does."""
    if f.is_zero():
        raise ZeroDivisionError("divisibility by the zero polynomial")
    q = exact_quotient(g, f)
    return (q is not None), q


# --- gcd --------------------------------------------------------------------

def _monomial_gcd(m: Poly, p: Poly) -> Poly:
    (e,) = m.terms
    low = list(e)
    for f in p.terms:
        low = [min(x, y) for x, y in zip(low, f)]
    return Poly.monomial(m.table, tuple(low))


def _univariate(p: Poly, i: int) -> List[Poly]:
    coeffs = p.coefficients_in(i)
    deg = max(coeffs)
    zero = Poly.zero(p.table)
    return [coeffs.get(k, zero) for k in range(deg + 1)]


def _from_univariate(cs: Sequence[Poly], i: int, table: VarTable) -> Poly:
    out: Dict[Monomial, Fraction] = {}
    for k, c in enumerate(cs):
        for e, v in c.terms.items():
            out[e[:i] + (k,) + e[i + 1:]] = v
    return Poly._raw(table, out)


def _prem(a: List[Poly], b: List[Poly]) -> List[Poly]:
    """Pseudo-remainder of univariate coefficient lists (degree ascending)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        new = [c * lb for c in r]
        for k, bc in enumerate(b):
            new[k + shift] = new[k + shift] - lr * bc
        r = new
        while r and r[-1].is_zero():
            r.pop()
        e -= 1
    if e > 0 and r:
        f = lb ** e
        r = [c * f for c in r]
    return r


def _content_list(cs: Sequence[Poly]) -> Poly:
    g = Poly.zero(cs[0].table)
    for c in cs:
        if c:
            g = _gcd(g, c)
            if g.is_constant():
                return Poly.const(g.table, 1)
    return g


def _div_list(cs: Sequence[Poly], d: Poly) -> List[Poly]:
    out = []
    for c in cs:
        q = exact_quotient(c, d)
        assert q is not None, "inexact division inside gcd"
        out.append(q)
    return out


def _subresultant_gcd(a: List[Poly], b: List[Poly]) -> List[Poly]:
    """Gcd of two primitive univariate polynomials via the subresultant PRS."""
    if len(a) < len(b):
        a, b = b, a
    table = a[0].table
    g = Poly.const(table, 1)
    h = Poly.const(table, 1)
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            break
        if len(r) == 1:
            return [Poly.const(table, 1)]
        a = b
        d = g * h ** delta
        b = _div_list(r, d)
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            q = exact_quotient(g ** delta, h ** (delta - 1))
            assert q is not None
            h = q
    return _div_list(b, _content_list(b))


def _gcd(a: Poly, b: Poly) -> Poly:
    """Unnormalized gcd (up to a nonzero rational factor)."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_constant() or b.is_constant():
        return Poly.const(a.table, 1)
    if a.is_monomial():
        return _monomial_gcd(a, b)
    if b.is_monomial():
        return _monomial_gcd(b, a)
    if a.terms.keys() == b.terms.keys():
        q = exact_quotient(a, b)
        if q is not None:
            return b
    va, vb = set(a.variables()), set(b.variables())
    common = va & vb
    if not common:
        # gcd divides every coefficient with respect to a variable only one side has
        i = min(va | vb)
        side, other = (a, b) if i in va else (b, a)
        return _gcd(_content_list(_univariate(side, i)), other)
    only = sorted((va | vb) - common)
    if only:
        i = only[0]
        side, other = (a, b) if i in va else (b, a)
        return _gcd(_content_list(_univariate(side, i)), other)
    i = min(common)
    ua, ub = _univariate(a, i), _univariate(b, i)
    ca, cb = _content_list(ua), _content_list(ub)
    c = _gcd(ca, cb)
    pa, pb = _div_list(ua, ca), _div_list(ub, cb)
    g = _subresultant_gcd(pa, pb)
    return c * _from_univariate(g, i, a.table)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, primitive over Z with positive leading coefficient."""
    _check_same(a, b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    return _gcd(a, b).primitive()


# --- rational functions -----------------------------------------------------

class RatFunc:
    """Reduced fraction num/den of polynomials over one table.

    ``gcd(num, den) = 1``; both parts have integer coefficients and ``den`` is
    a positive integer times a primitive polynomial with positive grevlex
    leading coefficient, so equal fractions have identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Optional[Poly] = None, *, _reduced: bool = False):
        if den is None:
            den = Poly.const(num.table, 1)
        _check_same(num, den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den

    @property
    def table(self) -> VarTable:
        return self.num.table

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return _scaled(p, Poly.const(p.table, 1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def to_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError(f"{self} is not a polynomial")
        return self.num / self.den.constant_value()

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            _check_same(self.num, other.num)
            return other
        if isinstance(other, Poly):
            _check_same(self.num, other)
            return RatFunc.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc.from_poly(Poly.const(self.table, other))
        return NotImplemented

    def __add__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # cross-cancel first so the products stay small
        g1 = _gcd(self.num, o.den) if self.num and not o.den.is_constant() else None
        g2 = _gcd(o.num, self.den) if o.num and not self.den.is_constant() else None
        n1, d2 = self.num, o.den
        if g1 is not None and not g1.is_constant():
            n1, d2 = exact_quotient(n1, g1), exact_quotient(d2, g1)
        n2, d1 = o.num, self.den
        if g2 is not None and not g2.is_constant():
            n2, d1 = exact_quotient(n2, g2), exact_quotient(d1, g2)
        return _scaled(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num, _reduced=False)

    def __truediv__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return self.inverse() * other

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Poly, int, Fraction)):
            other = self._coerce(other)
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.is_poly():
            return str(self.to_poly())
        n = str(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


def _scaled(num: Poly, den: Poly) -> RatFunc:
    """Fix numeric content and sign of an already coprime pair.

    Both parts end up with integer coefficients; the rational factor is split
    as numerator/denominator integers, e.g. ``(2x)/(4y) -> x/(2y)``.
    """
    if num.is_zero():
        return RatFunc(num, Poly.const(num.table, 1), _reduced=True)
    pn, pd = num.primitive(), den.primitive()
    c = (num.lc() / pn.lc()) / (den.lc() / pd.lc())
    return RatFunc(pn.scale(c.numerator), pd.scale(c.denominator), _reduced=True)


def _normalize_pair(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if num.is_zero():
        return num, Poly.const(num.table, 1)
    if not den.is_constant():
        g = _gcd(num, den)
        if not g.is_constant():
            num = exact_quotient(num, g)
            den = exact_quotient(den, g)
    r = _scaled(num, den)
    return r.num, r.den


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    return RatFunc(num, den)


def monomials_up_to(nvars: int, degree: int) -> Iterator[Monomial]:
    """All exponent vectors of total degree <= ``degree``, degree ascending."""
    def rec(n: int, d: int) -> Iterator[Monomial]:
        if n == 0:
            if d == 0:
                yield ()
            return
        for k in range(d, -1, -1):
            for rest in rec(n - 1, d - k):
                yield (k,) + rest

    for d in range(degree + 1):
        yield from rec(nvars, d)
