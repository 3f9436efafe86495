"""Line-oriented model language: tokenizer, recursive-descent parser, printer.

Example::

    vars { params: t; main: x, y; }
    algebra B { gens: x, y, t*x, t*y; }
    derivation D1 { x -> y; y -> 0; t -> 0; }
    check ml { algebra: B; derivations: D1; word_length: 4; expect: constants_only; }

Polynomials use ``+ - * / ^`` and parentheses; ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .model import CHECK_KINDS, FIELD_TYPES, CheckSpec, Model, ModelError
from .poly import Poly, RatFunc, VarTable
from .valuation import BaseValuation, ValuationError


class DSLSyntaxError(ModelError):
    """Syntax or name-resolution error with a 1-based line/column."""


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, OP, EOF
    text: str
    line: int
    column: int


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<NAME>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<INT>[0-9]+)
  | (?P<OP>->|[{}();:,+\-*/^=])
""", re.X)


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, text: str, table: Optional[VarTable] = None):
        self.tokens = tokenize(text)
        self.i = 0
        self.table = table

    # --- token helpers ----------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Optional[Token] = None) -> DSLSyntaxError:
        tok = tok or self.tok
        return DSLSyntaxError(message, tok.line, tok.column)

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("OP", "NAME")

    def take(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.take()

    def name(self) -> Token:
        if self.tok.kind != "NAME":
            raise self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        return self.take()

    def integer(self) -> int:
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        if self.tok.kind != "INT":
            raise self.error(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        return sign * int(self.take().text)

    def need_table(self) -> VarTable:
        if self.table is None:
            raise self.error("variables must be declared (vars { ... }) before use")
        return self.table

    # --- expressions ------------------------------------------------------
    def expr(self) -> RatFunc:
        value = self.term()
        while self.at("+") or self.at("-"):
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.unary()
        while self.at("*") or self.at("/"):
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise self.error("division by zero", op)
                value = value / rhs
        return value

    def unary(self) -> RatFunc:
        if self.at("-"):
            self.take()
            return -self.unary()
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.at("^"):
            op = self.take()
            n = self.integer()
            if n < 0 and base.is_zero():
                raise self.error("negative power of zero", op)
            base = base ** n
        return base

    def atom(self) -> RatFunc:
        table = self.need_table()
        tok = self.tok
        if tok.kind == "INT":
            self.take()
            return RatFunc.from_poly(Poly.const(table, int(tok.text)))
        if tok.kind == "NAME":
            self.take()
            if tok.text not in table.names:
                raise self.error(f"unknown variable {tok.text!r}", tok)
            return RatFunc.from_poly(Poly.var(table, tok.text))
        if self.at("("):
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        raise self.error(f"expected an expression, found {tok.text or 'end of input'!r}")

    def poly(self) -> Poly:
        tok = self.tok
        value = self.expr()
        if not value.is_poly():
            raise self.error(f"{value} is not a polynomial", tok)
        return value.to_poly()

    def poly_list(self) -> Tuple[Poly, ...]:
        out = []
        if self.at(";"):
            return ()
        out.append(self.poly())
        while self.at(","):
            self.take()
            out.append(self.poly())
        return tuple(out)

    def name_list(self, closers=(";",)) -> Tuple[str, ...]:
        out: List[str] = []
        if any(self.at(c) for c in closers):
            return ()
        out.append(self.name().text)
        while self.at(","):
            self.take()
            out.append(self.name().text)
        return tuple(out)

    # --- model ------------------------------------------------------------
    def model(self) -> Model:
        m: Optional[Model] = None
        while self.tok.kind != "EOF":
            tok = self.tok
            if self.at("vars"):
                if m is not None:
                    raise self.error("variables already declared", tok)
                self.table = self.vars_block()
                m = Model(self.table)
            elif self.at("use"):
                m = self.use_stmt(m)
            elif self.at("algebra"):
                self.algebra_block(self.require_model(m, tok))
            elif self.at("derivation"):
                self.derivation_block(self.require_model(m, tok))
            elif self.at("check"):
                self.check_block(self.require_model(m, tok))
            else:
                raise self.error(f"expected vars, use, algebra, derivation or check; found {tok.text!r}")
        if m is None:
            raise self.error("empty model: no variables declared")
        return m

    def require_model(self, m: Optional[Model], tok: Token) -> Model:
        if m is None:
            raise self.error("variables must be declared before this block", tok)
        return m

    def vars_block(self) -> VarTable:
        self.expect("vars")
        self.expect("{")
        params: Tuple[str, ...] = ()
        mains: Tuple[str, ...] = ()
        while not self.at("}"):
            key = self.name()
            self.expect(":")
            names = self.name_list()
            self.expect(";")
            if key.text == "params":
                params += names
            elif key.text == "main":
                mains += names
            else:
                raise self.error(f"unknown vars field {key.text!r}", key)
        close = self.expect("}")
        try:
            return VarTable(params + mains, params)
        except ValueError as exc:
            raise self.error(str(exc), close) from None

    def use_stmt(self, m: Optional[Model]) -> Model:
        from . import catalog  # catalog builds on the parser

        start = self.expect("use")
        entry = self.name()
        args: Dict[str, int] = {}
        if self.at("("):
            self.take()
            while not self.at(")"):
                key = self.name().text
                self.expect("=")
                args[key] = self.integer()
                if not self.at(")"):
                    self.expect(",")
            self.expect(")")
        self.expect(";")
        try:
            sub = catalog.build(entry.text, **args).model
        except (KeyError, TypeError, ValueError) as exc:
            raise self.error(f"cannot expand catalog entry {entry.text!r}: {exc}", entry) from None
        if m is None:
            self.table = sub.table
            return sub
        m.merge(sub, start.line, start.column)
        return m

    def algebra_block(self, m: Model) -> None:
        self.expect("algebra")
        name = self.name()
        self.expect("{")
        gens: Tuple[Poly, ...] = ()
        while not self.at("}"):
            key = self.name()
            self.expect(":")
            if key.text != "gens":
                raise self.error(f"unknown algebra field {key.text!r}", key)
            gens = self.poly_list()
            self.expect(";")
        self.expect("}")
        if any(g.is_zero() for g in gens):
            raise self.error("algebra generators must be nonzero", name)
        m.add_algebra(name.text, gens, name.line, name.column)

    def derivation_block(self, m: Model) -> None:
        self.expect("derivation")
        name = self.name()
        self.expect("{")
        images: Dict[str, Poly] = {}
        while not self.at("}"):
            var = self.name()
            if var.text not in m.table.names:
                raise self.error(f"unknown variable {var.text!r}", var)
            if var.text in images:
                raise self.error(f"image of {var.text!r} given twice", var)
            self.expect("->")
            images[var.text] = self.poly()
            self.expect(";")
        self.expect("}")
        m.add_derivation(name.text, images, name.line, name.column)

    def check_block(self, m: Model) -> None:
        self.expect("check")
        kind = self.name()
        if kind.text not in CHECK_KINDS:
            raise self.error(f"unknown check kind {kind.text!r}", kind)
        if self.tok.kind == "NAME":
            name = self.take().text
        else:
            name = default_check_name(m.checks, kind.text)
        self.expect("{")
        fields = {}
        while not self.at("}"):
            key = self.name()
            if key.text not in FIELD_TYPES:
                raise self.error(f"unknown check field {key.text!r}", key)
            if key.text in fields:
                raise self.error(f"field {key.text!r} given twice", key)
            self.expect(":")
            fields[key.text] = self.field_value(FIELD_TYPES[key.text], m, key)
            self.expect(";")
        self.expect("}")
        m.add_check(CheckSpec(kind.text, name, fields), kind.line, kind.column)

    def field_value(self, typ: str, m: Model, key: Token):
        if typ == "name":
            tok = self.name()
            self.resolve(m, tok, key.text)
            return tok.text
        if typ == "word":
            return self.name().text
        if typ == "int":
            return self.integer()
        if typ == "names":
            start = self.tok
            names = self.name_list()
            for n in names:
                self.resolve(m, Token("NAME", n, start.line, start.column), key.text)
            return names
        if typ == "name_groups":
            groups = []
            while True:
                self.expect("(")
                start = self.tok
                g = self.name_list(closers=(")",))
                for n in g:
                    self.resolve(m, Token("NAME", n, start.line, start.column), "derivations")
                self.expect(")")
                groups.append(g)
                if not self.at(","):
                    break
                self.take()
            return tuple(groups)
        if typ == "polys":
            return self.poly_list()
        if typ == "poly":
            return self.poly()
        if typ == "ratfunc":
            return self.expr()
        if typ == "valuation":
            return self.valuation()
        if typ == "weights":
            out = []
            while True:
                var = self.name()
                if var.text not in m.table.names:
                    raise self.error(f"unknown variable {var.text!r}", var)
                self.expect("=")
                out.append((var.text, self.integer()))
                if not self.at(","):
                    break
                self.take()
            return tuple(out)
        raise AssertionError(typ)

    def resolve(self, m: Model, tok: Token, key: str) -> None:
        pool = m.algebras if key in ("algebra", "algebras") else m.derivations
        if tok.text not in pool:
            what = "algebra" if pool is m.algebras else "derivation"
            raise self.error(f"unknown {what} {tok.text!r}", tok)

    def valuation(self) -> BaseValuation:
        table = self.need_table()
        kind = self.name()
        try:
            if kind.text == "trivial":
                v = BaseValuation.trivial()
            elif kind.text == "order_at_infinity":
                self.expect("(")
                v = BaseValuation.at_infinity(self.name().text)
                self.expect(")")
            elif kind.text == "order_at_value":
                self.expect("(")
                par = self.name().text
                self.expect(",")
                c = Fraction(self.integer())
                if self.at("/"):
                    self.take()
                    c /= self.integer()
                self.expect(")")
                v = BaseValuation.at_value(par, c)
            elif kind.text == "order_at_irreducible":
                self.expect("(")
                p = self.poly()
                self.expect(")")
                v = BaseValuation.at_irreducible(p)
            else:
                raise self.error(f"unknown valuation {kind.text!r}", kind)
            v.validate(table)
        except ValuationError as exc:
            raise self.error(str(exc), kind) from None
        return v


def default_check_name(existing, kind: str) -> str:
    taken = {c.name for c in existing}
    if kind not in taken:
        return kind
    k = 2
    while f"{kind}_{k}" in taken:
        k += 1
    return f"{kind}_{k}"


def parse_model(text: str) -> Model:
    p = Parser(text)
    try:
        return p.model()
    except ModelError as exc:
        if isinstance(exc, DSLSyntaxError) or exc.line is not None:
            raise
        tok = p.tok
        raise DSLSyntaxError(str(exc), tok.line, tok.column) from None


def _parse_with(text: str, table: VarTable, method: str):
    p = Parser(text, table)
    value = getattr(p, method)()
    if p.tok.kind != "EOF":
        raise p.error(f"unexpected {p.tok.text!r}")
    return value


def parse_polynomial(text: str, table: VarTable) -> Poly:
    return _parse_with(text, table, "poly")


def parse_ratfunc(text: str, table: VarTable) -> RatFunc:
    return _parse_with(text, table, "expr")


# --- printing ---------------------------------------------------------------

def format_value(typ: str, value) -> str:
    if typ in ("name", "word"):
        return value
    if typ == "int":
        return str(value)
    if typ == "names":
        return ", ".join(value)
    if typ == "name_groups":
        return ", ".join("(" + ", ".join(g) + ")" for g in value)
    if typ == "polys":
        return ", ".join(str(p) for p in value)
    if typ in ("poly", "ratfunc", "valuation"):
        return str(value)
    if typ == "weights":
        return ", ".join(f"{n}={w}" for n, w in value)
    raise AssertionError(typ)


def print_model(m: Model) -> str:
    t = m.table
    lines = [f"vars {{ params: {', '.join(t.params)}; main: {', '.join(t.mains)}; }}", ""]
    for name, a in m.algebras.items():
        lines.append(f"algebra {name} {{ gens: {', '.join(str(g) for g in a.generators)}; }}")
    if m.algebras:
        lines.append("")
    for name, d in m.derivations.items():
        body = " ".join(f"{v} -> {p};" for v, p in zip(t.names, d.images))
        lines.append(f"derivation {name} {{ {body} }}")
    if m.derivations:
        lines.append("")
    seen: List[CheckSpec] = []
    for c in m.checks:
        label = "" if c.name == default_check_name(seen, c.kind) else f" {c.name}"
        body = " ".join(f"{k}: {format_value(FIELD_TYPES[k], v)};" for k, v in c.fields.items())
        lines.append(f"check {c.kind}{label} {{ {body} }}")
        seen.append(c)
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"
