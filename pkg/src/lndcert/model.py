"""In-memory form of a DSL model: variables, algebras, derivations, checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .derivation import Algebra, Derivation
from .poly import Poly, RatFunc, VarTable
from .valuation import BaseValuation

FieldValue = Union[int, str, Tuple[str, ...], Tuple[Tuple[str, ...], ...], Poly, RatFunc,
                   Tuple[Poly, ...], BaseValuation, Tuple[Tuple[str, int], ...]]

# key -> value type; the parser and printer both follow this table
FIELD_TYPES: Dict[str, str] = {
    "algebra": "name",
    "derivation": "name",
    "derivations": "names",
    "algebras": "names",
    "derivation_sets": "name_groups",
    "witnesses": "polys",
    "elements": "polys",
    "element": "ratfunc",
    "determinant": "poly",
    "valuation": "valuation",
    "weights": "weights",
    "degree": "int",
    "word_length": "int",
    "iter_bound": "int",
    "cap": "int",
    "search_degree": "int",
    "dimension": "int",
    "length": "int",
    "expect": "word",
}

CHECK_KINDS = ("stability", "lnd", "membership", "kernel", "ml", "plinth", "rank",
               "chain", "valuation", "grading", "slice")


class ModelError(ValueError):
    """Semantic error in a model; ``line``/``column`` locate it when known."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        loc = f"{line}:{column}: " if line is not None else ""
        super().__init__(loc + message)
        self.line = line
        self.column = column


@dataclass
class CheckSpec:
    kind: str
    name: str
    fields: Dict[str, FieldValue] = field(default_factory=dict)

    def get(self, key: str, default=None):
        return self.fields.get(key, default)


@dataclass
class Model:
    table: VarTable
    algebras: Dict[str, Algebra] = field(default_factory=dict)
    derivations: Dict[str, Derivation] = field(default_factory=dict)
    checks: List[CheckSpec] = field(default_factory=list)

    def algebra(self, name: str) -> Algebra:
        try:
            return self.algebras[name]
        except KeyError:
            raise ModelError(f"unknown algebra {name!r}") from None

    def derivation(self, name: str) -> Derivation:
        try:
            return self.derivations[name]
        except KeyError:
            raise ModelError(f"unknown derivation {name!r}") from None

    def add_algebra(self, name: str, gens, line=None, column=None) -> None:
        if name in self.algebras or name in self.derivations:
            raise ModelError(f"duplicate name {name!r}", line, column)
        self.algebras[name] = Algebra(self.table, tuple(gens), name)

    def add_derivation(self, name: str, images: Dict[str, Poly], line=None, column=None) -> None:
        if name in self.algebras or name in self.derivations:
            raise ModelError(f"duplicate name {name!r}", line, column)
        self.derivations[name] = Derivation(self.table, images, name)

    def add_check(self, check: CheckSpec, line=None, column=None) -> None:
        if any(c.name == check.name for c in self.checks):
            raise ModelError(f"duplicate check name {check.name!r}", line, column)
        self.checks.append(check)

    def merge(self, other: "Model", line=None, column=None) -> None:
        if other.table != self.table:
            raise ModelError(
                f"variables {other.table.names} (params {other.table.params}) do not match "
                f"{self.table.names} (params {self.table.params})", line, column)
        for name, a in other.algebras.items():
            self.add_algebra(name, a.generators, line, column)
        for name, d in other.derivations.items():
            self.add_derivation(name, dict(zip(d.table.names, d.images)), line, column)
        for c in other.checks:
            self.add_check(CheckSpec(c.kind, c.name, dict(c.fields)), line, column)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Model):
            return NotImplemented
        return (self.table == other.table
                and list(self.algebras.items()) == list(other.algebras.items())
                and [(n, d.images) for n, d in self.derivations.items()]
                == [(n, d.images) for n, d in other.derivations.items()]
                and self.checks == other.checks)
