"""Explicit example algebras with scripted checks.

Each entry is a :class:`~lndcert.model.Model`; its serialized form is plain
DSL text, and running that text alone reproduces every check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .derivation import Algebra
from .model import CheckSpec, Model
from .poly import Poly, RatFunc, VarTable
from .valuation import BaseValuation


@dataclass(frozen=True)
class GradingResult:
    weights: Tuple[Tuple[str, int], ...]
    generator_degrees: Tuple[Optional[int], ...]
    failure: Optional[Poly] = None

    @property
    def graded_nonneg(self) -> bool:
        return self.failure is None

    @property
    def outcome(self) -> str:
        return "graded_nonneg" if self.graded_nonneg else "failure"


def grading_nonneg_check(B: Algebra, weights: Mapping[str, int]) -> GradingResult:
    """Every generator homogeneous of non-negative weight under the Z-grading.

    When this holds, B sits inside the non-negative part of the grading of the
    ambient ring. Unlisted variables get weight 0.
    """
    w = [weights.get(n, 0) for n in B.table.names]
    degrees: List[Optional[int]] = []
    failure = None
    for g in B.generators:
        ds = {sum(a * b for a, b in zip(e, w)) for e in g.terms}
        deg = ds.pop() if len(ds) == 1 else None
        degrees.append(deg)
        if failure is None and (deg is None or deg < 0):
            failure = g
    ordered = tuple((n, weights.get(n, 0)) for n in B.table.names)
    return GradingResult(ordered, tuple(degrees), failure)


@dataclass
class CatalogEntry:
    id: str
    model: Model
    provenance: str

    @property
    def algebra(self) -> Algebra:
        return next(iter(self.model.algebras.values()))

    @property
    def derivations(self):
        return list(self.model.derivations.values())

    @property
    def checks(self) -> List[CheckSpec]:
        return self.model.checks

    def to_dsl(self) -> str:
        from .dsl import print_model

        header = "".join(f"# {line}\n" for line in self.provenance.splitlines())
        return f"# catalog entry {self.id}\n{header}\n{print_model(self.model)}"


def _vars(table: VarTable) -> Dict[str, Poly]:
    return {n: Poly.var(table, n) for n in table.names}


def build_counterexample(m: int = 1) -> CatalogEntry:
    """B = Q[x, y, r_1 x, r_1 y, ..., r_m x, r_m y] with y d/dx and x d/dy."""
    if m < 1:
        raise ValueError("m must be at least 1")
    params = tuple(f"r{i}" for i in range(1, m + 1))
    table = VarTable(params + ("x", "y"), params)
    v = _vars(table)
    x, y = v["x"], v["y"]
    gens = [x, y]
    for r in params:
        gens += [v[r] * x, v[r] * y]
    model = Model(table)
    model.add_algebra("B", gens)
    model.add_derivation("d1", {"x": y})
    model.add_derivation("d2", {"y": x})
    r1 = params[0]
    checks = [
        CheckSpec("stability", "d1_stable", {"algebra": "B", "derivation": "d1", "expect": "stable"}),
        CheckSpec("stability", "d2_stable", {"algebra": "B", "derivation": "d2", "expect": "stable"}),
        CheckSpec("lnd", "d1_lnd", {"algebra": "B", "derivation": "d1", "iter_bound": 64, "expect": "nilpotent"}),
        CheckSpec("lnd", "d2_lnd", {"algebra": "B", "derivation": "d2", "iter_bound": 64, "expect": "nilpotent"}),
        CheckSpec("ml", "ml_window", {"algebra": "B", "derivations": ("d1", "d2"), "word_length": 4,
                                      "expect": "constants_only"}),
        CheckSpec("kernel", "d1_kernel", {"derivations": ("d1",), "degree": 6,
                                          "dimension": comb(m + 1 + 6, 6)}),
        CheckSpec("rank", "rank2", {"derivations": ("d1", "d2"), "elements": (x, y), "expect": "nonzero",
                                    "determinant": x * y}),
        CheckSpec("membership", "param_not_in_B", {"algebra": "B", "element": _rf(v[r1]),
                                                   "expect": "non_member"}),
        CheckSpec("valuation", "nonneg", {"algebra": "B", "valuation": _infinity(r1), "expect": "all_nonneg"}),
        CheckSpec("valuation", "param_not_in_closure", {"algebra": "B", "valuation": _infinity(r1),
                                                        "element": _rf(v[r1]), "expect": "certificate"}),
    ]
    for c in checks:
        model.add_check(c)
    note = (f"counterexample family, m={m}: B = Q[x, y, r_i x, r_i y] inside K[x, y], K = Q(r_1..r_m);\n"
            "derivations y d/dx and x d/dy; window ML certificate and valuation witness for r_1.\n"
            "Not machine-checked: Frac B = K(x, y).")
    return CatalogEntry(f"counterexample(m={m})", model, note)


def build_xytxty() -> CatalogEntry:
    """B = Q[x, y, tx, ty] inside Q[x, y, t] with y d/dx, x d/dy, d/dt."""
    table = VarTable(("t", "x", "y"), ("t",))
    v = _vars(table)
    t, x, y = v["t"], v["x"], v["y"]
    model = Model(table)
    model.add_algebra("B", [x, y, t * x, t * y])
    model.add_derivation("D1", {"x": y})
    model.add_derivation("D2", {"y": x})
    model.add_derivation("D3", {"t": Poly.const(table, 1)})
    checks = []
    for d in ("D1", "D2", "D3"):
        checks.append(CheckSpec("stability", f"{d}_stable", {"algebra": "B", "derivation": d, "expect": "stable"}))
        checks.append(CheckSpec("lnd", f"{d}_lnd", {"algebra": "B", "derivation": d, "iter_bound": 64,
                                                     "expect": "nilpotent"}))
    checks += [
        CheckSpec("ml", "ml_window", {"algebra": "B", "derivations": ("D1", "D2", "D3"), "word_length": 4,
                                      "expect": "constants_only"}),
        CheckSpec("ml", "D3_window", {"algebra": "B", "derivations": ("D3",), "word_length": 2,
                                      "expect": "extra_elements"}),
        CheckSpec("rank", "rank3", {"derivations": ("D1", "D2", "D3"), "elements": (x, y, t * x),
                                    "expect": "nonzero", "determinant": x ** 2 * y}),
        CheckSpec("rank", "rank3_search", {"derivations": ("D1", "D2", "D3"), "algebra": "B", "cap": 2,
                                           "expect": "nonzero", "determinant": x ** 2 * y}),
        CheckSpec("grading", "grading", {"algebra": "B", "weights": (("t", -1), ("x", 1), ("y", 1)),
                                         "expect": "graded_nonneg"}),
        CheckSpec("slice", "D3_slice", {"algebra": "B", "derivation": "D3", "search_degree": 2,
                                        "expect": "found"}),
        CheckSpec("membership", "t_not_in_B", {"algebra": "B", "element": _rf(t), "expect": "non_member"}),
        CheckSpec("valuation", "nonneg", {"algebra": "B", "valuation": _infinity("t"), "expect": "all_nonneg"}),
        CheckSpec("valuation", "t_not_in_closure", {"algebra": "B", "valuation": _infinity("t"),
                                                    "element": _rf(t), "expect": "certificate"}),
    ]
    for c in checks:
        model.add_check(c)
    note = ("B = Q[x, y, tx, ty] inside Q[x, y, t]; D1 = y d/dx, D2 = x d/dy, D3 = d/dt.\n"
            "Grading t -> -1, x, y -> 1 puts B in non-negative degrees; det(D_i(b_j)) = x^2 y for (x, y, tx).")
    return CatalogEntry("xytxty", model, note)


def build_chain_xyz() -> CatalogEntry:
    """Q < Q[x] < Q[x, y] < Q[x, y, z] cut out by partial derivatives."""
    table = VarTable(("x", "y", "z"))
    v = _vars(table)
    model = Model(table)
    model.add_algebra("A0", [])
    model.add_algebra("A1", [v["x"]])
    model.add_algebra("A2", [v["x"], v["y"]])
    model.add_algebra("A3", [v["x"], v["y"], v["z"]])
    for n in ("x", "y", "z"):
        model.add_derivation(f"d{n}", {n: Poly.const(table, 1)})
    model.add_check(CheckSpec("chain", "chain3", {
        "algebras": ("A0", "A1", "A2", "A3"),
        "derivation_sets": (("dx", "dy", "dz"), ("dy", "dz"), ("dz",), ()),
        "witnesses": (v["x"], v["y"], v["z"]),
        "expect": "valid", "length": 3}))
    model.add_check(CheckSpec("chain", "chain_corrupted", {
        "algebras": ("A0", "A1", "A2", "A3"),
        "derivation_sets": (("dx", "dy", "dz"), ("dy", "dz"), ("dz",), ()),
        "witnesses": (v["x"], v["x"], v["z"]),
        "expect": "invalid_at_2"}))
    model.add_check(CheckSpec("rank", "rank3", {"derivations": ("dx", "dy", "dz"), "cap": 1,
                                                "expect": "nonzero", "determinant": Poly.const(table, 1)}))
    note = "Strict chain of kernel intersections in Q[x, y, z]; height lower bound 3 = LND-rank."
    return CatalogEntry("chain_xyz", model, note)


def build_plinth_remark() -> CatalogEntry:
    """D = x d/dy on Q[x, y]: D(B) = xB and pl(D) = xA."""
    table = VarTable(("x", "y"))
    v = _vars(table)
    model = Model(table)
    model.add_algebra("B", [v["x"], v["y"]])
    model.add_derivation("D", {"y": v["x"]})
    model.add_check(CheckSpec("plinth", "tight", {"derivation": "D", "degree": 3, "expect": "tight"}))
    model.add_check(CheckSpec("slice", "slice", {"algebra": "B", "derivation": "D", "search_degree": 1,
                                                 "expect": "found"}))
    model.add_check(CheckSpec("kernel", "kernel", {"derivations": ("D",), "degree": 3, "dimension": 4}))
    note = "Plinth ideal of x d/dy on Q[x, y]: the window of xQ[x]; D is tight."
    return CatalogEntry("plinth_remark", model, note)


def _rf(p: Poly) -> RatFunc:
    return RatFunc.from_poly(p)


def _infinity(param: str) -> BaseValuation:
    return BaseValuation.at_infinity(param)


ENTRIES: Dict[str, Callable[..., CatalogEntry]] = {
    "counterexample": build_counterexample,
    "xytxty": build_xytxty,
    "chain_xyz": build_chain_xyz,
    "plinth_remark": build_plinth_remark,
}

DEFAULT_ENTRIES: Tuple[Tuple[str, Dict[str, int]], ...] = (
    ("counterexample", {"m": 1}),
    ("counterexample", {"m": 2}),
    ("counterexample", {"m": 3}),
    ("xytxty", {}),
    ("chain_xyz", {}),
    ("plinth_remark", {}),
)


def build(name: str, **args: int) -> CatalogEntry:
    try:
        builder = ENTRIES[name]
    except KeyError:
        raise KeyError(f"no catalog entry {name!r}; known: {', '.join(ENTRIES)}") from None
    return builder(**args)


def default_entries() -> List[CatalogEntry]:
    return [build(name, **args) for name, args in DEFAULT_ENTRIES]
