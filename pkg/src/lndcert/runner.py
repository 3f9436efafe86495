"""Execute model checks and assemble JSON reports.

Every certificate record embeds its inputs in canonical text so a third
party can re-run the computation from the report alone.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .catalog import GradingResult, grading_nonneg_check
from .derivation import (
    DEFAULT_ITER_BOUND,
    Derivation,
    UnstableDerivationError,
    check_lnd,
    check_stability,
    find_local_slice,
)
from .dsl import print_model
from .grobner import Membership, subalgebra_membership
from .invariants import (
    ChainError,
    ChainLevel,
    RankWitnessFailure,
    TruncationSpec,
    chain_certificate,
    find_rank_witness,
    kernel_intersection_bounded,
    ml_certificate,
    rank_witness,
    tightness_check,
)
from .model import CheckSpec, Model, ModelError
from .valuation import gauss_lex_value, non_membership_by_valuation, nonneg_certificate

REPORT_FORMAT = "lndcert-report"
REPORT_FORMAT_VERSION = 1

# subcommand -> check kinds it executes
COMMAND_KINDS = {
    "check-lnd": ("stability", "lnd"),
    "kernel-basis": ("kernel",),
    "ml-certificate": ("ml",),
    "plinth": ("plinth",),
    "lndrank": ("rank",),
    "chain": ("chain",),
    "valuation": ("valuation",),
}

# command-line option -> check field it overrides
OPTION_FIELDS = {
    "degree": "degree",
    "word_length": "word_length",
    "iter_bound": "iter_bound",
    "cap": "cap",
}


@dataclass
class CheckResult:
    name: str
    kind: str
    outcome: str
    expected: Optional[str]
    passed: bool
    certificate: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None
    seconds: float = 0.0

    def record(self, timing: bool = False) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "check": self.name,
            "kind": self.kind,
            "outcome": self.outcome,
            "expected": self.expected,
            "passed": self.passed,
        }
        if self.error is not None:
            out["error"] = self.error
        out["certificate"] = self.certificate
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


def _names(ds: Sequence[Derivation]) -> List[str]:
    return [d.name or repr(d) for d in ds]


def _membership_record(m: Membership) -> Dict[str, Any]:
    return {"member": m.member, "witness": None if m.witness is None else str(m.witness)}


def _derivation_record(d: Derivation) -> Dict[str, str]:
    return {n: str(p) for n, p in zip(d.table.names, d.images)}


def _run_stability(model: Model, c: CheckSpec, opts: Dict[str, Any]):
    B = model.algebra(c.get("algebra"))
    D = model.derivation(c.get("derivation"))
    st = check_stability(D, B)
    cert = {
        "algebra": c.get("algebra"),
        "generators": [str(g) for g in B.generators],
        "derivation": c.get("derivation"),
        "images": _derivation_record(D),
        "stable": st.stable,
        "witnesses": [_membership_record(w) for w in st.witnesses],
    }
    if not st.stable:
        cert["counterexample"] = str(st.counterexample)
    return ("stable" if st.stable else "unstable"), cert


def _run_lnd(model: Model, c: CheckSpec, opts: Dict[str, Any]):
    B = model.algebra(c.get("algebra"))
    D = model.derivation(c.get("derivation"))
    bound = c.get("iter_bound", DEFAULT_ITER_BOUND)
    cert: Dict[str, Any] = {
        "algebra": c.get("algebra"),
        "generators": [str(g) for g in B.generators],
        "derivation": c.get("derivation"),
        "images": _derivation_record(D),
        "iter_bound": bound,
    }
    try:
        status = check_lnd(D, B, bound)
    except UnstableDerivationError as exc:
        cert["counterexample"] = str(exc.generator)
        return "unstable", cert
    cert["stability_witnesses"] = [_membership_record(w) for w in status.stability.witnesses]
    cert["nilpotency_indices"] = list(status.indices)
    return ("nilpotent" if status.nilpotent else "inconclusive"), cert


def _run_membership(model: Model, c: CheckSpec, opts: Dict[str, Any]):
    B = model.algebra(c.get("algebra"))
    f = c.get("element")
    cert = {"algebra": c.get("algebra"), "generators": [str(g) for g in B.generators], "element": str(f)}
    if not f.is_poly():
        cert["member"] = False
        cert["reason"] = "not a polynomial"
        return "non_member", cert
    m = subalgebra_membership(f.to_poly(), B)
    cert.update(_membership_record(m))
    return ("member" if m.member else "non_member"), cert


def _run_kernel(model: Model, c: CheckSpec, opts: Dict[str, Any]):
    ds = [model.derivation(n) for n in c.get("derivations", ())]
    d = c.get("degree", 2)
    kb = kernel_intersection_bounded(ds, TruncationSpec(degree=d), model.table)
    cert = {
        "derivations": {n: _derivation_record(model.derivation(n)) for n in c.get("derivations", ())},
        "degree": d,
        "dimension": kb.dimension,
        "basis": [str(p) for p in kb.basis],
    }
    outcome = f"dimension_{kb.dimension}"
    return outcome, cert


def _run_ml(model: Model, c: CheckSpec, opts: Dict[str, Any]):
    B = model.algebra(c.get("algebra"))
    ds = [model.derivation(n) for n in c.get("derivations", ())]
    L = c.get("word_length", 4)
    cert: Dict[str, Any] = {
        "algebra": c.get("algebra"),
        "generators": [str(g) for g in B.generators],
        "derivations": {n: _derivation_record(model.derivation(n)) for n in c.get("derivations", ())},
        "word_length": L,
    }
    ml = ml_certificate(B, ds, L, c.get("iter_bound", DEFAULT_ITER_BOUND))
    cert["nilpotency_indices"] = [list(ix) for ix in ml.lnd_indices]
    cert["window_dimension"] = ml.window_dimension
    cert["kernel_basis"] = [str(p) for p in ml.kernel]
    cert["outcome"] = ml.outcome
    return ml.outcome, cert


def _run_plinth(model: Model, c: CheckSpec, opts: Dict[str, Any]):
    D = model.derivation(c.get("derivation"))
    d = c.get("degree", 3)
    t = tightness_check(D, TruncationSpec(degree=d))
    cert = {
        "derivation": c.get("derivation"),
        "images": _derivation_record(D),
        "degree": d,
        "plinth_basis": [str(p) for p in t.plinth.basis],
        "tight": t.tight,
    }
    if not t.tight:
        cert["violation"] = str(t.violation)
    return ("tight" if t.tight else "violation"), cert


def _run_rank(model: Model, c: CheckSpec, opts: Dict[str, Any]):
    names = c.get("derivations", ())
    ds = [model.derivation(n) for n in names]
    cert: Dict[str, Any] = {"derivations": {n: _derivation_record(model.derivation(n)) for n in names}}
    elements = c.get("elements")
    if elements is not None:
        try:
            w = rank_witness(ds, elements)
        except RankWitnessFailure:
            cert["elements"] = [str(b) for b in elements]
            cert["determinant"] = "0"
            return "zero", cert
    else:
        cap = c.get("cap", 2)
        alg = c.get("algebra")
        cert["search"] = {"cap": cap, "algebra": alg}
        w = find_rank_witness(ds, cap, model.algebra(alg) if alg else None)
        if w is None:
            return "none", cert
    cert["elements"] = [str(b) for b in w.elements]
    cert["matrix"] = [[str(p) for p in row] for row in w.matrix]
    cert["determinant"] = str(w.determinant)
    cert["rank_lower_bound"] = w.rank
    expected_det = c.get("determinant")
    if expected_det is not None and expected_det != w.determinant:
        cert["expected_determinant"] = str(expected_det)
        return "determinant_mismatch", cert
    return "nonzero", cert


def _run_chain(model: Model, c: CheckSpec, opts: Dict[str, Any]):
    algs = [model.algebra(n) for n in c.get("algebras", ())]
    sets = c.get("derivation_sets", ())
    if len(sets) != len(algs):
        raise ModelError(f"check {c.name}: {len(algs)} algebras but {len(sets)} derivation sets")
    levels = [ChainLevel(a, tuple(model.derivation(n) for n in s)) for a, s in zip(algs, sets)]
    witnesses = c.get("witnesses", ())
    cert: Dict[str, Any] = {
        "levels": [{"algebra": n, "generators": [str(g) for g in a.generators], "derivations": list(s)}
                   for n, a, s in zip(c.get("algebras", ()), algs, sets)],
        "derivations": {n: _derivation_record(d) for n, d in model.derivations.items()
                        if any(n in s for s in sets)},
        "witnesses": [str(w) for w in witnesses],
    }
    try:
        cc = chain_certificate(levels, witnesses)
    except ChainError as exc:
        cert["failed_level"] = exc.index
        cert["reason"] = exc.reason
        return f"invalid_at_{exc.index}", cert
    cert["length"] = cc.length
    cert["strictness_witnesses"] = [_membership_record(m) for m in cc.strictness_witnesses]
    expected_len = c.get("length")
    if expected_len is not None and expected_len != cc.length:
        return f"length_{cc.length}", cert
    return "valid", cert


def _run_valuation(model: Model, c: CheckSpec, opts: Dict[str, Any]):
    B = model.algebra(c.get("algebra"))
    v = c.get("valuation")
    element = c.get("element")
    nn = nonneg_certificate(B, v)
    cert: Dict[str, Any] = {
        "algebra": c.get("algebra"),
        "valuation": str(v),
        "main_variables": list(model.table.mains),
        "generator_values": {str(g): str(val) for g, val in zip(B.generators, nn.values)},
    }
    if element is None:
        if not nn.all_nonneg:
            cert["violation"] = str(nn.violation)
        return nn.outcome, cert
    cert["element"] = str(element)
    cert["element_value"] = str(gauss_lex_value(v, element))
    res = non_membership_by_valuation(element, B, v)
    return ("certificate" if res is not None else "inconclusive"), cert


def _run_grading(model: Model, c: CheckSpec, opts: Dict[str, Any]):
    B = model.algebra(c.get("algebra"))
    g: GradingResult = grading_nonneg_check(B, dict(c.get("weights", ())))
    cert = {
        "algebra": c.get("algebra"),
        "weights": dict(g.weights),
        "generator_degrees": {str(p): d for p, d in zip(B.generators, g.generator_degrees)},
    }
    if g.failure is not None:
        cert["failure"] = str(g.failure)
    return g.outcome, cert


def _run_slice(model: Model, c: CheckSpec, opts: Dict[str, Any]):
    B = model.algebra(c.get("algebra"))
    D = model.derivation(c.get("derivation"))
    deg = c.get("search_degree", 3)
    sl = find_local_slice(D, B, deg)
    cert: Dict[str, Any] = {"algebra": c.get("algebra"), "derivation": c.get("derivation"), "search_degree": deg}
    if sl is None:
        return "none", cert
    cert.update({"s": str(sl.s), "a": str(sl.a), "word": list(sl.word)})
    return "found", cert


RUNNERS = {
    "stability": _run_stability,
    "lnd": _run_lnd,
    "membership": _run_membership,
    "kernel": _run_kernel,
    "ml": _run_ml,
    "plinth": _run_plinth,
    "rank": _run_rank,
    "chain": _run_chain,
    "valuation": _run_valuation,
    "grading": _run_grading,
    "slice": _run_slice,
}


def expected_outcome(c: CheckSpec) -> Optional[str]:
    if c.kind == "kernel" and "dimension" in c.fields:
        return f"dimension_{c.fields['dimension']}"
    return c.get("expect")


def apply_options(c: CheckSpec, opts: Dict[str, Any]) -> CheckSpec:
    fields = dict(c.fields)
    for opt, key in OPTION_FIELDS.items():
        value = opts.get(opt)
        if value is not None and _accepts(c.kind, key):
            fields[key] = value
    return replace(c, fields=fields)


def _accepts(kind: str, key: str) -> bool:
    return {
        "degree": kind in ("kernel", "plinth"),
        "word_length": kind == "ml",
        "iter_bound": kind in ("lnd", "ml"),
        "cap": kind == "rank",
    }[key]


def run_check(model: Model, c: CheckSpec, opts: Optional[Dict[str, Any]] = None) -> CheckResult:
    opts = opts or {}
    c = apply_options(c, opts)
    expected = expected_outcome(c)
    start = time.perf_counter()
    try:
        outcome, cert = RUNNERS[c.kind](model, c, opts)
        error = None
    except (ModelError, ValueError, ArithmeticError) as exc:
        outcome, cert, error = "error", {}, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    passed = error is None and (expected is None or outcome == expected)
    return CheckResult(c.name, c.kind, outcome, expected, passed, cert, error, elapsed)


@dataclass
class Report:
    command: str
    model_text: str
    results: List[CheckResult]

    @property
    def digest(self) -> str:
        return "sha256:" + hashlib.sha256(self.model_text.encode("utf-8")).hexdigest()

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def record(self, timing: bool = False) -> Dict[str, Any]:
        passed = sum(r.passed for r in self.results)
        return {
            "format": REPORT_FORMAT,
            "format_version": REPORT_FORMAT_VERSION,
            "tool_version": __version__,
            "command": self.command,
            "model_digest": self.digest,
            "model": self.model_text,
            "results": [r.record(timing) for r in self.results],
            "summary": {"total": len(self.results), "passed": passed, "failed": len(self.results) - passed},
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.record(timing), indent=2, ensure_ascii=False) + "\n"


def run(model: Model, command: str = "run", checks: Optional[Sequence[CheckSpec]] = None,
        opts: Optional[Dict[str, Any]] = None) -> Report:
    """Run ``checks`` (default: every check of the kinds ``command`` covers).

    Results are in declaration order.
    """
    if checks is None:
        kinds = COMMAND_KINDS.get(command)
        checks = [c for c in model.checks if kinds is None or c.kind in kinds]
    results = [run_check(model, c, opts) for c in checks]
    return Report(command, print_model(model), results)
