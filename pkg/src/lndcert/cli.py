"""Command-line interface.

Exit status: 0 when every check meets its expectation, 1 when some check
fails, 2 on input errors (unreadable file, syntax error, bad arguments).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import __version__, catalog
from .dsl import DSLSyntaxError, parse_model, parse_polynomial, parse_ratfunc
from .model import CheckSpec, Model, ModelError
from .runner import COMMAND_KINDS, Report, run
from .valuation import ValuationError, parse_valuation

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load_model(args) -> Model:
    if args.use:
        text = f"use {args.use};\n"
    elif args.model == "-":
        text = sys.stdin.read()
    elif args.model:
        try:
            text = Path(args.model).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {args.model}: {exc.strerror}") from None
    else:
        raise InputError("a model file (or --use ENTRY) is required")
    return parse_model(text)


def _pick_algebra(model: Model, name: Optional[str], required: bool = True) -> Optional[str]:
    if name:
        model.algebra(name)
        return name
    if len(model.algebras) == 1:
        return next(iter(model.algebras))
    if required:
        raise InputError("the model has several algebras; choose one with --algebra")
    return None


def _pick_derivations(model: Model, names: Optional[str]) -> List[str]:
    if names:
        out = [n.strip() for n in names.split(",") if n.strip()]
        for n in out:
            model.derivation(n)
        return out
    return list(model.derivations)


def _synthesize(model: Model, command: str, args) -> List[CheckSpec]:
    """Default checks for a subcommand when the model declares none."""
    ds = _pick_derivations(model, args.derivations)
    checks: List[CheckSpec] = []
    if command == "check-lnd":
        alg = _pick_algebra(model, args.algebra)
        for d in ds:
            checks.append(CheckSpec("lnd", f"{d}_on_{alg}", {"algebra": alg, "derivation": d,
                                                            "iter_bound": args.iter_bound or 64}))
    elif command == "kernel-basis":
        checks.append(CheckSpec("kernel", "kernel", {"derivations": tuple(ds), "degree": args.degree or 2}))
    elif command == "ml-certificate":
        alg = _pick_algebra(model, args.algebra)
        checks.append(CheckSpec("ml", f"ml_{alg}", {"algebra": alg, "derivations": tuple(ds),
                                                    "word_length": args.word_length or 4}))
    elif command == "plinth":
        for d in ds:
            checks.append(CheckSpec("plinth", f"plinth_{d}", {"derivation": d, "degree": args.degree or 3}))
    elif command == "lndrank":
        fields: Dict[str, Any] = {"derivations": tuple(ds)}
        if args.elements:
            fields["elements"] = tuple(parse_polynomial(e, model.table) for e in _split(args.elements))
        else:
            alg = _pick_algebra(model, args.algebra, required=False)
            if alg:
                fields["algebra"] = alg
            fields["cap"] = args.cap or 2
        checks.append(CheckSpec("rank", "lndrank", fields))
    elif command == "valuation":
        if not args.valuation:
            raise InputError("--valuation is required when the model has no valuation checks")
        alg = _pick_algebra(model, args.algebra)
        fields = {"algebra": alg, "valuation": parse_valuation(args.valuation, model.table)}
        if args.element:
            fields["element"] = parse_ratfunc(args.element, model.table)
        checks.append(CheckSpec("valuation", "valuation", fields))
    elif command == "chain":
        raise InputError("chain needs a `check chain { ... }` block in the model")
    return checks


def _split(text: str) -> List[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    out.append(cur)
    return [s.strip() for s in out if s.strip()]


def _emit(payload: str, args, summary_lines: Sequence[str]) -> None:
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
        for line in summary_lines:
            print(line)
    else:
        sys.stdout.write(payload)
        for line in summary_lines:
            print(line, file=sys.stderr)


def _summary(report: Report, prefix: str = "") -> List[str]:
    out = []
    for r in report.results:
        status = "PASS" if r.passed else "FAIL"
        exp = f" (expected {r.expected})" if r.expected is not None else ""
        out.append(f"{status} {prefix}{r.name}: {r.outcome}{exp}")
    return out


def _opts(args) -> Dict[str, Any]:
    return {"degree": args.degree, "word_length": args.word_length,
            "iter_bound": args.iter_bound, "cap": args.cap}


def cmd_model(command: str, args) -> int:
    model = _load_model(args)
    if command == "run":
        report = run(model, "run", opts=_opts(args))
    else:
        kinds = COMMAND_KINDS[command]
        selecting = any([args.algebra, args.derivations, args.elements, args.valuation, args.element,
                         getattr(args, "find", False)])
        checks = [c for c in model.checks if c.kind in kinds]
        if selecting or not checks:
            # synthesized checks join the model so the report's model text reproduces them
            checks = []
            for c in _synthesize(model, command, args):
                c.name = _fresh_name(model, c.name)
                model.add_check(c)
                checks.append(c)
        report = run(model, command, checks=checks, opts=_opts(args))
    _emit(report.to_json(args.timing), args, _summary(report))
    return EXIT_OK if report.all_passed else EXIT_FAILED


def _fresh_name(model: Model, base: str) -> str:
    taken = {c.name for c in model.checks}
    name, i = base, 2
    while name in taken:
        name, i = f"{base}_{i}", i + 1
    return name


def cmd_catalog(args) -> int:
    if args.list:
        for name, params in catalog.DEFAULT_ENTRIES:
            print(catalog.build(name, **params).id)
        return EXIT_OK
    if args.entry:
        params = {"m": args.m} if args.m is not None else {}
        entries = [catalog.build(args.entry, **params)]
    else:
        entries = catalog.default_entries()
    if args.dump:
        for e in entries:
            sys.stdout.write(e.to_dsl())
        return EXIT_OK
    records = []
    lines: List[str] = []
    ok = True
    for e in entries:
        # run from the serialized text only
        model = parse_model(e.to_dsl())
        report = run(model, "catalog", checks=model.checks, opts=_opts(args))
        rec = report.record(args.timing)
        rec = {"entry": e.id, **rec}
        records.append(rec)
        lines += _summary(report, prefix=f"{e.id}/")
        ok = ok and report.all_passed
    payload = json.dumps({
        "format": "lndcert-catalog",
        "format_version": 1,
        "tool_version": __version__,
        "entries": records,
    }, indent=2, ensure_ascii=False) + "\n"
    _emit(payload, args, lines)
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lndcert", description=(
        "Certificates for locally nilpotent derivations on subalgebras of polynomial rings."))
    parser.add_argument("--version", action="version", version=f"lndcert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, model: bool = True) -> None:
        if model:
            p.add_argument("model", nargs="?", help="model file in the lndcert DSL ('-' for stdin)")
            p.add_argument("--use", metavar="ENTRY", help="catalog entry instead of a file, e.g. 'counterexample(m=1)'")
            p.add_argument("--algebra", help="algebra name")
            p.add_argument("--derivations", "--derivation", dest="derivations",
                           help="comma-separated derivation names")
            p.add_argument("--elements", help="comma-separated elements for a rank witness")
            p.add_argument("--valuation", help="base valuation, e.g. 'order_at_infinity(t)'")
            p.add_argument("--element", help="element to certify as a non-member")
        p.add_argument("--degree", type=int, help="ambient total-degree cap d")
        p.add_argument("--word-length", "--L", dest="word_length", type=int, help="generator word-length cap L")
        p.add_argument("--iter-bound", dest="iter_bound", type=int, help="nilpotency iteration bound")
        p.add_argument("--cap", type=int, help="search cap for rank witnesses")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--timing", action="store_true", help="include per-check timings (breaks byte-identical reports)")

    for name, help_text in [
        ("run", "run every check in the model"),
        ("check-lnd", "stability and local nilpotency"),
        ("kernel-basis", "degree-bounded kernel bases"),
        ("ml-certificate", "window Makar-Limanov certificate"),
        ("plinth", "plinth window and tightness"),
        ("lndrank", "LND-rank witness"),
        ("chain", "chain certificates"),
        ("valuation", "Gauss-lexicographic valuation certificates"),
    ]:
        p = sub.add_parser(name, help=help_text)
        common(p)
        if name == "lndrank":
            p.add_argument("--find", action="store_true", help="search for a witness (default without --elements)")

    p = sub.add_parser("catalog", help="run the built-in example catalog")
    common(p, model=False)
    p.add_argument("--list", action="store_true", help="list catalog entries")
    p.add_argument("--entry", help="run a single entry")
    p.add_argument("--m", type=int, help="parameter count for the counterexample entry")
    p.add_argument("--dump", action="store_true", help="print the DSL form instead of running")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "catalog":
            return cmd_catalog(args)
        return cmd_model(args.command, args)
    except (InputError, DSLSyntaxError, ModelError, ValuationError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"lndcert: error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
