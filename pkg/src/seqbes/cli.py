"""Command-line interface.

Exit codes: 0 affirmative, 1 negative (with a witness), 2 unknown,
3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import checks
from .bases import BaseError, derivable, derivation, parse_base
from .clp import Proof, ProofError, Provable, check_proof, prove
from .simulation import ExtractionError, ScopeError, extract_proof, prop6_counterexample
from .support import (
    NotSupported,
    Supported,
    parse_judgment,
    support_exact,
    support_oracle,
    support_refute,
)
from .syntax import ParseError, parse_sequent, render

OK, NEGATIVE, UNKNOWN, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _seed(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("BES_SEED")
    if env is None:
        return checks.DEFAULT_SEED
    try:
        return int(env, 0)
    except ValueError:
        raise UsageError(f"BES_SEED must be an integer, got {env!r}") from None


def _read_base(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read base file: {e}") from None
    return parse_base(text)


def _emit_proof(proof: Proof, args, out) -> None:
    if args.json:
        print(proof.to_json(indent=2), file=out)
    elif args.latex:
        print(render(proof, "latex"), file=out)
    else:
        print(proof.to_text(), file=out)


def _verify(proof: Proof, out) -> None:
    again = Proof.from_json(proof.to_json())
    check_proof(again, allow_cut=True)
    if again != proof:
        raise ProofError((), proof, "serialization round-trip changed the proof")
    print("verified: proof re-parses and passes the checker", file=out)


def cmd_prove(args, out) -> int:
    s = parse_sequent(args.sequent)
    r = prove(s)
    if isinstance(r, Provable):
        _emit_proof(r.proof, args, out)
        if args.cut_free_check:
            check_proof(r.proof)
            print("cut-free check: ok", file=out)
        if args.verify:
            _verify(r.proof, out)
        return OK
    falsifying = ", ".join(f"{p}={'T' if v else 'F'}" for p, v in r.valuation.items())
    print(f"not provable: {render(s)}", file=out)
    print(f"falsifying valuation: {falsifying or '(no atoms)'}", file=out)
    return NEGATIVE


def cmd_derive(args, out) -> int:
    base = _read_base(args.base_file)
    s = parse_sequent(args.sequent, allow_mapped=True)
    if not s.is_atomic:
        raise UsageError("derive expects an atomic sequent")
    if derivable(base, s):
        print(derivation(base, s).to_text(), file=out)
        return OK
    print(f"not derivable: {render(s)}", file=out)
    return NEGATIVE


def cmd_support(args, out) -> int:
    base = _read_base(args.base_file)
    j = parse_judgment(args.judgment, base)
    if args.mode == "exact":
        v = support_exact(base, j)
    elif args.mode == "oracle":
        v = support_oracle(base, j.antecedents, j.succedents)
    else:
        v = support_refute(base, j, args.budget)
    if isinstance(v, Supported):
        print(f"supported: {j}", file=out)
        w = v.witness
        for d in w if isinstance(w, tuple) else (w,):
            print(d.to_text() if hasattr(d, "to_text") else str(d), file=out)
        return OK
    if isinstance(v, NotSupported):
        print(f"not supported: {j}", file=out)
        print(v.describe(), file=out)
        return NEGATIVE
    print(f"unknown: {j} ({v.reason})", file=out)
    return UNKNOWN


def cmd_extract(args, out) -> int:
    s = parse_sequent(args.sequent)
    if not prove(s):
        print(f"not valid, nothing to extract: {render(s)}", file=out)
        return NEGATIVE
    rep = extract_proof(s.left, s.right, args.variant)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(rep.to_dict(), fh, indent=2)
            fh.write("\n")
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2), file=out)
        return OK
    if args.latex:
        print(render(rep.stage_pi_dprime, "latex"), file=out)
        print(render(rep.final, "latex"), file=out)
        return OK
    print(f"extracted ({args.variant}): {render(s)}", file=out)
    print("statistics: " + ", ".join(f"{k}={v}" for k, v in rep.statistics.items()), file=out)
    print("atomic derivation:", file=out)
    print(rep.stage_pi.to_text(1), file=out)
    print("translated proof:", file=out)
    print(rep.stage_pi_dprime.to_text(1), file=out)
    if rep.stage_rewritten is not None:
        print("after replacing placeholder rules:", file=out)
        print(rep.stage_rewritten.to_text(1), file=out)
    print("cut-free proof:", file=out)
    print(rep.final.to_text(1), file=out)
    return OK


def cmd_counterexample(args, out) -> int:
    rep = prop6_counterexample()
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2), file=out)
    else:
        print(rep.to_text(), file=out)
    return OK if rep.ok else NEGATIVE


def cmd_check(args, out) -> int:
    seed = _seed(args.seed)
    print(f"seed: {seed}", file=out)
    results = checks.run_all(args.samples, seed)
    for r in results:
        print(r.line(), file=out)
        for f in r.failures[:5]:
            print(f"    {f}", file=out)
    return OK if all(r.passed for r in results) else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="seqbes", description="Base-extension semantics and sequent proofs for classical logic.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pr = sub.add_parser("prove", help="decide a sequent and print a cut-free proof")
    pr.add_argument("sequent")
    pr.add_argument("--cut-free-check", action="store_true", help="run the cut-free checker on the proof")
    pr.add_argument("--verify", action="store_true", help="re-parse the serialized proof and check it")
    fmt = pr.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--latex", action="store_true")
    pr.set_defaults(func=cmd_prove)

    de = sub.add_parser("derive", help="derivability of an atomic sequent in a base")
    de.add_argument("base_file")
    de.add_argument("sequent")
    de.set_defaults(func=cmd_derive)

    su = sub.add_parser("support", help="evaluate a support judgment 'Γ |= Δ'")
    su.add_argument("base_file")
    su.add_argument("judgment")
    su.add_argument("--mode", choices=("exact", "oracle", "refute"), default="exact")
    su.add_argument("--budget", type=int, default=1, help="added axioms tried by the refuter")
    su.set_defaults(func=cmd_support)

    ex = sub.add_parser("extract", help="extract a proof from semantic validity")
    ex.add_argument("sequent")
    ex.add_argument("--variant", choices=("full", "quasi"), default="full")
    ex.add_argument("--out", help="write the JSON report to FILE")
    efmt = ex.add_mutually_exclusive_group()
    efmt.add_argument("--json", action="store_true")
    efmt.add_argument("--latex", action="store_true")
    ex.set_defaults(func=cmd_extract)

    ce = sub.add_parser("counterexample", help="reproduce the cut-free counterexample")
    ce.add_argument("name", choices=("prop6",))
    ce.add_argument("--json", action="store_true")
    ce.set_defaults(func=cmd_counterexample)

    ch = sub.add_parser("check", help="run the property suites")
    ch.add_argument("--samples", type=int, help="size of every sampled suite")
    ch.add_argument("--seed", type=lambda s: int(s, 0))
    ch.set_defaults(func=cmd_check)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "budget", 0) is not None and getattr(args, "budget", 0) < 0:
            raise UsageError("--budget must be non-negative")
        return args.func(args, out)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except ParseError as e:
        print(f"input error: {e}", file=sys.stderr)
        return USAGE
    except (BaseError, ScopeError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return USAGE
    except (ExtractionError, ProofError) as e:  # pragma: no cover - internal bug
        print(f"internal error: {e}", file=sys.stderr)
        return USAGE
