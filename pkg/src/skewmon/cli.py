"""Command-line front end.

Exit codes: 0 success, 1 verdict failure (or no verdict), 2 parse or typing error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, TextIO

from skewmon import kernel as K
from skewmon.coherence import coherence_proof, decide_equal, nm, nmrev
from skewmon.maps import MapExpr, TypingError, check_map, cod, dom
from skewmon.models import (
    NatModelParams,
    NatModelViolation,
    UnboundVariable,
    eval_map_nat,
    eval_map_p,
    parse_valuation,
    separate,
)
from skewmon.rewriting import format_steps, search_maps, steps_to_map
from skewmon.syntax import ParseError, parse_map, parse_term, proof_from_text, proof_to_text
from skewmon.terms import emb, nf, nfrev, size

OK, FAIL, BAD_INPUT = 0, 1, 2


class _Out:
    def __init__(self, stream: TextIO):
        self.stream = stream

    def __call__(self, *parts: object) -> None:
        print(*parts, file=self.stream)


def _typed_map(text: str) -> MapExpr:
    f = parse_map(text)
    check_map(f)
    return f


def cmd_normalize(args, out: _Out) -> int:
    a = parse_term(args.term)
    out(f"nf    {nf(a)}")
    out(f"nfrev {nfrev(a)}")
    out(f"emb   {emb(nf(a))}")
    return OK


def cmd_canonical_map(args, out: _Out) -> int:
    a = parse_term(args.term)
    f = nmrev(a) if args.rev else nm(a)
    out(f)
    out(f"  : {dom(f)} => {cod(f)}")
    return OK


def cmd_check_map(args, out: _Out) -> int:
    f = _typed_map(args.map)
    out(f"ok: {dom(f)} => {cod(f)}")
    return OK


def cmd_check_proof(args, out: _Out) -> int:
    p = proof_from_text(Path(args.file).read_text())
    try:
        e = K.check_proof(p)
    except K.KernelError as exc:
        out(f"KERNEL REJECTED: {exc}")
        return FAIL
    out(f"KERNEL OK: {e.lhs} == {e.rhs}")
    return OK


def cmd_decide(args, out: _Out) -> int:
    f, g = _typed_map(args.f), _typed_map(args.g)
    if dom(f) != dom(g) or cod(f) != cod(g):
        out(f"not parallel: {dom(f)} => {cod(f)} vs {dom(g)} => {cod(g)}")
        return BAD_INPUT
    p = decide_equal(f, g)
    if p is not None:
        e = K.check_proof(p)
        assert (e.lhs, e.rhs) == (f, g)
        out(f"EQUAL (kernel-checked, {K.proof_size(p)} proof nodes)")
        if args.proof_out:
            Path(args.proof_out).write_text(proof_to_text(p))
        return OK
    w = separate(f, g)
    if w is not None:
        out(f"NOT EQUAL: pointed model separates them at {w}")
        return OK
    out("UNDECIDED: neither endpoint is a normal form and the pointed model does not separate")
    return FAIL


def cmd_search(args, out: _Out) -> int:
    a, b = parse_term(args.a), parse_term(args.b)
    bound = args.max_term_size if args.max_term_size is not None else size(a) + 4
    r = search_maps(a, b, bound, args.max_steps)
    if r.verdict == "nf-mismatch":
        out(f"NF-MISMATCH: {nf(a)} vs {nf(b)}; no map exists")
        return FAIL
    if r.verdict == "exhausted":
        out(f"EXHAUSTED (term size <= {bound}, steps <= {args.max_steps}, {r.explored} terms)")
        return FAIL
    out(f"FOUND {_plural(len(r.steps), 'step')}")
    if r.steps:
        out(format_steps(r.steps))
    out(f"map: {steps_to_map(a, r.steps)}")
    return OK


def _read_valuation(path: str | None):
    if path is None:
        return {}, {}
    return parse_valuation(Path(path).read_text())


def cmd_eval(args, out: _Out) -> int:
    f = _typed_map(args.map)
    pointed, nat = _read_valuation(args.valuation)
    if args.model == "pointed":
        fn = eval_map_p(f, pointed)
        out(f"{fn.src} -> {fn.dst}")
        out("table " + " ".join(map(str, fn.table)))
        return OK
    params = NatModelParams(args.n, nat)
    try:
        x, y = eval_map_nat(f, params)
    except NatModelViolation as exc:
        out(f"VIOLATION: {exc}")
        return FAIL
    out(f"{dom(f)} = {x} <= {y} = {cod(f)}  (n = {args.n})")
    return OK


def cmd_separate(args, out: _Out) -> int:
    f, g = _typed_map(args.f), _typed_map(args.g)
    pointed, _ = _read_valuation(args.valuation)
    w = separate(f, g, [pointed] if args.valuation else None)
    if w is None:
        out("INDISTINGUISHABLE on the valuations tried (no claim of equality)")
        return FAIL
    out(f"SEPARATED at {w}")
    return OK


# -- demo -----------------------------------------------------------------------

INEQUALITIES = [
    ("id_(I * I)", "rho_I . lam_I"),
    ("id_((X * I) * Y)", "(rho_X * id_Y) . (id_X * lam_Y) . alpha_(X,I,Y)"),
    ("lam_(I * X)", "(id_I * lam_X)"),
]
NO_MAPS = [
    ("X", "(I * X)"),
    ("(X * ((Y * Z) * I))", "((X * Y) * (Z * I))"),
]
DEMO_STEP_BOUND = 12
DEMO_SIZE_SLACK = 6


def run_demo(out: Callable[..., None]) -> bool:
    ok = True

    def verdict(good: bool, text: str) -> None:
        nonlocal ok
        ok &= good
        out(("  " if good else "  UNEXPECTED: ") + text)

    out("Parallel maps that are not derivably equal")
    for fs, gs in INEQUALITIES:
        f, g = _typed_map(fs), _typed_map(gs)
        out(f"{f}  vs  {g}  : {dom(f)} => {cod(f)}")
        w = separate(f, g)
        verdict(w is not None, f"SEPARATED at {w}" if w else "INDISTINGUISHABLE")
        verdict(decide_equal(f, g) is None, "coherence does not apply (no normal-form endpoint)")

    out("")
    out("Terms with equal normal forms but no map between them")
    pairs = []
    for as_, bs in NO_MAPS:
        a, b = parse_term(as_), parse_term(bs)
        pairs.append((a, b))
        out(f"{a}  =>  {b}")
        r = search_maps(a, b, size(a) + DEMO_SIZE_SLACK, DEMO_STEP_BOUND)
        good = nf(a) == nf(b) and r.verdict == "exhausted"
        verdict(good, f"NF-EQUAL, SEARCH EXHAUSTED (bound {DEMO_STEP_BOUND})"
                      f"  [nf {nf(a)}, term size <= {r.max_term_size}, {r.explored} terms]")

    out("")
    out("Normal forms and reverse normal forms agree")
    pairs += [(dom(_typed_map(fs)), cod(_typed_map(fs))) for fs, _ in INEQUALITIES]
    for a, b in pairs:
        same, same_rev = nf(a) == nf(b), nfrev(a) == nfrev(b)
        verdict(same == same_rev, f"{a} / {b}: nf equal {same}, nfrev equal {same_rev}: "
                                  + ("AGREE" if same == same_rev else "DISAGREE"))

    out("")
    out("Coherence: nm equals the shortest rewrite into the normal form")
    terms = dict.fromkeys(t for pair in pairs for t in pair)
    for a in terms:
        target = emb(nf(a))
        r = search_maps(a, target, size(a) + 2, 2 * size(a) + 2)
        f = steps_to_map(a, r.steps) if r.found else nm(a)
        p = coherence_proof(f, nf(a))
        try:
            e = K.check_proof(p)
            good = (e.lhs, e.rhs) == (nm(a), f)
        except K.KernelError:
            good = False
        verdict(good, f"nm at {a}: {'KERNEL OK' if good else 'KERNEL REJECTED'}"
                      f" ({_plural(len(r.steps or ()), 'step')}, {K.proof_size(p)} proof nodes)")
    out("")
    out("ALL VERDICTS AS EXPECTED" if ok else "SOME VERDICTS FAILED")
    return ok


def _plural(k: int, word: str) -> str:
    return f"{k} {word}" if k == 1 else f"{k} {word}s"


def cmd_demo(args, out: _Out) -> int:
    return OK if run_demo(out) else FAIL


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skewmon", description="Free left skew-monoidal categories.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="normal form and reverse normal form of a term")
    p.add_argument("term")
    p.set_defaults(run=cmd_normalize)

    p = sub.add_parser("canonical-map", help="the normalizing map nm of a term")
    p.add_argument("term")
    p.add_argument("--rev", action="store_true", help="the map from the reverse normal form instead")
    p.set_defaults(run=cmd_canonical_map)

    p = sub.add_parser("check-map", help="type-check a map expression")
    p.add_argument("map")
    p.set_defaults(run=cmd_check_map)

    p = sub.add_parser("check-proof", help="run the kernel on a proof file")
    p.add_argument("file")
    p.set_defaults(run=cmd_check_proof)

    p = sub.add_parser("decide", help="prove two parallel maps equal, or separate them")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--proof-out", metavar="FILE", help="write the equality proof here")
    p.set_defaults(run=cmd_decide)

    p = sub.add_parser("search", help="bounded search for a rewrite from one term to another")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--max-term-size", type=int, default=None, help="default: size of A plus 4")
    p.add_argument("--max-steps", type=int, default=12)
    p.set_defaults(run=cmd_search)

    p = sub.add_parser("eval", help="evaluate a map in a model")
    p.add_argument("map")
    p.add_argument("--model", choices=("pointed", "nat"), default="pointed")
    p.add_argument("--n", type=int, default=0, help="unit value for the nat model")
    p.add_argument("--valuation", metavar="FILE")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("separate", help="look for a pointed-set valuation distinguishing two maps")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--valuation", metavar="FILE", help="try only this valuation")
    p.set_defaults(run=cmd_separate)

    p = sub.add_parser("demo", help="reproduce the worked examples")
    p.set_defaults(run=cmd_demo)
    return ap


def main(argv: list[str] | None = None, stdout: TextIO | None = None) -> int:
    out = _Out(stdout or sys.stdout)
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out)
    except (ParseError, TypingError, UnboundVariable, ValueError, OSError) as exc:
        msg = f"unbound variable {exc.args[0]}" if isinstance(exc, UnboundVariable) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
