"""Maps as rewrites: whiskered single steps, decomposition, bounded search.

A step applies one generator at one position of a term; ``step_to_map``
whiskers the generator with identities along the path.  ``decompose``
turns any well-typed map into the sequence of steps it performs, together
with a derivation that the map equals the composite of those steps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Literal

from skewmon import kernel as K
from skewmon.maps import (
    Alpha,
    Comp,
    Id,
    Lam,
    MapExpr,
    Rho,
    TensorM,
    check_map,
    cod,
    comp,
    dom,
)
from skewmon.terms import (
    I,
    Tensor,
    Term,
    Unit,
    nf,
    positions,
    replace_at,
    size,
    subterm,
)
from skewmon.thm import (
    Thm,
    append_chain,
    axiom,
    comp_cong,
    id_left,
    id_right,
    refl,
    split_tensor_left_first,
    sym,
    tensor_cong,
    trans,
)

RULES = ("lam", "rho", "alpha")
_RULE_RANK = {r: i for i, r in enumerate(RULES)}


class RedexMismatch(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class RewriteStep:
    rule: str
    at: str
    on: Term

    def __str__(self) -> str:
        return f"{self.rule}@{self.at}"

    def sort_key(self) -> tuple[int, str]:
        return (_RULE_RANK[self.rule], self.at)


def _generator(rule: str, redex: Term) -> MapExpr:
    if rule == "lam":
        if isinstance(redex, Tensor) and isinstance(redex.left, Unit):
            return Lam(redex.right)
    elif rule == "rho":
        return Rho(redex)
    elif rule == "alpha":
        if isinstance(redex, Tensor) and isinstance(redex.left, Tensor):
            return Alpha(redex.left.left, redex.left.right, redex.right)
    else:
        raise ValueError(f"unknown rule {rule!r}")
    raise RedexMismatch(f"{rule} does not apply to {redex}")


def _redex(s: RewriteStep) -> Term:
    try:
        return subterm(s.on, s.at)
    except ValueError:
        raise RedexMismatch(f"position {s.at!r} is not in {s.on}") from None


def apply_step(s: RewriteStep) -> Term:
    gen = _generator(s.rule, _redex(s))
    return replace_at(s.on, s.at, cod(gen))


def whisker(context: Term, path: str, f: MapExpr) -> MapExpr:
    """Tensor ``f`` with identities so that it acts at ``path`` inside ``context``."""
    if not path:
        return f
    assert isinstance(context, Tensor)
    if path[0] == "L":
        return TensorM(whisker(context.left, path[1:], f), Id(context.right))
    return TensorM(Id(context.left), whisker(context.right, path[1:], f))


def step_to_map(s: RewriteStep) -> MapExpr:
    return whisker(s.on, s.at, _generator(s.rule, _redex(s)))


def valid_steps(a: Term) -> list[RewriteStep]:
    """Every applicable step on ``a``, in tie-break order (rule, then position)."""
    out = []
    for pos in positions(a):
        sub = subterm(a, pos)
        if isinstance(sub, Tensor) and isinstance(sub.left, Unit):
            out.append(RewriteStep("lam", pos, a))
        out.append(RewriteStep("rho", pos, a))
        if isinstance(sub, Tensor) and isinstance(sub.left, Tensor):
            out.append(RewriteStep("alpha", pos, a))
    out.sort(key=RewriteStep.sort_key)
    return out


def run_steps(a: Term, steps: Iterable[RewriteStep]) -> Term:
    """Apply ``steps`` in order starting from ``a``; each must be stated on the current term."""
    for s in steps:
        if s.on != a:
            raise RedexMismatch(f"step {s} is stated on {s.on}, current term is {a}")
        a = apply_step(s)
    return a


def steps_to_map(a: Term, steps: Iterable[RewriteStep]) -> MapExpr:
    """Composite of the whiskered steps, right-associated; ``Id(a)`` when empty."""
    maps = [step_to_map(s) for s in steps]
    if not maps:
        return Id(a)
    return comp(*reversed(maps))


def format_steps(steps: Iterable[RewriteStep]) -> str:
    return "\n".join(str(s) for s in steps)


def parse_steps(a: Term, text: str) -> list[RewriteStep]:
    """Read ``rule@path`` lines starting from term ``a``."""
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        rule, _, path = line.partition("@")
        if rule not in RULES or set(path) - {"L", "R"}:
            raise ValueError(f"bad step line {line!r}")
        s = RewriteStep(rule, path, a)
        a = apply_step(s)
        out.append(s)
    return out


# -- decomposition ------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Decomposition:
    steps: tuple[RewriteStep, ...]
    thm: Thm

    @property
    def certificate(self) -> K.EqProof:
        return self.thm.proof

    @property
    def composite(self) -> MapExpr:
        return self.thm.rhs


def _join(s: MapExpr, t: MapExpr, s_empty: bool, t_empty: bool) -> Thm:
    """``s . t == chain`` for two step chains, either of which may be an identity."""
    if t_empty:
        return sym(id_right(s))
    if s_empty:
        return id_left(t)
    return append_chain(s, t)


def _whisker_left(chain: MapExpr, right: Term) -> Thm:
    """``chain * id == chain of (step * id)``."""
    idr = Id(right)
    if isinstance(chain, Id):
        return axiom(K.TensorId(chain.obj, right))
    if isinstance(chain, Comp):
        m, rest = chain.f, chain.g
        return trans(
            tensor_cong(refl(chain), id_right(idr)),
            axiom(K.TensorComp(m, rest, idr, idr)),
            comp_cong(refl(TensorM(m, idr)), _whisker_left(rest, right)),
        )
    return refl(TensorM(chain, idr))


def _whisker_right(left: Term, chain: MapExpr) -> Thm:
    """``id * chain == chain of (id * step)``."""
    idl = Id(left)
    if isinstance(chain, Id):
        return axiom(K.TensorId(left, chain.obj))
    if isinstance(chain, Comp):
        m, rest = chain.f, chain.g
        return trans(
            tensor_cong(id_right(idl), refl(chain)),
            axiom(K.TensorComp(idl, idl, m, rest)),
            comp_cong(refl(TensorM(idl, m)), _whisker_right(left, rest)),
        )
    return refl(TensorM(idl, chain))


def _decompose(f: MapExpr) -> tuple[list[RewriteStep], Thm]:
    match f:
        case Id():
            return [], refl(f)
        case Lam(a):
            return [RewriteStep("lam", "", Tensor(I, a))], refl(f)
        case Rho(a):
            return [RewriteStep("rho", "", a)], refl(f)
        case Alpha(a, b, c):
            return [RewriteStep("alpha", "", Tensor(Tensor(a, b), c))], refl(f)
        case Comp(f1, g1):
            sf, tf = _decompose(f1)
            sg, tg = _decompose(g1)
            t = trans(comp_cong(tf, tg), _join(tf.rhs, tg.rhs, not sf, not sg))
            return sg + sf, t
        case TensorM(f1, g1):
            sf, tf = _decompose(f1)
            sg, tg = _decompose(g1)
            left_ctx, right_ctx = cod(f1), dom(g1)
            wl = _whisker_left(tf.rhs, right_ctx)
            wr = _whisker_right(left_ctx, tg.rhs)
            t = trans(
                tensor_cong(tf, tg),
                split_tensor_left_first(tf.rhs, tg.rhs),
                comp_cong(wr, wl),
                _join(wr.rhs, wl.rhs, not sg, not sf),
            )
            steps = [RewriteStep(s.rule, "L" + s.at, Tensor(s.on, right_ctx)) for s in sf]
            steps += [RewriteStep(s.rule, "R" + s.at, Tensor(left_ctx, s.on)) for s in sg]
            return steps, t
    raise TypeError(f"not a map expression: {f!r}")


def decompose(f: MapExpr) -> Decomposition:
    """Split ``f`` into whiskered steps, tensors left factor first.

    The certificate proves ``f`` equal to ``steps_to_map(dom(f), steps)``.
    """
    check_map(f)
    steps, t = _decompose(f)
    return Decomposition(tuple(steps), t)


# -- bounded search -----------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SearchResult:
    verdict: Literal["found", "exhausted", "nf-mismatch"]
    steps: tuple[RewriteStep, ...] | None = None
    explored: int = 0
    max_term_size: int = 0
    max_steps: int = 0

    @property
    def found(self) -> bool:
        return self.verdict == "found"


# The search runs on prefix encodings of terms: "T" for a tensor, "I" for the
# unit and one private character per variable.  The length of a code is the
# size of its term and every step is a single splice.


def _encode(a: Term, table: dict[str, str]) -> str:
    out = []
    stack = [a]
    while stack:
        t = stack.pop()
        if isinstance(t, Tensor):
            out.append("T")
            stack.append(t.right)
            stack.append(t.left)
        elif isinstance(t, Unit):
            out.append("I")
        else:
            if t.name not in table:
                table[t.name] = chr(0x100 + len(table))
            out.append(table[t.name])
    return "".join(out)


def _spans(code: str) -> list[tuple[str, int, int, int]]:
    """(path, start, end, split) for every subterm in preorder; split = start of the right child."""
    out: list = []

    def walk(i: int, path: str) -> int:
        k = len(out)
        out.append(None)
        if code[i] == "T":
            j = walk(i + 1, path + "L")
            e = walk(j, path + "R")
            out[k] = (path, i, e, j)
            return e
        out[k] = (path, i, i + 1, -1)
        return i + 1

    walk(0, "")
    return out


def _coded_neighbours(code: str, bound: int) -> Iterator[tuple[str, str, str]]:
    """(rule, path, new code) in tie-break order."""
    spans = _spans(code)
    for path, s, e, _ in spans:
        if code[s] == "T" and code[s + 1] == "I":
            yield "lam", path, code[:s] + code[s + 2:]
    if len(code) + 2 <= bound:
        for path, s, e, _ in spans:
            yield "rho", path, code[:s] + "T" + code[s:e] + "I" + code[e:]
    for k, (path, s, e, j) in enumerate(spans):
        if code[s] == "T" and code[s + 1] == "T":
            j2 = spans[k + 1][3]
            # ((A * B) * C) -> (A * (B * C)): "TT" A B C becomes "T" A "T" B C
            yield "alpha", path, code[:s + 1] + code[s + 2:j2] + "T" + code[j2:]


def search_maps(
    a: Term, b: Term, max_term_size: int | None = None, max_steps: int = 12
) -> SearchResult:
    """Breadth-first search for a rewrite sequence from ``a`` to ``b``.

    Intermediate terms are limited to ``max_term_size`` nodes (default
    ``size(a) + 4``) and paths to ``max_steps`` steps.  ``exhausted`` only
    says that no path exists within those bounds.
    """
    if max_term_size is None:
        max_term_size = size(a) + 4
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    if max_term_size < max(size(a), size(b)):
        raise ValueError(
            f"max_term_size {max_term_size} is below the size of an endpoint "
            f"({size(a)}, {size(b)})"
        )
    bounds = dict(max_term_size=max_term_size, max_steps=max_steps)
    if nf(a) != nf(b):
        return SearchResult("nf-mismatch", **bounds)
    if a == b:
        return SearchResult("found", (), 1, **bounds)
    table: dict[str, str] = {}
    start, goal = _encode(a, table), _encode(b, table)
    parent: dict[str, tuple[str, str, str] | None] = {start: None}
    frontier = [start]
    for _ in range(max_steps):
        nxt: list[str] = []
        for code in frontier:
            for rule, path, new in _coded_neighbours(code, max_term_size):
                if new in parent:
                    continue
                parent[new] = (code, rule, path)
                if new == goal:
                    return SearchResult("found", _replay(a, parent, goal), len(parent), **bounds)
                nxt.append(new)
        if not nxt:
            break
        frontier = nxt
    return SearchResult("exhausted", None, len(parent), **bounds)


def _replay(a: Term, parent: dict, goal: str) -> tuple[RewriteStep, ...]:
    moves = []
    code = goal
    while parent[code] is not None:
        code, rule, path = parent[code]
        moves.append((rule, path))
    steps = []
    for rule, path in reversed(moves):
        s = RewriteStep(rule, path, a)
        a = apply_step(s)
        steps.append(s)
    return tuple(steps)
