"""Exhaustive and random generation of terms, maps and derivations."""
from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator, Sequence

from skewmon import kernel as K
from skewmon.maps import Alpha, Comp, Id, Lam, MapExpr, Rho, TensorM, cod, dom
from skewmon.rewriting import steps_to_map, valid_steps, apply_step
from skewmon.terms import I, NormalForm, RevNormalForm, Tensor, Term, Var
from skewmon.thm import Thm, axiom, comp_cong, congr, map_at, refl, sym, tensor_cong, trans

DEFAULT_VARS = ("X", "Y", "Z")


def all_terms(max_depth: int, names: Sequence[str] = DEFAULT_VARS) -> list[Term]:
    """Every term of depth at most ``max_depth`` (leaves have depth 1)."""
    return list(_terms_upto_depth(max_depth, tuple(names)))


@lru_cache(maxsize=None)
def _terms_upto_depth(d: int, names: tuple[str, ...]) -> tuple[Term, ...]:
    if d <= 0:
        return ()
    leaves = tuple(Var(x) for x in names) + (I,)
    if d == 1:
        return leaves
    smaller = _terms_upto_depth(d - 1, names)
    exact_smaller = set(smaller) - set(_terms_upto_depth(d - 2, names))
    out = list(smaller)
    for a, b in itertools.product(smaller, repeat=2):
        if a in exact_smaller or b in exact_smaller:
            out.append(Tensor(a, b))
    return tuple(out)


@lru_cache(maxsize=None)
def terms_of_size(s: int, names: tuple[str, ...] = DEFAULT_VARS) -> tuple[Term, ...]:
    """Every term with exactly ``s`` nodes."""
    if s == 1:
        return tuple(Var(x) for x in names) + (I,)
    out = []
    for k in range(1, s - 1):
        for a in terms_of_size(k, names):
            for b in terms_of_size(s - 1 - k, names):
                out.append(Tensor(a, b))
    return tuple(out)


def all_normal_forms(max_len: int, names: Sequence[str] = DEFAULT_VARS) -> list[NormalForm]:
    return [NormalForm(t) for k in range(max_len + 1) for t in itertools.product(names, repeat=k)]


def all_rev_normal_forms(max_len: int, names: Sequence[str] = DEFAULT_VARS) -> list[RevNormalForm]:
    return [RevNormalForm(t) for k in range(max_len + 1) for t in itertools.product(names, repeat=k)]


def all_maps(max_size: int, names: Sequence[str] = DEFAULT_VARS) -> list[MapExpr]:
    """Every well-typed map expression of syntax size at most ``max_size``."""
    names = tuple(names)
    return [f for s in range(2, max_size + 1) for f in _maps_of_size(s, names)]


@lru_cache(maxsize=None)
def _maps_of_size(s: int, names: tuple[str, ...]) -> tuple[MapExpr, ...]:
    out: list[MapExpr] = []
    for a in terms_of_size(s - 1, names) if s >= 2 else ():
        out += [Id(a), Lam(a), Rho(a)]
    for ka in range(1, s - 2):
        for kb in range(1, s - 1 - ka):
            kc = s - 1 - ka - kb
            for a, b, c in itertools.product(
                terms_of_size(ka, names), terms_of_size(kb, names), terms_of_size(kc, names)
            ):
                out.append(Alpha(a, b, c))
    for k in range(2, s - 2):
        lefts, rights = _maps_of_size(k, names), _maps_of_size(s - 1 - k, names)
        by_cod: dict[Term, list[MapExpr]] = {}
        for g in rights:
            by_cod.setdefault(cod(g), []).append(g)
        for f in lefts:
            out += [Comp(f, g) for g in by_cod.get(dom(f), ())]
            out += [TensorM(f, g) for g in rights]
    return tuple(out)


# -- random generation -----------------------------------------------------------


def random_term(rng: random.Random, max_depth: int, names: Sequence[str] = DEFAULT_VARS) -> Term:
    if max_depth <= 1 or rng.random() < 0.3:
        return rng.choice([Var(x) for x in names] + [I])
    return Tensor(random_term(rng, max_depth - 1, names), random_term(rng, max_depth - 1, names))


def random_map(rng: random.Random, max_depth: int = 3, max_steps: int = 4,
               names: Sequence[str] = DEFAULT_VARS) -> MapExpr:
    """A random composite of whiskered steps, sometimes tensored with another."""
    a = random_term(rng, max_depth, names)
    steps = []
    for _ in range(rng.randint(0, max_steps)):
        choices = valid_steps(a)
        # keep terms small: unit introduction is rarer than the contracting rules
        weights = [0.3 if s.rule == "rho" else 1.0 for s in choices]
        s = rng.choices(choices, weights)[0]
        steps.append(s)
        a = apply_step(s)
    f = steps_to_map(steps[0].on if steps else a, steps)
    if rng.random() < 0.25:
        f = TensorM(f, random_map(rng, max(1, max_depth - 1), max_steps // 2, names))
    return f


def _rule_candidates(s: MapExpr) -> list[K.EqProof]:
    """Axiom instances that may have ``s`` as one side (filtered later)."""
    out: list[K.EqProof] = [K.IdL(s), K.IdR(s)]
    match s:
        case Comp(f, g):
            out += [K.IdL(g), K.IdR(f), K.NatLam(f), K.NatRho(g)]
            if isinstance(f, Comp):
                out.append(K.CompAssoc(f.f, f.g, g))
            if isinstance(g, Comp):
                out.append(K.CompAssoc(f, g.f, g.g))
                out.append(K.LawE(*_law_e_args(g.g)))
            if isinstance(f, TensorM) and isinstance(g, TensorM):
                out.append(K.TensorComp(f.f, g.f, f.g, g.g))
            if isinstance(g, TensorM):
                out.append(K.NatLam(g.g))
                if isinstance(g.f, TensorM):
                    out.append(K.NatAlpha(g.f.f, g.f.g, g.g))
            if isinstance(f, TensorM):
                out.append(K.NatRho(f.f))
                if isinstance(f.g, TensorM):
                    out.append(K.NatAlpha(f.f, f.g.f, f.g.g))
            if isinstance(f, Lam) and isinstance(f.obj, Tensor):
                out.append(K.LawC(f.obj.left, f.obj.right))
            if isinstance(f, Alpha):
                out.append(K.LawD(f.a, f.b))
                if isinstance(f.c, Tensor):
                    out.append(K.LawE(f.a, f.b, f.c.left, f.c.right))
            if isinstance(g, Rho):
                out.append(K.LawA())
            if isinstance(f, TensorM) and isinstance(f.g, Lam) and isinstance(f.f, Id):
                out.append(K.LawB(f.f.obj, f.g.obj))
        case TensorM(f, g):
            if isinstance(f, Comp) and isinstance(g, Comp):
                out.append(K.TensorComp(f.f, f.g, g.f, g.g))
            if isinstance(f, Id) and isinstance(g, Id):
                out.append(K.TensorId(f.obj, g.obj))
            if isinstance(f, Lam):
                out.append(K.LawC(f.obj, dom(g)))
            if isinstance(f, Id) and isinstance(g, Rho):
                out.append(K.LawD(f.obj, g.obj))
            if isinstance(f, Id) and isinstance(g, Alpha):
                out.append(K.LawE(f.obj, g.a, g.b, g.c))
        case Id(a):
            if a == I:
                out.append(K.LawA())
            if isinstance(a, Tensor):
                out += [K.TensorId(a.left, a.right), K.LawB(a.left, a.right)]
    return out


def _law_e_args(last: MapExpr) -> tuple[Term, Term, Term, Term]:
    # the rightmost factor of the LawE right side is alpha_(a,b,c) * id_d
    if isinstance(last, TensorM) and isinstance(last.f, Alpha) and isinstance(last.g, Id):
        return last.f.a, last.f.b, last.f.c, last.g.obj
    return I, I, I, I


def rewrites_at(s: MapExpr) -> list[Thm]:
    """Every single axiom use (either orientation) whose left side is ``s``."""
    out = []
    seen = set()
    for node in _rule_candidates(s):
        try:
            lhs, rhs = K.law_sides(node)
        except (TypeError, AttributeError):
            continue
        for side, flip in ((lhs, False), (rhs, True)):
            if side == s and (node, flip) not in seen:
                try:
                    t = axiom(node)
                except K.KernelError:
                    continue
                seen.add((node, flip))
                out.append(sym(t) if flip else t)
    return out


def _map_positions(f: MapExpr, prefix: str = "") -> Iterator[str]:
    yield prefix
    if isinstance(f, (Comp, TensorM)):
        yield from _map_positions(f.f, prefix + "L")
        yield from _map_positions(f.g, prefix + "R")


def random_rewrite_chain(rng: random.Random, f: MapExpr, steps: int) -> Thm:
    """Start at ``f`` and apply ``steps`` random axiom rewrites anywhere inside it."""
    t = refl(f)
    for _ in range(steps):
        cur = t.rhs
        positions = list(_map_positions(cur))
        rng.shuffle(positions)
        for path in positions:
            options = rewrites_at(map_at(cur, path))
            # prefer rules other than the always-available identity insertions
            rich = [o for o in options if not isinstance(o.proof, (K.IdL, K.IdR, K.Sym))
                    or rng.random() < 0.15]
            if rich:
                t = trans(t, congr(cur, path, rng.choice(rich)))
                break
    return t


def random_proof(rng: random.Random, max_steps: int = 6) -> K.EqProof:
    """A random schema-valid derivation mixing every rule of the calculus."""
    return _random_thm(rng, max_steps, 2).proof


def _random_thm(rng: random.Random, max_steps: int, fuel: int) -> Thm:
    r = rng.random()
    if fuel > 0 and r < 0.15:
        t1, t2 = _random_thm(rng, max_steps, fuel - 1), _random_thm(rng, max_steps, fuel - 1)
        return tensor_cong(t1, t2)
    if fuel > 0 and r < 0.25:
        t2 = _random_thm(rng, max_steps, fuel - 1)
        g = t2.lhs
        # a random map out of cod g, composed on the left
        t1 = random_rewrite_chain(rng, _random_extension(rng, cod(g)), rng.randint(0, max_steps))
        return comp_cong(t1, t2)
    if r < 0.55:
        seed = random_axiom(rng)
        t = trans(seed, random_rewrite_chain(rng, seed.rhs, rng.randint(0, max_steps)))
    else:
        t = random_rewrite_chain(rng, random_map(rng), rng.randint(1, max_steps))
    return sym(t) if rng.random() < 0.3 else t


_AXIOMS = ("IdL", "IdR", "CompAssoc", "TensorId", "TensorComp", "NatLam", "NatRho",
           "NatAlpha", "LawA", "LawB", "LawC", "LawD", "LawE")


def random_axiom(rng: random.Random) -> Thm:
    """One instance of a randomly chosen axiom schema, in a random orientation."""
    name = rng.choice(_AXIOMS)
    tm = lambda: random_term(rng, 2)
    mp = lambda: random_map(rng, 2, 2)
    if name in ("IdL", "IdR", "NatLam", "NatRho"):
        node = K.RULES[name](mp())
    elif name == "NatAlpha":
        node = K.NatAlpha(mp(), mp(), mp())
    elif name == "CompAssoc":
        h = mp()
        g = _random_extension(rng, cod(h))
        f = _random_extension(rng, cod(g))
        node = K.CompAssoc(f, g, h)
    elif name == "TensorComp":
        f, g = mp(), mp()
        node = K.TensorComp(_random_extension(rng, cod(f)), f, _random_extension(rng, cod(g)), g)
    elif name == "LawA":
        node = K.LawA()
    elif name == "LawE":
        node = K.LawE(tm(), tm(), tm(), tm())
    elif name == "TensorId":
        node = K.TensorId(tm(), tm())
    else:
        node = K.RULES[name](tm(), tm())
    t = axiom(node)
    return sym(t) if rng.random() < 0.5 else t


def _random_extension(rng: random.Random, a: Term) -> MapExpr:
    """A random map out of ``a`` built from up to two steps."""
    steps = []
    start = a
    for _ in range(rng.randint(0, 2)):
        s = rng.choice(valid_steps(a))
        steps.append(s)
        a = apply_step(s)
    return steps_to_map(start, steps)
