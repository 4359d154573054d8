"""Forward construction of derivations.

A ``Thm`` pairs a derivation tree with its conclusion.  Each constructor
runs the kernel's single-rule check, so a mistake in a proof script fails at
the step that made it.  Whole trees are still re-checked from scratch by
``kernel.check_proof`` wherever a result is reported.
"""
from __future__ import annotations

from dataclasses import dataclass

from skewmon import kernel as K
from skewmon.maps import Comp, Id, MapExpr, TensorM, cod, comp, dom, factors


@dataclass(frozen=True, slots=True)
class Thm:
    proof: K.EqProof
    lhs: MapExpr
    rhs: MapExpr

    @property
    def equation(self) -> K.Equation:
        return K.Equation(self.lhs, self.rhs)


def _mk(node: K.EqProof, *given: Thm) -> Thm:
    e = K.conclude(node, [t.equation for t in given])
    return Thm(node, e.lhs, e.rhs)


def axiom(node: K.EqProof) -> Thm:
    """A leaf rule instance (anything without premises)."""
    return _mk(node)


def refl(f: MapExpr) -> Thm:
    return _mk(K.Refl(f))


def sym(t: Thm) -> Thm:
    if isinstance(t.proof, K.Refl):
        return t
    if isinstance(t.proof, K.Sym):
        return Thm(t.proof.p, t.rhs, t.lhs)
    return Thm(K.Sym(t.proof), t.rhs, t.lhs)


def trans(*ts: Thm) -> Thm:
    """Chain equalities left to right; reflexivity steps are dropped."""
    out = ts[0]
    for t in ts[1:]:
        if out.rhs != t.lhs:
            raise K.KernelError(f"Trans: middle terms differ: {out.rhs} vs {t.lhs}")
        if isinstance(t.proof, K.Refl):
            continue
        if isinstance(out.proof, K.Refl):
            out = t
            continue
        out = Thm(K.Trans(out.proof, t.proof), out.lhs, t.rhs)
    return out


def comp_cong(t1: Thm, t2: Thm) -> Thm:
    return _mk(K.CompCong(t1.proof, t2.proof), t1, t2)


def tensor_cong(t1: Thm, t2: Thm) -> Thm:
    return _mk(K.TensorCong(t1.proof, t2.proof), t1, t2)


def id_left(f: MapExpr) -> Thm:
    """``id . f == f``."""
    return axiom(K.IdL(f))


def id_right(f: MapExpr) -> Thm:
    """``f == f . id``."""
    return axiom(K.IdR(f))


# -- positions inside map expressions ----------------------------------------
# A map position is a string over "L"/"R" descending into the two children of
# Comp or TensorM.


def map_at(f: MapExpr, path: str) -> MapExpr:
    for d in path:
        if not isinstance(f, (Comp, TensorM)):
            raise ValueError(f"position {path!r} leaves the map")
        f = f.f if d == "L" else f.g
    return f


def find(f: MapExpr, target: MapExpr, prefix: str = "") -> str | None:
    """First position of ``target`` in ``f`` in preorder."""
    if f == target:
        return prefix
    if isinstance(f, (Comp, TensorM)):
        hit = find(f.f, target, prefix + "L")
        if hit is None:
            hit = find(f.g, target, prefix + "R")
        return hit
    return None


def congr(f: MapExpr, path: str, t: Thm) -> Thm:
    """Lift ``t`` to the whole of ``f``, whose subterm at ``path`` is ``t.lhs``."""
    if not path:
        if f != t.lhs:
            raise ValueError(f"subterm {f} does not match {t.lhs}")
        return t
    if not isinstance(f, (Comp, TensorM)):
        raise ValueError(f"position {path!r} leaves the map")
    cong = comp_cong if isinstance(f, Comp) else tensor_cong
    if path[0] == "L":
        return cong(congr(f.f, path[1:], t), refl(f.g))
    return cong(refl(f.f), congr(f.g, path[1:], t))


# -- associativity ------------------------------------------------------------


def to_chain(f: MapExpr) -> Thm:
    """``f == comp(*factors(f))`` by associativity."""
    if not isinstance(f, Comp):
        return refl(f)
    if isinstance(f.f, Comp):
        a, b, c = f.f.f, f.f.g, f.g
        return trans(axiom(K.CompAssoc(a, b, c)), to_chain(Comp(a, Comp(b, c))))
    return comp_cong(refl(f.f), to_chain(f.g))


def reassoc(f: MapExpr, g: MapExpr) -> Thm:
    """``f == g`` for two bracketings of the same sequence of factors."""
    if factors(f) != factors(g):
        raise ValueError(f"not a rebracketing: {f} vs {g}")
    return trans(to_chain(f), sym(to_chain(g)))


def append_chain(s: MapExpr, t: MapExpr) -> Thm:
    """``s . t == chain`` when ``s`` is already a right-associated chain."""
    if isinstance(s, Comp):
        a, b = s.f, s.g
        return trans(axiom(K.CompAssoc(a, b, t)), comp_cong(refl(a), append_chain(b, t)))
    return refl(Comp(s, t))


# -- functoriality of the tensor ----------------------------------------------


def split_tensor(f: MapExpr, g: MapExpr) -> Thm:
    """``f * g == (f * id) . (id * g)``: the right factor acts first."""
    return trans(
        tensor_cong(id_right(f), sym(id_left(g))),
        axiom(K.TensorComp(f, Id(dom(f)), Id(cod(g)), g)),
    )


def split_tensor_left_first(f: MapExpr, g: MapExpr) -> Thm:
    """``f * g == (id * g) . (f * id)``: the left factor acts first."""
    return trans(
        tensor_cong(sym(id_left(f)), id_right(g)),
        axiom(K.TensorComp(Id(cod(f)), f, g, Id(dom(g)))),
    )


def interchange(f: MapExpr, g: MapExpr) -> Thm:
    """``(id * g) . (f * id) == (f * id) . (id * g)``."""
    return trans(sym(split_tensor_left_first(f, g)), split_tensor(f, g))


__all__ = [
    "Thm", "axiom", "refl", "sym", "trans", "comp_cong", "tensor_cong",
    "id_left", "id_right", "map_at", "find", "congr", "to_chain", "reassoc",
    "append_chain", "split_tensor", "split_tensor_left_first", "interchange", "comp",
]
