"""Canonical normalizing maps and constructive coherence proofs.

``nm(a)`` rewrites ``a`` into ``emb(nf(a))``; ``nmrev(a)`` rewrites
``embrev(nfrev(a))`` into ``a``.  The proof builders below produce
derivations, checked rule by rule as they are assembled, of

* ``nmx(dom f, n) == nmx(cod f, n) . (f * id)``        (``main_lemma``)
* ``nm(dom f) == nm(cod f) . f``                       (``nm_natural``)
* ``nm(emb n) == id``                                  (``nm_emb_id``)
* ``nm(dom f) == f`` whenever ``cod f == emb n``       (``coherence``)

and of their mirror images for maps out of reverse normal forms.
"""
from __future__ import annotations

from skewmon import kernel as K
from skewmon.calc import Calc
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
    factors,
)
from skewmon.terms import (
    I,
    J,
    JR,
    NormalForm,
    RevNormalForm,
    Tensor,
    Term,
    Unit,
    Var,
    emb,
    embrev,
    is_emb_image,
    is_embrev_image,
    nf,
    nfrev,
    nfx,
    nfxr,
)
from skewmon.thm import (
    Thm,
    axiom,
    comp_cong,
    id_left,
    id_right,
    interchange,
    refl,
    split_tensor,
    sym,
    tensor_cong,
    trans,
)


class NotNormalForm(ValueError):
    """The codomain of a map is not the embedding of the given normal form."""


class NotReverseNormalForm(ValueError):
    """The domain of a map is not the embedding of the given reverse normal form."""


# -- canonical maps -------------------------------------------------------------


def nmx(a: Term, n: NormalForm) -> MapExpr:
    """The map ``a * emb(n) => emb(nfx(a, n))``."""
    if isinstance(a, Var):
        return Id(Tensor(a, emb(n)))
    if isinstance(a, Unit):
        return Lam(emb(n))
    return comp(
        nmx(a.left, nfx(a.right, n)),
        TensorM(Id(a.left), nmx(a.right, n)),
        Alpha(a.left, a.right, emb(n)),
    )


def nm(a: Term) -> MapExpr:
    """Canonical normalizing map ``a => emb(nf(a))``."""
    return Comp(nmx(a, J), Rho(a))


def nmxr(a: Term, r: RevNormalForm) -> MapExpr:
    """The map ``embrev(nfxr(a, r)) => embrev(r) * a``."""
    er = embrev(r)
    if isinstance(a, Var):
        return Id(Tensor(er, a))
    if isinstance(a, Unit):
        return Rho(er)
    return comp(
        Alpha(er, a.left, a.right),
        TensorM(nmxr(a.left, r), Id(a.right)),
        nmxr(a.right, nfxr(a.left, r)),
    )


def nmrev(a: Term) -> MapExpr:
    """Canonical map ``embrev(nfrev(a)) => a``."""
    return Comp(Lam(a), nmxr(a, JR))


# -- into normal forms ----------------------------------------------------------


def main_lemma(f: MapExpr, n: NormalForm) -> Thm:
    """``nmx(dom f, n) == nmx(cod f, n) . (f * id)``, by induction on ``f``."""
    e = emb(n)
    ide = Id(e)
    match f:
        case Id(a):
            goal = Comp(nmx(a, n), TensorM(f, ide))
            return Calc(nmx(a, n)).struct(goal).qed(goal)

        case Comp(g, h):
            c = Calc(nmx(dom(h), n))
            c.by(main_lemma(h, n))
            c.rw(main_lemma(g, n), path="L")
            goal = Comp(nmx(cod(g), n), TensorM(f, ide))
            return c.struct(goal).qed(goal)

        case TensorM(g, h):
            a, b, c_, d = dom(g), dom(h), cod(g), cod(h)
            n1 = nfx(b, n)
            ih_h = main_lemma(h, n)
            ih_g = main_lemma(g, n1)
            start = Comp(nmx(Tensor(c_, d), n), TensorM(f, ide))
            calc = Calc(start)
            calc.seg(axiom(K.NatAlpha(g, h, ide)))
            calc.struct(comp(
                nmx(c_, n1),
                TensorM(Id(c_), Comp(nmx(d, n), TensorM(h, ide))),
                TensorM(g, Id(Tensor(b, e))),
                Alpha(a, b, e),
            ))
            calc.rw(sym(ih_h), path="RLR")
            calc.seg(interchange(g, nmx(b, n)), at=len(factors(nmx(c_, n1))))
            calc.seg(sym(ih_g), at=0)
            calc.struct(nmx(Tensor(a, b), n))
            return sym(calc.qed())

        case Lam(a):
            calc = Calc(nmx(Tensor(I, a), n))
            calc.seg(axiom(K.NatLam(nmx(a, n))), at=0)
            calc.seg(axiom(K.LawC(a, e)), at=len(factors(nmx(a, n))))
            goal = Comp(nmx(a, n), TensorM(f, ide))
            return calc.struct(goal).qed(goal)

        case Rho(a):
            calc = Calc(Comp(nmx(Tensor(a, I), n), TensorM(f, ide)))
            calc.seg(sym(axiom(K.LawB(a, e))), at=len(factors(nmx(a, n))))
            calc.struct(nmx(a, n))
            return sym(calc.qed())

        case Alpha(a, b, c_):
            m = nfx(c_, n)
            k = nfx(b, m)
            n_a = len(factors(nmx(a, k)))
            calc = Calc(nmx(Tensor(Tensor(a, b), c_), n))
            calc.struct(comp(
                nmx(a, k),
                TensorM(Id(a), nmx(b, m)),
                Alpha(a, b, emb(m)),
                TensorM(TensorM(Id(a), Id(b)), nmx(c_, n)),
                Alpha(Tensor(a, b), c_, e),
            ))
            calc.seg(axiom(K.NatAlpha(Id(a), Id(b), nmx(c_, n))), at=n_a + 1)
            calc.seg(axiom(K.LawE(a, b, c_, e)), at=n_a + 2)
            goal = Comp(nmx(Tensor(a, Tensor(b, c_)), n), TensorM(f, ide))
            return calc.struct(goal).qed(goal)

    raise TypeError(f"not a map expression: {f!r}")


def nm_natural(f: MapExpr) -> Thm:
    """``nm(dom f) == nm(cod f) . f``."""
    a, b = dom(f), cod(f)
    calc = Calc(Comp(nm(b), f))
    calc.seg(axiom(K.NatRho(f)), at=len(factors(nmx(b, J))))
    calc.seg(sym(main_lemma(f, J)), at=0)
    calc.struct(nm(a))
    return sym(calc.qed())


def nm_emb_id(n: NormalForm) -> Thm:
    """``nm(emb n) == id``, by induction on ``n``."""
    if n.is_nil:
        return axiom(K.LawA())
    x, e1 = Var(n.head), emb(n.tail)
    a = Tensor(x, e1)
    calc = Calc(nm(a))
    calc.seg(axiom(K.LawD(x, e1)), at=2)
    calc.struct(TensorM(Id(x), nm(e1)))
    calc.by(tensor_cong(refl(Id(x)), nm_emb_id(n.tail)))
    calc.by(axiom(K.TensorId(x, e1)))
    return calc.qed(Id(a))


def coherence(f: MapExpr, n: NormalForm) -> Thm:
    """``nm(dom f) == f`` for any ``f`` into ``emb(n)``."""
    check_map(f)
    if cod(f) != emb(n):
        raise NotNormalForm(f"codomain {cod(f)} of {f} is not emb({n}) = {emb(n)}")
    return trans(nm_natural(f), comp_cong(nm_emb_id(n), refl(f)), id_left(f))


def main_lemma_proof(f: MapExpr, n: NormalForm) -> K.EqProof:
    check_map(f)
    return main_lemma(f, n).proof


def nm_natural_proof(f: MapExpr) -> K.EqProof:
    check_map(f)
    return nm_natural(f).proof


def nm_emb_id_proof(n: NormalForm) -> K.EqProof:
    return nm_emb_id(n).proof


def coherence_proof(f: MapExpr, n: NormalForm) -> K.EqProof:
    return coherence(f, n).proof


def _require_parallel(f: MapExpr, g: MapExpr) -> None:
    check_map(f)
    check_map(g)
    if dom(f) != dom(g) or cod(f) != cod(g):
        raise ValueError(
            f"maps are not parallel: {dom(f)} => {cod(f)} vs {dom(g)} => {cod(g)}"
        )


def decide_equal_into_nf(f: MapExpr, g: MapExpr) -> K.EqProof | None:
    """A derivation of ``f == g`` when both land in a normal form, else None.

    None is "not applicable", never a claim that the maps differ.
    """
    _require_parallel(f, g)
    n = is_emb_image(cod(f))
    if n is None:
        return None
    return trans(sym(coherence(f, n)), coherence(g, n)).proof


# -- out of reverse normal forms ------------------------------------------------


def main_lemma_rev(f: MapExpr, r: RevNormalForm) -> Thm:
    """``nmxr(cod f, r) == (id * f) . nmxr(dom f, r)``, by induction on ``f``."""
    er = embrev(r)
    idr = Id(er)
    match f:
        case Id(a):
            goal = Comp(TensorM(idr, f), nmxr(a, r))
            return Calc(nmxr(a, r)).struct(goal).qed(goal)

        case Comp(g, h):
            calc = Calc(nmxr(cod(g), r))
            calc.by(main_lemma_rev(g, r))
            calc.rw(main_lemma_rev(h, r), path="R")
            goal = Comp(TensorM(idr, f), nmxr(dom(h), r))
            return calc.struct(goal).qed(goal)

        case TensorM(g, h):
            a, b, c_, d = dom(g), dom(h), cod(g), cod(h)
            r1 = nfxr(a, r)
            ih_g = main_lemma_rev(g, r)
            ih_h = main_lemma_rev(h, r1)
            calc = Calc(Comp(TensorM(idr, f), nmxr(Tensor(a, b), r)))
            calc.seg(sym(axiom(K.NatAlpha(idr, g, h))), at=0)
            calc.struct(comp(
                Alpha(er, c_, d),
                TensorM(Comp(TensorM(idr, g), nmxr(a, r)), h),
                nmxr(b, r1),
            ))
            calc.rw(sym(ih_g), path="RLL")
            calc.rw(split_tensor(nmxr(c_, r), h), path="RL")
            calc.seg(sym(ih_h), at=2)
            calc.struct(nmxr(Tensor(c_, d), r))
            return sym(calc.qed())

        case Lam(a):
            calc = Calc(Comp(TensorM(idr, f), nmxr(Tensor(I, a), r)))
            calc.seg(sym(axiom(K.LawB(er, a))), at=0)
            calc.struct(nmxr(a, r))
            return sym(calc.qed())

        case Rho(a):
            calc = Calc(nmxr(Tensor(a, I), r))
            calc.seg(sym(axiom(K.NatRho(nmxr(a, r)))), at=1)
            calc.seg(axiom(K.LawD(er, a)), at=0)
            goal = Comp(TensorM(idr, f), nmxr(a, r))
            return calc.struct(goal).qed(goal)

        case Alpha(a, b, c_):
            r1 = nfxr(a, r)
            r2 = nfxr(b, r1)
            calc = Calc(Comp(TensorM(idr, f), nmxr(Tensor(Tensor(a, b), c_), r)))
            calc.struct(comp(
                TensorM(idr, f),
                Alpha(er, Tensor(a, b), c_),
                TensorM(Alpha(er, a, b), Id(c_)),
                TensorM(TensorM(nmxr(a, r), Id(b)), Id(c_)),
                TensorM(nmxr(b, r1), Id(c_)),
                nmxr(c_, r2),
            ))
            calc.seg(sym(axiom(K.LawE(er, a, b, c_))), at=0)
            calc.seg(axiom(K.NatAlpha(nmxr(a, r), Id(b), Id(c_))), at=1)
            calc.struct(nmxr(Tensor(a, Tensor(b, c_)), r))
            return sym(calc.qed())

    raise TypeError(f"not a map expression: {f!r}")


def nm_natural_rev(f: MapExpr) -> Thm:
    """``nmrev(cod f) == f . nmrev(dom f)``."""
    a, b = dom(f), cod(f)
    calc = Calc(nmrev(b))
    calc.seg(main_lemma_rev(f, JR), at=1)
    calc.seg(axiom(K.NatLam(f)), at=0)
    goal = Comp(f, nmrev(a))
    return calc.struct(goal).qed(goal)


def nmrev_emb_id(r: RevNormalForm) -> Thm:
    """``nmrev(embrev r) == id``."""
    if r.is_nil:
        return axiom(K.LawA())
    e1, x = embrev(r.init), Var(r.last)
    a = Tensor(e1, x)
    calc = Calc(nmrev(a))
    calc.seg(axiom(K.LawC(e1, x)), at=0)
    calc.struct(TensorM(nmrev(e1), Id(x)))
    calc.by(tensor_cong(nmrev_emb_id(r.init), refl(Id(x))))
    calc.by(axiom(K.TensorId(e1, x)))
    return calc.qed(Id(a))


def coherence_rev(f: MapExpr, r: RevNormalForm) -> Thm:
    """``nmrev(cod f) == f`` for any ``f`` out of ``embrev(r)``."""
    check_map(f)
    if dom(f) != embrev(r):
        raise NotReverseNormalForm(f"domain {dom(f)} of {f} is not embrev({r}) = {embrev(r)}")
    return trans(nm_natural_rev(f), comp_cong(refl(f), nmrev_emb_id(r)), sym(id_right(f)))


def coherence_rev_proof(f: MapExpr, r: RevNormalForm) -> K.EqProof:
    return coherence_rev(f, r).proof


def decide_equal_from_rev_nf(f: MapExpr, g: MapExpr) -> K.EqProof | None:
    """A derivation of ``f == g`` when both start at a reverse normal form, else None."""
    _require_parallel(f, g)
    r = is_embrev_image(dom(f))
    if r is None:
        return None
    return trans(sym(coherence_rev(f, r)), coherence_rev(g, r)).proof


def decide_equal(f: MapExpr, g: MapExpr) -> K.EqProof | None:
    """Try maps into a normal form, then maps out of a reverse normal form."""
    p = decide_equal_into_nf(f, g)
    if p is None:
        p = decide_equal_from_rev_nf(f, g)
    return p


__all__ = [
    "NotNormalForm", "NotReverseNormalForm",
    "nmx", "nm", "nmxr", "nmrev",
    "main_lemma", "nm_natural", "nm_emb_id", "coherence",
    "main_lemma_proof", "nm_natural_proof", "nm_emb_id_proof", "coherence_proof",
    "decide_equal_into_nf", "main_lemma_rev", "nm_natural_rev", "nmrev_emb_id",
    "coherence_rev", "coherence_rev_proof", "decide_equal_from_rev_nf", "decide_equal",
    "nf", "nfrev",
]
