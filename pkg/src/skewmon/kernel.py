"""Derivation trees for derivable equality of map expressions, and their checker.

One node class per inference rule.  Axiom nodes store only the maps or
object indices they are instantiated at; the checker rebuilds both sides.
Composites inside rule conclusions are right-associated, so a law written
``h . k . l`` means ``Comp(h, Comp(k, l))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from skewmon.maps import (
    Alpha,
    Comp,
    Id,
    Lam,
    MapExpr,
    Rho,
    TensorM,
    TypingError,
    cod,
    comp,
    dom,
)
from skewmon.terms import I, Tensor, Term


class KernelError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Equation:
    lhs: MapExpr
    rhs: MapExpr

    def __str__(self) -> str:
        return f"{self.lhs}  ==  {self.rhs}"


# -- structural rules --------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Refl:
    f: MapExpr


@dataclass(frozen=True, slots=True)
class Sym:
    p: EqProof


@dataclass(frozen=True, slots=True)
class Trans:
    p: EqProof
    q: EqProof


@dataclass(frozen=True, slots=True)
class CompCong:
    p: EqProof
    q: EqProof


@dataclass(frozen=True, slots=True)
class TensorCong:
    p: EqProof
    q: EqProof


# -- category and functor laws ----------------------------------------------


@dataclass(frozen=True, slots=True)
class IdL:
    f: MapExpr


@dataclass(frozen=True, slots=True)
class IdR:
    f: MapExpr


@dataclass(frozen=True, slots=True)
class CompAssoc:
    f: MapExpr
    g: MapExpr
    h: MapExpr


@dataclass(frozen=True, slots=True)
class TensorId:
    a: Term
    b: Term


@dataclass(frozen=True, slots=True)
class TensorComp:
    h: MapExpr
    f: MapExpr
    k: MapExpr
    g: MapExpr


# -- naturality ---------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class NatLam:
    f: MapExpr


@dataclass(frozen=True, slots=True)
class NatRho:
    f: MapExpr


@dataclass(frozen=True, slots=True)
class NatAlpha:
    f: MapExpr
    g: MapExpr
    h: MapExpr


# -- the five skew-monoidal laws ---------------------------------------------


@dataclass(frozen=True, slots=True)
class LawA:
    pass


@dataclass(frozen=True, slots=True)
class LawB:
    a: Term
    b: Term


@dataclass(frozen=True, slots=True)
class LawC:
    a: Term
    b: Term


@dataclass(frozen=True, slots=True)
class LawD:
    a: Term
    b: Term


@dataclass(frozen=True, slots=True)
class LawE:
    a: Term
    b: Term
    c: Term
    d: Term


EqProof = Union[
    Refl, Sym, Trans, CompCong, TensorCong,
    IdL, IdR, CompAssoc, TensorId, TensorComp,
    NatLam, NatRho, NatAlpha,
    LawA, LawB, LawC, LawD, LawE,
]

RULES: dict[str, type] = {
    cls.__name__: cls
    for cls in (
        Refl, Sym, Trans, CompCong, TensorCong,
        IdL, IdR, CompAssoc, TensorId, TensorComp,
        NatLam, NatRho, NatAlpha,
        LawA, LawB, LawC, LawD, LawE,
    )
}
STRUCTURAL = (Sym, Trans, CompCong, TensorCong)


def premises(node: EqProof) -> tuple[EqProof, ...]:
    if isinstance(node, Sym):
        return (node.p,)
    if isinstance(node, (Trans, CompCong, TensorCong)):
        return (node.p, node.q)
    return ()


def law_sides(node: EqProof) -> tuple[MapExpr, MapExpr]:
    """Both sides of a leaf rule instance, unchecked."""
    match node:
        case Refl(f):
            return f, f
        case IdL(f):
            return Comp(Id(cod(f)), f), f
        case IdR(f):
            return f, Comp(f, Id(dom(f)))
        case CompAssoc(f, g, h):
            return Comp(Comp(f, g), h), Comp(f, Comp(g, h))
        case TensorId(a, b):
            return TensorM(Id(a), Id(b)), Id(Tensor(a, b))
        case TensorComp(h, f, k, g):
            return TensorM(Comp(h, f), Comp(k, g)), Comp(TensorM(h, k), TensorM(f, g))
        case NatLam(f):
            return (
                Comp(Lam(cod(f)), TensorM(Id(I), f)),
                Comp(f, Lam(dom(f))),
            )
        case NatRho(f):
            return (
                Comp(Rho(cod(f)), f),
                Comp(TensorM(f, Id(I)), Rho(dom(f))),
            )
        case NatAlpha(f, g, h):
            return (
                Comp(Alpha(cod(f), cod(g), cod(h)), TensorM(TensorM(f, g), h)),
                Comp(TensorM(f, TensorM(g, h)), Alpha(dom(f), dom(g), dom(h))),
            )
        case LawA():
            return Comp(Lam(I), Rho(I)), Id(I)
        case LawB(a, b):
            return (
                Id(Tensor(a, b)),
                comp(TensorM(Id(a), Lam(b)), Alpha(a, I, b), TensorM(Rho(a), Id(b))),
            )
        case LawC(a, b):
            return Comp(Lam(Tensor(a, b)), Alpha(I, a, b)), TensorM(Lam(a), Id(b))
        case LawD(a, b):
            return Comp(Alpha(a, b, I), Rho(Tensor(a, b))), TensorM(Id(a), Rho(b))
        case LawE(a, b, c, d):
            return (
                Comp(Alpha(a, b, Tensor(c, d)), Alpha(Tensor(a, b), c, d)),
                comp(
                    TensorM(Id(a), Alpha(b, c, d)),
                    Alpha(a, Tensor(b, c), d),
                    TensorM(Alpha(a, b, c), Id(d)),
                ),
            )
    raise KernelError(f"not a leaf rule: {type(node).__name__}")


class _TypeCache:
    """Memoises map well-typedness by object identity during one check."""

    def __init__(self) -> None:
        self._ok: dict[int, MapExpr] = {}

    def check(self, f: MapExpr) -> None:
        if id(f) in self._ok:
            return
        if isinstance(f, Comp):
            d, c = dom(f.f), cod(f.g)
            if d != c:
                raise TypingError(f, d, c)
            self.check(f.f)
            self.check(f.g)
        elif isinstance(f, TensorM):
            self.check(f.f)
            self.check(f.g)
        self._ok[id(f)] = f


def conclude(node: EqProof, given: list[Equation], types: _TypeCache | None = None) -> Equation:
    """Validate one rule application against the conclusions of its premises."""
    types = types or _TypeCache()
    if isinstance(node, Sym):
        (e,) = given
        return Equation(e.rhs, e.lhs)
    if isinstance(node, Trans):
        e1, e2 = given
        if e1.rhs != e2.lhs:
            raise KernelError(f"Trans: middle terms differ: {e1.rhs} vs {e2.lhs}")
        return Equation(e1.lhs, e2.rhs)
    if isinstance(node, CompCong):
        e1, e2 = given
        out = Equation(Comp(e1.lhs, e2.lhs), Comp(e1.rhs, e2.rhs))
    elif isinstance(node, TensorCong):
        e1, e2 = given
        return Equation(TensorM(e1.lhs, e2.lhs), TensorM(e1.rhs, e2.rhs))
    else:
        try:
            lhs, rhs = law_sides(node)
        except TypeError as exc:
            raise KernelError(f"{type(node).__name__}: malformed indices ({exc})") from None
        out = Equation(lhs, rhs)
    try:
        types.check(out.lhs)
        types.check(out.rhs)
        parallel = dom(out.lhs) == dom(out.rhs) and cod(out.lhs) == cod(out.rhs)
    except TypingError as exc:
        raise KernelError(f"{type(node).__name__}: {exc}") from None
    except TypeError as exc:
        raise KernelError(f"{type(node).__name__}: malformed node ({exc})") from None
    if not parallel:
        raise KernelError(f"{type(node).__name__}: conclusion is not parallel: {out}")
    return out


def check_proof(p: EqProof) -> Equation:
    """Check a derivation tree bottom-up and return its conclusion.

    Shared subtrees are checked once.  Raises KernelError on the first rule
    application that does not fit its schema.
    """
    types = _TypeCache()
    done: dict[int, Equation] = {}
    stack: list[tuple[EqProof, bool]] = [(p, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in done:
            continue
        kids = premises(node)
        if kids and not expanded:
            stack.append((node, True))
            stack.extend((k, False) for k in reversed(kids))
            continue
        done[id(node)] = conclude(node, [done[id(k)] for k in kids], types)
    return done[id(p)]


def proof_size(p: EqProof) -> int:
    """Number of distinct rule-application nodes (shared subtrees count once)."""
    seen: set[int] = set()
    stack = [p]
    while stack:
        node = stack.pop()
        if id(node) not in seen:
            seen.add(id(node))
            stack.extend(premises(node))
    return len(seen)
