"""Typed map expressions.

Generators carry their object indices, so ``dom`` and ``cod`` are total
functions on raw syntax.  ``Comp(f, g)`` is ``f`` after ``g``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from skewmon.terms import I, Tensor, Term, size as term_size


@dataclass(frozen=True, slots=True)
class Id:
    obj: Term

    def __str__(self) -> str:
        return f"id_{self.obj}"


@dataclass(frozen=True, slots=True)
class Comp:
    f: MapExpr
    g: MapExpr

    def __str__(self) -> str:
        left = f"({self.f})" if isinstance(self.f, Comp) else str(self.f)
        return f"{left} . {self.g}"


@dataclass(frozen=True, slots=True)
class TensorM:
    f: MapExpr
    g: MapExpr

    def __str__(self) -> str:
        return f"({self.f} * {self.g})"


@dataclass(frozen=True, slots=True)
class Lam:
    obj: Term

    def __str__(self) -> str:
        return f"lam_{self.obj}"


@dataclass(frozen=True, slots=True)
class Rho:
    obj: Term

    def __str__(self) -> str:
        return f"rho_{self.obj}"


@dataclass(frozen=True, slots=True)
class Alpha:
    a: Term
    b: Term
    c: Term

    def __str__(self) -> str:
        return f"alpha_({self.a},{self.b},{self.c})"


MapExpr = Union[Id, Comp, TensorM, Lam, Rho, Alpha]
GENERATORS = (Lam, Rho, Alpha)


class TypingError(ValueError):
    """A composite whose factors do not meet."""

    def __init__(self, node: Comp, left_dom: Term, right_cod: Term):
        self.node = node
        self.left_dom = left_dom
        self.right_cod = right_cod
        super().__init__(
            f"ill-typed composite {node}: dom of left factor is {left_dom}, "
            f"cod of right factor is {right_cod}"
        )


def dom(f: MapExpr) -> Term:
    match f:
        case Id(a):
            return a
        case Comp(_, g):
            return dom(g)
        case TensorM(f1, g1):
            return Tensor(dom(f1), dom(g1))
        case Lam(a):
            return Tensor(I, a)
        case Rho(a):
            return a
        case Alpha(a, b, c):
            return Tensor(Tensor(a, b), c)
    raise TypeError(f"not a map expression: {f!r}")


def cod(f: MapExpr) -> Term:
    match f:
        case Id(a):
            return a
        case Comp(f1, _):
            return cod(f1)
        case TensorM(f1, g1):
            return Tensor(cod(f1), cod(g1))
        case Lam(a):
            return a
        case Rho(a):
            return Tensor(a, I)
        case Alpha(a, b, c):
            return Tensor(a, Tensor(b, c))
    raise TypeError(f"not a map expression: {f!r}")


def check_map(f: MapExpr) -> None:
    """Raise TypingError at the first composite (in preorder) whose factors do not meet."""
    if isinstance(f, Comp):
        d, c = dom(f.f), cod(f.g)
        if d != c:
            raise TypingError(f, d, c)
        check_map(f.f)
        check_map(f.g)
    elif isinstance(f, TensorM):
        check_map(f.f)
        check_map(f.g)


def is_well_typed(f: MapExpr) -> bool:
    try:
        check_map(f)
    except TypingError:
        return False
    return True


def map_size(f: MapExpr) -> int:
    """Syntax size: map constructors plus the nodes of every object index."""
    match f:
        case Id(a) | Lam(a) | Rho(a):
            return 1 + term_size(a)
        case Alpha(a, b, c):
            return 1 + term_size(a) + term_size(b) + term_size(c)
        case Comp(f1, g1) | TensorM(f1, g1):
            return 1 + map_size(f1) + map_size(g1)
    raise TypeError(f"not a map expression: {f!r}")


def comp(*fs: MapExpr) -> MapExpr:
    """Right-associated composite ``fs[0] . (fs[1] . (...))``."""
    if not fs:
        raise ValueError("empty composite")
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Comp(f, out)
    return out


def factors(f: MapExpr) -> list[MapExpr]:
    """Flatten nested composites; the first factor is applied last."""
    out: list[MapExpr] = []
    stack = [f]
    while stack:
        h = stack.pop()
        if isinstance(h, Comp):
            stack.append(h.g)
            stack.append(h.f)
        else:
            out.append(h)
    return out
