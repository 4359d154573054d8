"""Object expressions of the free skew-monoidal category and their normal forms.

A term is built from variables, the unit ``I`` and the tensor.  A normal
form is a list of variables read as the right-nested tensor
``X1 * (X2 * (... * I))``; a reverse normal form is the left-nested mirror
``((I * X1) * X2) * ...``.

Positions inside a term are strings over ``"L"``/``"R"``: each letter
descends into the left or right factor of a tensor.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not _NAME.match(self.name) or self.name == "I":
            raise ValueError(f"invalid variable name {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Unit:
    def __str__(self) -> str:
        return "I"


@dataclass(frozen=True, slots=True)
class Tensor:
    left: Term
    right: Term

    def __str__(self) -> str:
        return f"({self.left} * {self.right})"


Term = Union[Var, Unit, Tensor]

I = Unit()


def size(a: Term) -> int:
    """Number of nodes of ``a``."""
    if isinstance(a, Tensor):
        return 1 + size(a.left) + size(a.right)
    return 1


def depth(a: Term) -> int:
    """Height of ``a``; leaves have depth 1."""
    if isinstance(a, Tensor):
        return 1 + max(depth(a.left), depth(a.right))
    return 1


def leaves(a: Term) -> tuple[str, ...]:
    """Variable names of ``a`` from left to right."""
    if isinstance(a, Var):
        return (a.name,)
    if isinstance(a, Tensor):
        return leaves(a.left) + leaves(a.right)
    return ()


def subterm(a: Term, path: str) -> Term:
    for d in path:
        if not isinstance(a, Tensor):
            raise ValueError(f"path {path!r} leaves the term")
        a = a.left if d == "L" else a.right
    return a


def replace_at(a: Term, path: str, new: Term) -> Term:
    if not path:
        return new
    if not isinstance(a, Tensor):
        raise ValueError(f"path {path!r} leaves the term")
    if path[0] == "L":
        return Tensor(replace_at(a.left, path[1:], new), a.right)
    if path[0] == "R":
        return Tensor(a.left, replace_at(a.right, path[1:], new))
    raise ValueError(f"bad direction {path[0]!r}")


def positions(a: Term, prefix: str = "") -> Iterator[str]:
    """All positions of ``a`` in preorder (a node before its left subtree before its right)."""
    yield prefix
    if isinstance(a, Tensor):
        yield from positions(a.left, prefix + "L")
        yield from positions(a.right, prefix + "R")


# -- normal forms -----------------------------------------------------------


@dataclass(frozen=True, slots=True)
class NormalForm:
    """``J`` or ``X `* N``, stored as the tuple of variable names."""

    vars: tuple[str, ...] = ()

    @property
    def is_nil(self) -> bool:
        return not self.vars

    @property
    def head(self) -> str:
        return self.vars[0]

    @property
    def tail(self) -> NormalForm:
        return NormalForm(self.vars[1:])

    def __len__(self) -> int:
        return len(self.vars)

    def __str__(self) -> str:
        return "[" + ",".join(self.vars) + "]"


@dataclass(frozen=True, slots=True)
class RevNormalForm:
    """``Jr`` or ``R `*r X``, stored as the tuple of variable names (first = innermost)."""

    vars: tuple[str, ...] = ()

    @property
    def is_nil(self) -> bool:
        return not self.vars

    @property
    def init(self) -> RevNormalForm:
        return RevNormalForm(self.vars[:-1])

    @property
    def last(self) -> str:
        return self.vars[-1]

    def __len__(self) -> int:
        return len(self.vars)

    def __str__(self) -> str:
        return "rev[" + ",".join(self.vars) + "]"


J = NormalForm()
JR = RevNormalForm()


def cons(x: str, n: NormalForm) -> NormalForm:
    return NormalForm((x,) + n.vars)


def snoc(r: RevNormalForm, x: str) -> RevNormalForm:
    return RevNormalForm(r.vars + (x,))


def emb(n: NormalForm) -> Term:
    if n.is_nil:
        return I
    return Tensor(Var(n.head), emb(n.tail))


def nfx(a: Term, n: NormalForm) -> NormalForm:
    if isinstance(a, Var):
        return cons(a.name, n)
    if isinstance(a, Unit):
        return n
    return nfx(a.left, nfx(a.right, n))


def nf(a: Term) -> NormalForm:
    return nfx(a, J)


def concat_nf(n1: NormalForm, n2: NormalForm) -> NormalForm:
    return NormalForm(n1.vars + n2.vars)


def embrev(r: RevNormalForm) -> Term:
    if r.is_nil:
        return I
    return Tensor(embrev(r.init), Var(r.last))


def nfxr(a: Term, r: RevNormalForm) -> RevNormalForm:
    if isinstance(a, Var):
        return snoc(r, a.name)
    if isinstance(a, Unit):
        return r
    return nfxr(a.right, nfxr(a.left, r))


def nfrev(a: Term) -> RevNormalForm:
    return nfxr(a, JR)


def is_emb_image(a: Term) -> NormalForm | None:
    """The ``n`` with ``emb(n) == a``, or None when ``a`` is not a normal form."""
    names = []
    while isinstance(a, Tensor) and isinstance(a.left, Var):
        names.append(a.left.name)
        a = a.right
    if isinstance(a, Unit):
        return NormalForm(tuple(names))
    return None


def is_embrev_image(a: Term) -> RevNormalForm | None:
    names = []
    while isinstance(a, Tensor) and isinstance(a.right, Var):
        names.append(a.right.name)
        a = a.left
    if isinstance(a, Unit):
        return RevNormalForm(tuple(reversed(names)))
    return None
