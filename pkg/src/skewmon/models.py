"""Two concrete skew-monoidal categories used as semantic checks.

Pointed sets: ``I`` is the one-point set and ``(X, p) * (Y, q)`` is the
disjoint union ``X + Y`` pointed at ``p`` (left block first).  Elements are
indices, so the associator is the identity on indices.

Naturals with truncated subtraction: a thin category on ``(N, <=)`` with
``I = n`` and ``x * y = (x -. n) + y``.  A map ``a => b`` can only exist when
``a <= b`` under every valuation, which makes the model a refutation tool for
map existence; being thin, it never separates parallel maps.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from skewmon.maps import Alpha, Comp, Id, Lam, MapExpr, Rho, TensorM, check_map, cod, dom
from skewmon.terms import Tensor, Term, Unit, Var, leaves


class UnboundVariable(KeyError):
    pass


@dataclass(frozen=True, slots=True)
class FinPointed:
    size: int
    point: int = 0

    def __post_init__(self) -> None:
        if self.size < 1 or not 0 <= self.point < self.size:
            raise ValueError(f"bad pointed set: size {self.size}, point {self.point}")

    def __str__(self) -> str:
        return f"pointed {self.size}" + (f" {self.point}" if self.point else "")


@dataclass(frozen=True, slots=True)
class PointedFn:
    src: FinPointed
    dst: FinPointed
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.src.size or any(not 0 <= y < self.dst.size for y in self.table):
            raise ValueError(f"table {self.table} does not fit {self.src} -> {self.dst}")
        if self.table[self.src.point] != self.dst.point:
            raise ValueError(f"table {self.table} does not preserve the point")

    @classmethod
    def identity(cls, x: FinPointed) -> PointedFn:
        return cls(x, x, tuple(range(x.size)))

    def __call__(self, i: int) -> int:
        return self.table[i]

    def then(self, other: PointedFn) -> PointedFn:
        """``other`` after ``self``."""
        assert self.dst == other.src
        return PointedFn(self.src, other.dst, tuple(other.table[y] for y in self.table))


PointedValuation = Mapping[str, FinPointed]
ONE = FinPointed(1, 0)


def _lookup(v: Mapping, name: str):
    try:
        return v[name]
    except KeyError:
        raise UnboundVariable(name) from None


def eval_term_p(a: Term, v: PointedValuation) -> FinPointed:
    if isinstance(a, Var):
        return _lookup(v, a.name)
    if isinstance(a, Unit):
        return ONE
    left, right = eval_term_p(a.left, v), eval_term_p(a.right, v)
    return FinPointed(left.size + right.size, left.point)


def _eval_p(f: MapExpr, v: PointedValuation) -> PointedFn:
    match f:
        case Id(a):
            return PointedFn.identity(eval_term_p(a, v))
        case Comp(f1, g1):
            return _eval_p(g1, v).then(_eval_p(f1, v))
        case TensorM(f1, g1):
            l, r = _eval_p(f1, v), _eval_p(g1, v)
            src = FinPointed(l.src.size + r.src.size, l.src.point)
            dst = FinPointed(l.dst.size + r.dst.size, l.dst.point)
            return PointedFn(src, dst, l.table + tuple(l.dst.size + y for y in r.table))
        case Lam(a):
            x = eval_term_p(a, v)
            # the unit's element goes to the point, the rest shifts down
            return PointedFn(FinPointed(1 + x.size, 0), x, (x.point,) + tuple(range(x.size)))
        case Rho(a):
            x = eval_term_p(a, v)
            return PointedFn(x, FinPointed(x.size + 1, x.point), tuple(range(x.size)))
        case Alpha(a, b, c):
            x = eval_term_p(Tensor(Tensor(a, b), c), v)
            return PointedFn.identity(x)
    raise TypeError(f"not a map expression: {f!r}")


def eval_map_p(f: MapExpr, v: PointedValuation) -> PointedFn:
    """Interpret a well-typed map as a point-preserving function."""
    check_map(f)
    return _eval_p(f, v)


def map_variables(*fs: MapExpr) -> list[str]:
    """Variable names occurring in the domains and codomains of ``fs``, sorted."""
    names: set[str] = set()
    for f in fs:
        names.update(_map_vars(f))
    return sorted(names)


def _map_vars(f: MapExpr) -> Iterator[str]:
    match f:
        case Id(a) | Lam(a) | Rho(a):
            yield from leaves(a)
        case Alpha(a, b, c):
            for t in (a, b, c):
                yield from leaves(t)
        case Comp(f1, g1) | TensorM(f1, g1):
            yield from _map_vars(f1)
            yield from _map_vars(g1)


def pointed_valuations(
    names: Iterable[str], sets: Iterable[FinPointed] = (FinPointed(1), FinPointed(2))
) -> Iterator[dict[str, FinPointed]]:
    """Every assignment of the given pointed sets to ``names``."""
    names = list(names)
    sets = list(sets)
    for combo in itertools.product(sets, repeat=len(names)):
        yield dict(zip(names, combo))


def all_pointed_sets(max_size: int) -> list[FinPointed]:
    return [FinPointed(s, p) for s in range(1, max_size + 1) for p in range(s)]


@dataclass(frozen=True, slots=True)
class Witness:
    valuation: dict[str, FinPointed]
    element: int
    left: int
    right: int

    def __str__(self) -> str:
        vals = ", ".join(f"{k} = {v}" for k, v in sorted(self.valuation.items()))
        where = f" under {{{vals}}}" if vals else ""
        return f"element {self.element}: {self.left} vs {self.right}{where}"


def separate(
    f: MapExpr, g: MapExpr, valuations: Iterable[PointedValuation] | None = None
) -> Witness | None:
    """First valuation and element on which ``f`` and ``g`` differ, or None.

    A witness proves the maps are not derivably equal.  None only means they
    agree on the valuations tried.  Default valuations: every assignment of
    the one- and two-element sets (pointed at 0) to the variables involved.
    """
    check_map(f)
    check_map(g)
    if dom(f) != dom(g) or cod(f) != cod(g):
        raise ValueError(f"maps are not parallel: {f} vs {g}")
    if valuations is None:
        valuations = pointed_valuations(map_variables(f, g))
    for v in valuations:
        tf, tg = _eval_p(f, v), _eval_p(g, v)
        for i, (x, y) in enumerate(zip(tf.table, tg.table)):
            if x != y:
                return Witness(dict(v), i, x, y)
    return None


# -- naturals with truncated subtraction ---------------------------------------


@dataclass(frozen=True, slots=True)
class NatModelParams:
    n: int
    valuation: Mapping[str, int]

    def tensor(self, x: int, y: int) -> int:
        return max(x - self.n, 0) + y


def eval_term_nat(a: Term, p: NatModelParams) -> int:
    if isinstance(a, Var):
        return _lookup(p.valuation, a.name)
    if isinstance(a, Unit):
        return p.n
    return p.tensor(eval_term_nat(a.left, p), eval_term_nat(a.right, p))


class NatModelViolation(ValueError):
    pass


def eval_map_nat(f: MapExpr, p: NatModelParams) -> tuple[int, int]:
    """Interpret ``f`` in the thin category; returns (dom value, cod value).

    Raises NatModelViolation if some generator instance would need a
    decreasing arrow, which would mean the model is not skew-monoidal.
    """
    match f:
        case Id(a):
            x = eval_term_nat(a, p)
            return x, x
        case Comp(f1, g1):
            x, _ = eval_map_nat(g1, p)
            _, z = eval_map_nat(f1, p)
            return x, z
        case TensorM(f1, g1):
            a, b = eval_map_nat(f1, p)
            c, d = eval_map_nat(g1, p)
            return p.tensor(a, c), p.tensor(b, d)
        case Lam() | Rho() | Alpha():
            x, y = eval_term_nat(dom(f), p), eval_term_nat(cod(f), p)
            if x > y:
                raise NatModelViolation(f"{f}: {x} > {y} with n = {p.n}")
            return x, y
    raise TypeError(f"not a map expression: {f!r}")


def check_nat_hom(a: Term, b: Term, params: Iterable[NatModelParams]) -> NatModelParams | None:
    """Parameters under which ``a`` evaluates above ``b``, or None.

    A refutation proves that no map ``a => b`` exists; None claims nothing.
    """
    for p in params:
        if eval_term_nat(a, p) > eval_term_nat(b, p):
            return p
    return None


def nat_params(names: Iterable[str], ns: Iterable[int], max_value: int) -> Iterator[NatModelParams]:
    names = list(names)
    for n in ns:
        for vals in itertools.product(range(max_value + 1), repeat=len(names)):
            yield NatModelParams(n, dict(zip(names, vals)))


# -- valuation files -----------------------------------------------------------


def parse_valuation(text: str) -> tuple[dict[str, FinPointed], dict[str, int]]:
    """Read lines ``X = pointed 2 [point]`` or ``X = nat 5``; ``#`` starts a comment."""
    pointed: dict[str, FinPointed] = {}
    nat: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, eq, rhs = line.partition("=")
        parts = rhs.split()
        name = name.strip()
        Var(name)
        try:
            if not eq or not parts:
                raise ValueError
            if parts[0] == "pointed" and len(parts) in (2, 3):
                pointed[name] = FinPointed(*map(int, parts[1:]))
            elif parts[0] == "nat" and len(parts) == 2 and int(parts[1]) >= 0:
                nat[name] = int(parts[1])
            else:
                raise ValueError
        except ValueError:
            raise ValueError(f"line {lineno}: cannot read valuation {raw!r}") from None
    return pointed, nat
