"""Concrete syntax: infix terms and maps, s-expressions for proofs.

Infix grammar (whitespace is ignored)::

    term := name | "I" | "(" term "*" term ")"
    map  := atom ("." map)?
    atom := "id_" term | "lam_" term | "rho_" term
          | "alpha_(" term "," term "," term ")"
          | "(" map "*" map ")" | "(" map ")"

Composition is right-associated; tensors always need their parentheses.

Proof files hold s-expressions.  Terms are ``X``, ``I``, ``(* A B)``; maps
are ``(id A)``, ``(comp f g)``, ``(tensor f g)``, ``(lam A)``, ``(rho A)``,
``(alpha A B C)``; a proof node is ``(RuleName arg ...)``.  A subproof used
more than once is written once as ``(def k node)`` and referenced as ``#k``;
the last top-level form is the proof itself.
"""
from __future__ import annotations

import dataclasses
import re
from typing import Union

from skewmon import kernel as K
from skewmon.maps import Alpha, Comp, Id, Lam, MapExpr, Rho, TensorM
from skewmon.terms import I, Tensor, Term, Unit, Var


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, text: str):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


_NAME = re.compile(r"[A-Za-z][A-Za-z0-9]*")


class _Infix:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, msg: str):
        raise ParseError(msg, self.i, self.text)

    def skip(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            got = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"expected {ch!r}, found {got}")
        self.i += 1

    def name(self) -> str:
        self.skip()
        m = _NAME.match(self.text, self.i)
        if not m:
            self.error("expected a name" if self.i < len(self.text) else "unexpected end of input")
        self.i = m.end()
        return m.group()

    def done(self) -> None:
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")

    def term(self) -> Term:
        if self.peek() == "(":
            self.i += 1
            left = self.term()
            self.expect("*")
            right = self.term()
            self.expect(")")
            return Tensor(left, right)
        start = self.i
        n = self.name()
        if n == "I":
            return I
        try:
            return Var(n)
        except ValueError:
            self.i = start
            self.error(f"bad variable name {n!r}")

    def map(self) -> MapExpr:
        f = self.atom()
        if self.peek() == ".":
            self.i += 1
            return Comp(f, self.map())
        return f

    def atom(self) -> MapExpr:
        if self.peek() == "(":
            self.i += 1
            f = self.map()
            if self.peek() == "*":
                self.i += 1
                g = self.map()
                self.expect(")")
                return TensorM(f, g)
            self.expect(")")
            return f
        start = self.i
        kw = self.name()
        if kw not in ("id", "lam", "rho", "alpha"):
            self.i = start
            self.error(f"expected a map, found {kw!r}")
        self.expect("_")
        if kw == "alpha":
            self.expect("(")
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(",")
            c = self.term()
            self.expect(")")
            return Alpha(a, b, c)
        a = self.term()
        return {"id": Id, "lam": Lam, "rho": Rho}[kw](a)


def parse_term(text: str) -> Term:
    p = _Infix(text)
    t = p.term()
    p.done()
    return t


def parse_map(text: str) -> MapExpr:
    p = _Infix(text)
    f = p.map()
    p.done()
    return f


def format_term(a: Term) -> str:
    return str(a)


def format_map(f: MapExpr) -> str:
    return str(f)


# -- s-expressions --------------------------------------------------------------

SExp = Union[str, list]
_TOKEN = re.compile(r"\s*(?:(;[^\n]*)|([()])|([^\s()]+))")


def read_sexps(text: str) -> list[SExp]:
    """All top-level s-expressions in ``text``; ``;`` comments run to end of line."""
    stack: list[list] = [[]]
    opens: list[int] = []
    i = 0
    while True:
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            break
        i = m.end()
        if m.group(1):
            continue
        if m.group(2) == "(":
            opens.append(m.start(2))
            stack.append([])
        elif m.group(2) == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", m.start(2), text)
            done = stack.pop()
            opens.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(m.group(3))
    if text[i:].strip():
        raise ParseError("unexpected character", i, text)
    if len(stack) > 1:
        raise ParseError("unclosed '('", opens[-1], text)
    return stack[0]


def _show(x: SExp) -> str:
    if isinstance(x, str):
        return x
    return "(" + " ".join(_show(y) for y in x) + ")"


def term_to_sexp(a: Term) -> SExp:
    if isinstance(a, Var):
        return a.name
    if isinstance(a, Unit):
        return "I"
    return ["*", term_to_sexp(a.left), term_to_sexp(a.right)]


def sexp_to_term(x: SExp) -> Term:
    if isinstance(x, str):
        return I if x == "I" else Var(x)
    if len(x) == 3 and x[0] == "*":
        return Tensor(sexp_to_term(x[1]), sexp_to_term(x[2]))
    raise ValueError(f"not a term: {_show(x)}")


_MAP_HEADS = {"id": (Id, "t"), "comp": (Comp, "mm"), "tensor": (TensorM, "mm"),
              "lam": (Lam, "t"), "rho": (Rho, "t"), "alpha": (Alpha, "ttt")}
_MAP_NAMES = {cls: name for name, (cls, _) in _MAP_HEADS.items()}


def map_to_sexp(f: MapExpr) -> SExp:
    return [_MAP_NAMES[type(f)]] + [_arg_to_sexp(getattr(f, fl.name)) for fl in dataclasses.fields(f)]


def _arg_to_sexp(x) -> SExp:
    return term_to_sexp(x) if isinstance(x, (Var, Unit, Tensor)) else map_to_sexp(x)


def sexp_to_map(x: SExp) -> MapExpr:
    if isinstance(x, list) and x and isinstance(x[0], str) and x[0] in _MAP_HEADS:
        cls, kinds = _MAP_HEADS[x[0]]
        if len(x) - 1 == len(kinds):
            args = [sexp_to_term(y) if k == "t" else sexp_to_map(y) for k, y in zip(kinds, x[1:])]
            return cls(*args)
    raise ValueError(f"not a map: {_show(x)}")


_PROOF_KINDS = {
    cls: "".join("p" if fl.type == "EqProof" else "m" if fl.type == "MapExpr" else "t"
                 for fl in dataclasses.fields(cls))
    for cls in K.RULES.values()
}


def _node_args(node: K.EqProof) -> list:
    return [getattr(node, fl.name) for fl in dataclasses.fields(node)]


def proof_to_text(p: K.EqProof) -> str:
    """Serialize a derivation, sharing repeated subproofs through ``def``."""
    uses: dict[int, int] = {}
    order: list[K.EqProof] = []
    stack: list[tuple[K.EqProof, bool]] = [(p, False)]
    while stack:
        node, expanded = stack.pop()
        key = id(node)
        if expanded:
            order.append(node)
            continue
        uses[key] = uses.get(key, 0) + 1
        if uses[key] > 1:
            continue
        stack.append((node, True))
        for child in reversed(K.premises(node)):
            stack.append((child, False))

    labels: dict[int, str] = {}
    rendered: dict[int, str] = {}
    lines = []
    for node in order:  # children come before parents
        parts = [type(node).__name__]
        for kind, arg in zip(_PROOF_KINDS[type(node)], _node_args(node)):
            if kind == "p":
                parts.append(labels.get(id(arg)) or rendered[id(arg)])
            elif kind == "m":
                parts.append(_show(map_to_sexp(arg)))
            else:
                parts.append(_show(term_to_sexp(arg)))
        text = "(" + " ".join(parts) + ")"
        if uses[id(node)] > 1 and node is not p:
            label = f"#{len(labels)}"
            labels[id(node)] = label
            lines.append(f"(def {len(labels) - 1} {text})")
        else:
            rendered[id(node)] = text
    lines.append(labels.get(id(p)) or rendered[id(p)])
    return "\n".join(lines) + "\n"


def proof_from_text(text: str) -> K.EqProof:
    forms = read_sexps(text)
    if not forms:
        raise ValueError("no proof found")
    defs: dict[str, K.EqProof] = {}
    for form in forms[:-1]:
        if not (isinstance(form, list) and len(form) == 3 and form[0] == "def"
                and isinstance(form[1], str) and form[1].isdigit()):
            raise ValueError(f"expected (def k proof), found {_show(form)}")
        defs["#" + form[1]] = _sexp_to_proof(form[2], defs)
    return _sexp_to_proof(forms[-1], defs)


def _sexp_to_proof(x: SExp, defs: dict[str, K.EqProof]) -> K.EqProof:
    if isinstance(x, str):
        if x in defs:
            return defs[x]
        raise ValueError(f"undefined proof reference {x}")
    if not x or not isinstance(x[0], str) or x[0] not in K.RULES:
        raise ValueError(f"not a proof node: {_show(x)}")
    cls = K.RULES[x[0]]
    kinds = _PROOF_KINDS[cls]
    if len(x) - 1 != len(kinds):
        raise ValueError(f"{x[0]} takes {len(kinds)} arguments, got {len(x) - 1}")
    args = []
    for kind, y in zip(kinds, x[1:]):
        if kind == "p":
            args.append(_sexp_to_proof(y, defs))
        elif kind == "m":
            args.append(sexp_to_map(y))
        else:
            args.append(sexp_to_term(y))
    return cls(*args)
