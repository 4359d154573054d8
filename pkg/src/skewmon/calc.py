"""Calculational proof scripts: rewrite a map expression step by step."""
from __future__ import annotations

from skewmon.maps import MapExpr, comp, factors
from skewmon.thm import Thm, congr, find, reassoc, refl, sym, to_chain, trans


class Calc:
    """Accumulates ``start == ... == current`` one justified step at a time."""

    def __init__(self, start: MapExpr):
        self.thm = refl(start)

    @property
    def term(self) -> MapExpr:
        return self.thm.rhs

    def by(self, t: Thm) -> Calc:
        self.thm = trans(self.thm, t)
        return self

    def rw(self, t: Thm, path: str | None = None) -> Calc:
        """Rewrite the subterm ``t.lhs`` (first occurrence in preorder unless ``path`` is given)."""
        if path is None:
            path = find(self.term, t.lhs)
            if path is None:
                raise ValueError(f"{t.lhs} does not occur in {self.term}")
        return self.by(congr(self.term, path, t))

    def seg(self, t: Thm, at: int | None = None) -> Calc:
        """Rewrite a contiguous run of composition factors equal to the factors of ``t.lhs``.

        The result is left as a right-associated chain.
        """
        fs, ls = factors(self.term), factors(t.lhs)
        k = len(ls)
        if at is None:
            at = next((i for i in range(len(fs) - k + 1) if fs[i:i + k] == ls), None)
            if at is None:
                raise ValueError(f"{t.lhs} is not a segment of {self.term}")
        elif fs[at:at + k] != ls:
            raise ValueError(f"factors at {at} do not match {t.lhs}")
        prefix, suffix = fs[:at], fs[at + k:]
        mid = comp(*prefix, t.lhs, *suffix)
        path = "R" * len(prefix) + ("L" if suffix else "")
        self.by(reassoc(self.term, mid))
        self.by(congr(mid, path, t))
        return self.by(to_chain(self.term))

    def struct(self, target: MapExpr) -> Calc:
        """Move to ``target`` when both perform the same steps in the same order.

        Covers associativity, identities and functoriality of the tensor, but
        not interchange of independent steps.
        """
        from skewmon.rewriting import decompose

        d1, d2 = decompose(self.term), decompose(target)
        if d1.composite != d2.composite:
            raise ValueError(
                f"not structurally equal:\n  {self.term}\n  {target}\n"
                f"  steps {[str(s) for s in d1.steps]} vs {[str(s) for s in d2.steps]}"
            )
        return self.by(trans(d1.thm, sym(d2.thm)))

    def qed(self, target: MapExpr | None = None) -> Thm:
        if target is not None and self.term != target:
            raise ValueError(f"calculation ended at {self.term}, expected {target}")
        return self.thm
