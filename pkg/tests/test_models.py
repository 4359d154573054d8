import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewmon import kernel as K
from skewmon.coherence import decide_equal_into_nf, nm
from skewmon.enumeration import all_maps, random_proof
from skewmon.maps import Alpha, Comp, Id, Lam, Rho, TensorM, cod, dom
from skewmon.models import (
    FinPointed,
    NatModelParams,
    PointedFn,
    UnboundVariable,
    all_pointed_sets,
    check_nat_hom,
    eval_map_nat,
    eval_map_p,
    eval_term_nat,
    eval_term_p,
    map_variables,
    nat_params,
    parse_valuation,
    pointed_valuations,
    separate,
)
from skewmon.terms import I, Tensor, Var

X, Y, Z = Var("X"), Var("Y"), Var("Z")
P1, P2 = FinPointed(1), FinPointed(2)


def test_pointed_set_invariants():
    with pytest.raises(ValueError):
        FinPointed(0)
    with pytest.raises(ValueError):
        FinPointed(2, 2)
    with pytest.raises(ValueError):
        PointedFn(P2, P2, (1, 0))  # moves the point
    with pytest.raises(ValueError):
        PointedFn(P2, P1, (0, 1))


def test_eval_term_examples():
    assert eval_term_p(I, {}) == FinPointed(1, 0)
    assert eval_term_p(Tensor(I, I), {}) == FinPointed(2, 0)
    assert eval_term_p(Tensor(X, I), {"X": P2}) == FinPointed(3, 0)
    # the tensor keeps the left point
    assert eval_term_p(Tensor(X, Y), {"X": FinPointed(2, 1), "Y": FinPointed(3, 2)}) == FinPointed(5, 1)
    with pytest.raises(UnboundVariable):
        eval_term_p(X, {})


def test_eval_generator_examples():
    lam = eval_map_p(Lam(I), {})
    assert lam.table == (0, 0)
    rho = eval_map_p(Rho(I), {})
    assert rho.table == (0,) and rho.dst.size == 2
    both = eval_map_p(Comp(Rho(I), Lam(I)), {})
    assert both.table == (0, 0)
    assert both.table != PointedFn.identity(FinPointed(2)).table
    # lam sends the unit's element to the point of X and shifts the rest
    assert eval_map_p(Lam(X), {"X": FinPointed(3, 2)}).table == (2, 0, 1, 2)
    assert eval_map_p(Alpha(X, I, Y), {"X": P2, "Y": P2}).table == (0, 1, 2, 3, 4)


def test_separate_examples():
    w = separate(Id(Tensor(I, I)), Comp(Rho(I), Lam(I)))
    assert w is not None and w.element == 1 and (w.left, w.right) == (1, 0)
    f = Id(Tensor(Tensor(X, I), Y))
    g = Comp(TensorM(Rho(X), Id(Y)), Comp(TensorM(Id(X), Lam(Y)), Alpha(X, I, Y)))
    assert separate(f, g) is not None
    w = separate(Lam(Tensor(I, X)), TensorM(Id(I), Lam(X)))
    assert w is not None and w.element == 1
    assert separate(Id(X), Id(X)) is None
    with pytest.raises(ValueError):
        separate(Id(X), Id(Y))


def test_separate_uses_given_valuations_only():
    f, g = Lam(Tensor(I, X)), TensorM(Id(I), Lam(X))
    assert separate(f, g, []) is None
    assert separate(f, g, [{"X": P2}]) is not None


def test_nat_term_examples():
    assert eval_term_nat(I, NatModelParams(3, {})) == 3
    assert eval_term_nat(Tensor(I, X), NatModelParams(3, {"X": 5})) == 5
    assert eval_term_nat(Tensor(X, I), NatModelParams(3, {"X": 1})) == 3


def test_nat_hom_examples():
    params = list(nat_params(["X"], range(4), 6))
    assert check_nat_hom(X, Tensor(X, I), params) is None
    p = check_nat_hom(Tensor(X, I), X, [NatModelParams(3, {"X": 1})])
    assert p == NatModelParams(3, {"X": 1})
    # the model cannot see that X has no map into I * X
    assert check_nat_hom(X, Tensor(I, X), params) is None


def test_nat_map_evaluation():
    p = NatModelParams(2, {"X": 1, "Y": 5})
    assert eval_map_nat(Rho(X), p) == (1, 2)
    assert eval_map_nat(Comp(Lam(X), Id(Tensor(I, X))), p) == (1, 1)


def test_nat_generators_point_upwards():
    terms = [X, Y, I, Tensor(X, Y), Tensor(I, X)]
    for n, x, y in itertools.product(range(4), range(7), range(7)):
        p = NatModelParams(n, {"X": x, "Y": y})
        assert eval_term_nat(Tensor(I, X), p) == x
        assert eval_term_nat(Tensor(X, I), p) == max(x, n)
        for a, b, c in itertools.product(terms, repeat=3):
            lo, hi = eval_map_nat(Alpha(a, b, c), p)
            assert lo <= hi


def test_map_variables():
    assert map_variables(Alpha(X, I, Tensor(Z, Y)), Lam(X)) == ["X", "Y", "Z"]


def test_valuation_parser():
    pointed, nat = parse_valuation("X = pointed 2\nY = pointed 3 1  # comment\n\nZ = nat 5\n")
    assert pointed == {"X": FinPointed(2), "Y": FinPointed(3, 1)}
    assert nat == {"Z": 5}
    for bad in ("X pointed 2", "X = pointed 0", "X = nat -1", "X = set 2", "I = nat 2"):
        with pytest.raises(ValueError):
            parse_valuation(bad)


SETS3 = all_pointed_sets(3)


def test_interpretations_are_point_preserving_and_functorial():
    for f in all_maps(6):
        names = map_variables(f)
        for v in pointed_valuations(names, SETS3):
            fn = eval_map_p(f, v)  # the constructor checks point preservation
            assert fn.src == eval_term_p(dom(f), v) and fn.dst == eval_term_p(cod(f), v)
            match f:
                case Comp(a, b):
                    assert fn == eval_map_p(b, v).then(eval_map_p(a, v))
                case Id(a):
                    assert fn == PointedFn.identity(eval_term_p(a, v))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_derivable_equations_hold_in_the_pointed_model(seed):
    e = K.check_proof(random_proof(random.Random(seed)))
    assert separate(e.lhs, e.rhs, pointed_valuations(map_variables(e.lhs), SETS3)) is None


def test_coherence_proofs_never_separated():
    fs = [f for f in all_maps(6) if cod(f) in (I, Tensor(X, I), Tensor(Y, I))]
    for f in fs:
        g = nm(dom(f))
        assert decide_equal_into_nf(f, g) is not None
        assert separate(f, g, pointed_valuations(map_variables(f), SETS3)) is None
