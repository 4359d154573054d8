import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewmon import kernel as K
from skewmon.coherence import coherence_proof, nm
from skewmon.enumeration import all_maps, all_terms, random_proof
from skewmon.maps import Alpha, Comp, Id, Lam, Rho, TensorM
from skewmon.syntax import (
    ParseError,
    map_to_sexp,
    parse_map,
    parse_term,
    proof_from_text,
    proof_to_text,
    read_sexps,
    sexp_to_map,
    sexp_to_term,
    term_to_sexp,
)
from skewmon.terms import I, Tensor, Var, nf
from strategies import maps, terms

X, Y = Var("X"), Var("Y")


def test_parse_term_examples():
    assert parse_term("(I * X)") == Tensor(I, X)
    assert parse_term("  ( (X*I) *Y )") == Tensor(Tensor(X, I), Y)
    assert parse_term("Foo2") == Var("Foo2")


def test_parse_map_examples():
    assert parse_map("(id_I * lam_X)") == TensorM(Id(I), Lam(X))
    assert parse_map("alpha_(X, I, (X * Y))") == Alpha(X, I, Tensor(X, Y))
    assert parse_map("lam_X . rho_X . id_X") == Comp(Lam(X), Comp(Rho(X), Id(X)))
    assert parse_map("(lam_X . rho_X) . id_X") == Comp(Comp(Lam(X), Rho(X)), Id(X))
    assert parse_map("(lam_X . rho_X * id_Y)") == TensorM(Comp(Lam(X), Rho(X)), Id(Y))


@pytest.mark.parametrize(
    "text, offset",
    [("(X *", 4), ("(X * Y", 6), ("X * Y", 2), ("(X + Y)", 3), ("", 0), ("1X", 0)],
)
def test_term_parse_errors_report_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_term(text)
    assert info.value.offset == offset


@pytest.mark.parametrize("text", ["id_", "id X", "beta_X", "(id_X * id_Y", "lam_X .", "id_X id_Y"])
def test_map_parse_errors(text):
    with pytest.raises(ParseError):
        parse_map(text)


def test_term_round_trip_exhaustive():
    for a in all_terms(3):
        assert parse_term(str(a)) == a
        assert sexp_to_term(term_to_sexp(a)) == a


def test_map_round_trip_exhaustive():
    for f in all_maps(6):
        assert parse_map(str(f)) == f
        assert sexp_to_map(map_to_sexp(f)) == f


@given(terms)
def test_term_round_trip(a):
    assert parse_term(str(a)) == a


@given(maps)
def test_map_round_trip(f):
    assert parse_map(str(f)) == f
    assert sexp_to_map(map_to_sexp(f)) == f


def test_sexp_reader():
    assert read_sexps("(a (b c)) d ; note\n(e)") == [["a", ["b", "c"]], "d", ["e"]]
    with pytest.raises(ParseError):
        read_sexps("(a (b)")
    with pytest.raises(ParseError):
        read_sexps("a)")


def test_proof_text_format():
    text = proof_to_text(K.Trans(K.Sym(K.LawA()), K.Refl(Id(I))))
    assert text == "(Trans (Sym (LawA)) (Refl (id I)))\n"
    assert proof_from_text(text) == K.Trans(K.Sym(K.LawA()), K.Refl(Id(I)))


def test_shared_subproofs_are_written_once():
    shared = K.LawB(X, Y)
    p = K.Trans(K.Sym(shared), shared)
    text = proof_to_text(p)
    assert text.count("LawB") == 1
    assert proof_from_text(text) == p


def test_proof_reader_rejects_garbage():
    for bad in ["", "(Frob X)", "(LawB X)", "#0", "(def x (LawA))\n(LawA)", "(Refl (id (* X)))"]:
        with pytest.raises(ValueError):
            proof_from_text(bad)


def test_coherence_proof_round_trip():
    a = Tensor(Tensor(X, I), Y)
    p = coherence_proof(nm(a), nf(a))
    q = proof_from_text(proof_to_text(p))
    assert q == p
    assert K.check_proof(q) == K.Equation(nm(a), nm(a))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_random_proof_round_trip(seed):
    p = random_proof(random.Random(seed))
    assert proof_from_text(proof_to_text(p)) == p
