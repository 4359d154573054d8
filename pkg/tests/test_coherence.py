import pytest
from hypothesis import given, settings

from skewmon import kernel as K
from skewmon.coherence import (
    NotNormalForm,
    NotReverseNormalForm,
    coherence_proof,
    coherence_rev_proof,
    decide_equal,
    decide_equal_from_rev_nf,
    decide_equal_into_nf,
    main_lemma_proof,
    main_lemma_rev,
    nm,
    nm_emb_id_proof,
    nm_natural_proof,
    nm_natural_rev,
    nmrev,
    nmrev_emb_id,
    nmx,
    nmxr,
)
from skewmon.enumeration import all_maps, all_terms
from skewmon.maps import Alpha, Comp, Id, Lam, Rho, TensorM, check_map, cod, dom
from skewmon.terms import (
    I,
    J,
    JR,
    NormalForm,
    RevNormalForm,
    Tensor,
    Var,
    emb,
    embrev,
    nf,
    nfrev,
    nfx,
    nfxr,
)
from strategies import maps, normal_forms, rev_normal_forms

X, Y, Z = Var("X"), Var("Y"), Var("Z")


def nfl(*xs):
    return NormalForm(tuple(xs))


def rnfl(*xs):
    return RevNormalForm(tuple(xs))


def checks_to(p, lhs, rhs):
    assert K.check_proof(p) == K.Equation(lhs, rhs)


def test_nmx_examples():
    n = nfl("Y")
    assert nmx(X, n) == Id(Tensor(X, emb(n)))
    assert nmx(I, J) == Lam(I)
    assert nmx(Tensor(X, I), J) == Comp(
        Id(Tensor(X, I)), Comp(TensorM(Id(X), Lam(I)), Alpha(X, I, I))
    )


def test_nm_examples():
    assert nm(I) == Comp(Lam(I), Rho(I))
    assert nm(X) == Comp(Id(Tensor(X, I)), Rho(X))
    f = nm(Tensor(I, X))
    assert dom(f) == Tensor(I, X)
    assert cod(f) == Tensor(X, I) == emb(nfl("X"))


def test_canonical_maps_are_typed_exhaustively():
    # the constructions never look at variable names, so depth-4 shapes over
    # one variable plus every depth-3 term over three variables cover all cases
    ns = [J, nfl("Y"), nfl("X", "Z")]
    rs = [JR, rnfl("Y"), rnfl("X", "Z")]
    for a in all_terms(4, ("X",)) + all_terms(3):
        f = nm(a)
        check_map(f)
        assert (dom(f), cod(f)) == (a, emb(nf(a)))
        g = nmrev(a)
        check_map(g)
        assert (dom(g), cod(g)) == (embrev(nfrev(a)), a)
        for n, r in zip(ns, rs):
            h = nmx(a, n)
            assert (dom(h), cod(h)) == (Tensor(a, emb(n)), emb(nfx(a, n)))
            k = nmxr(a, r)
            assert (dom(k), cod(k)) == (embrev(nfxr(a, r)), Tensor(embrev(r), a))


@pytest.mark.parametrize("f", [Id(X), Lam(X), Rho(X), Alpha(X, Y, Z), Alpha(Tensor(X, I), I, Y)])
@pytest.mark.parametrize("n", [J, nfl("Y"), nfl("X", "Z", "Y")])
def test_main_lemma_conclusion(f, n):
    checks_to(main_lemma_proof(f, n), nmx(dom(f), n), Comp(nmx(cod(f), n), TensorM(f, Id(emb(n)))))


@pytest.mark.parametrize("f", [Id(I), Rho(X), Lam(I), TensorM(Lam(X), Rho(Y))])
def test_nm_naturality_conclusion(f):
    checks_to(nm_natural_proof(f), nm(dom(f)), Comp(nm(cod(f)), f))


@pytest.mark.parametrize("n", [J, nfl("X"), nfl("X", "Y"), nfl("Z", "Z", "X")])
def test_nm_of_normal_form_is_identity(n):
    checks_to(nm_emb_id_proof(n), nm(emb(n)), Id(emb(n)))


def test_nm_at_unit_is_law_a():
    assert nm_emb_id_proof(J) == K.LawA()


def test_coherence_examples():
    f = Comp(Lam(I), Rho(I))
    checks_to(coherence_proof(f, J), nm(I), f)
    checks_to(coherence_proof(Rho(X), nfl("X")), nm(X), Rho(X))
    with pytest.raises(NotNormalForm):
        coherence_proof(Lam(X), nfl("X"))


def test_decide_examples():
    f, g = nm(Tensor(I, I)), Lam(I)
    checks_to(decide_equal_into_nf(f, g), f, g)
    assert decide_equal_into_nf(Id(X), Id(X)) is None
    assert decide_equal_into_nf(Id(Tensor(I, I)), Comp(Rho(I), Lam(I))) is None
    with pytest.raises(ValueError):
        decide_equal_into_nf(Id(X), Id(Y))


def test_reverse_examples():
    assert nmrev(I) == Comp(Lam(I), Rho(I))
    assert (dom(nmrev(I)), cod(nmrev(I))) == (I, I)
    # two parallel maps out of I * X = embrev(rev[X])
    f = Comp(Lam(Tensor(X, I)), Comp(Alpha(I, X, I), Rho(Tensor(I, X))))
    g = Comp(Rho(X), Lam(X))
    assert (dom(f), cod(f)) == (dom(g), cod(g)) == (Tensor(I, X), Tensor(X, I))
    checks_to(decide_equal_from_rev_nf(f, g), f, g)
    checks_to(decide_equal(f, g), f, g)
    with pytest.raises(NotReverseNormalForm):
        coherence_rev_proof(Id(X), rnfl("X"))
    assert decide_equal_from_rev_nf(Id(X), Id(X)) is None


@pytest.mark.parametrize("f", [Id(X), Lam(X), Rho(I), Alpha(X, I, Y), TensorM(Lam(X), Rho(Y))])
@pytest.mark.parametrize("r", [JR, rnfl("X"), rnfl("Y", "X")])
def test_reverse_lemma_conclusions(f, r):
    t = main_lemma_rev(f, r)
    assert K.check_proof(t.proof) == K.Equation(
        nmxr(cod(f), r), Comp(TensorM(Id(embrev(r)), f), nmxr(dom(f), r))
    )
    t = nm_natural_rev(f)
    assert K.check_proof(t.proof) == K.Equation(nmrev(cod(f)), Comp(f, nmrev(dom(f))))


@given(rev_normal_forms)
def test_nmrev_of_reverse_normal_form_is_identity(r):
    t = nmrev_emb_id(r)
    assert K.check_proof(t.proof) == K.Equation(nmrev(embrev(r)), Id(embrev(r)))


@settings(max_examples=40, deadline=None)
@given(maps, normal_forms)
def test_main_lemma_property(f, n):
    checks_to(main_lemma_proof(f, n), nmx(dom(f), n), Comp(nmx(cod(f), n), TensorM(f, Id(emb(n)))))


@settings(max_examples=25, deadline=None)
@given(maps)
def test_coherence_for_maps_followed_by_nm(f):
    # nm(cod f) . f lands in a normal form for any f
    g = Comp(nm(cod(f)), f)
    checks_to(coherence_proof(g, nf(cod(f))), nm(dom(f)), g)


@settings(max_examples=25, deadline=None)
@given(maps)
def test_reverse_coherence_for_maps_after_nmrev(f):
    g = Comp(f, nmrev(dom(f)))
    r = nfrev(dom(f))
    checks_to(coherence_rev_proof(g, r), nmrev(cod(f)), g)


def test_maps_into_a_normal_form_start_at_it_exhaustive():
    for f in all_maps(6):
        n = nf(cod(f))
        if cod(f) == emb(n):
            assert nf(dom(f)) == n


def test_main_lemma_exhaustive_small():
    ns = [J, nfl("X"), nfl("Y", "Z", "X")]
    for f in all_maps(5):
        for n in ns:
            checks_to(main_lemma_proof(f, n), nmx(dom(f), n),
                      Comp(nmx(cod(f), n), TensorM(f, Id(emb(n)))))
