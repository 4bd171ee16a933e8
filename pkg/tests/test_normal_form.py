import random

import pytest
from hypothesis import given, settings

from sl2aut import (
    CElement,
    CanonicalForm,
    DeltaP,
    DeltaU,
    EndoTriple,
    EnvelopingAlgebra,
    GeneratorWord,
    Hyperbolic,
    NotAnAutomorphism,
    PoissonAlgebra,
    Scalar,
    SideMismatch,
    TauAlpha,
    UPoly,
    compose,
    coset_decompose_A,
    coset_decompose_T,
    identity,
    map_to_U,
    multidegree,
    multidegree_formula,
    normalize_word,
    recognize_triple,
    verify_endomorphism,
    word_equal,
)
from sl2aut.normal_form import ShapeMismatch, map_to_P
from helpers import lambdas, rand_canonical, rand_scalar, rand_word, seeds

X = UPoly.x()
s = Scalar


@pytest.fixture
def P():
    return PoissonAlgebra(Scalar(1))


def test_coset_decompose_A_examples(P):
    a, b = s(2), s(3)
    assert coset_decompose_A(((s(1), s(0)), (a, b))) == (None, CElement(a, b))
    assert coset_decompose_A(((s(0), s(1)), (s(1), s(0)))) == (TauAlpha(0), CElement())
    rep, c = coset_decompose_A(((s(2), s(1)), (s(1), s(1))))
    assert rep == TauAlpha(2) and c == CElement(1, -1)
    t = ((s(2), s(1)), (s(1), s(1)))
    from sl2aut import LinearMatrix

    assert compose(rep.to_triple(P), c.to_triple(P)) == LinearMatrix(t).to_triple(P)


def test_coset_decompose_T_examples(P):
    rep, c = coset_decompose_T(X**2 + 3, 1)
    assert rep == DeltaP(X**2)
    assert c.to_triple(P) == DeltaP(UPoly([3])).to_triple(P)
    assert c == CElement(-3, 1)
    rep, c = coset_decompose_T(UPoly(), 5)
    assert rep is None and c.to_triple(P) == Hyperbolic(5).to_triple(P)
    rep, c = coset_decompose_T(X, 1)
    assert rep == DeltaP(X) and c.is_identity


def test_normalize_examples(P):
    cf = normalize_word(GeneratorWord(P, (DeltaP(X**2 + 3),)))
    assert cf.k == 1 and cf.alternation[0] == (None, DeltaP(X**2))
    assert cf.trailing is None and cf.tail == CElement(-3, 1)
    assert str(cf) == "delta[x^2] . C[alpha=-3, beta=1]"
    empty = normalize_word(GeneratorWord(P, ()))
    assert empty.is_identity() and empty.k == 0
    w = GeneratorWord(P, (TauAlpha(0), DeltaP(X), TauAlpha(0), DeltaP(X)))
    cf = normalize_word(w)
    assert cf.k == 2 and cf.to_triple() == w.to_triple()


def test_multidegree_examples(P):
    assert multidegree(identity(P)) == (1, 1, 1)
    assert multidegree(DeltaP(X).to_triple(P)) == (3, 2, 1)
    w = GeneratorWord(P, (DeltaP(X), TauAlpha(0), DeltaP(X)))
    assert multidegree(w.to_triple()) == (9, 6, 3)
    e, h, f = P.gens()
    with pytest.raises(NotAnAutomorphism):
        multidegree(EndoTriple(P, e, h, e))


def test_multidegree_formula_examples(P):
    def cf(*ns):
        alternation = [(None if i == 0 else TauAlpha(1), DeltaP(X**n)) for i, n in enumerate(ns)]
        return CanonicalForm(P, tuple(alternation))

    assert multidegree_formula(cf(2)) == (5, 3, 1)
    assert multidegree_formula(cf(1, 2)) == (15, 9, 3)
    assert multidegree_formula(cf(1)) == (3, 2, 1)
    with pytest.raises(ShapeMismatch):
        multidegree_formula(CanonicalForm(P, ((TauAlpha(0), DeltaP(X)),)))
    with pytest.raises(ShapeMismatch):
        multidegree_formula(CanonicalForm(P, ((None, DeltaP(X)),), TauAlpha(0)))


def test_canonical_form_invariants(P):
    with pytest.raises(ValueError):
        CanonicalForm(P, ((None, DeltaP(X + 1)),))
    with pytest.raises(ValueError):
        CanonicalForm(P, ((None, DeltaP(X)), (None, DeltaP(X))))
    with pytest.raises(SideMismatch):
        CanonicalForm(P, ((None, DeltaU(X)),))


def test_recognize_examples(P):
    assert recognize_triple(identity(P)).is_identity()
    cf = recognize_triple(DeltaP(X**2).to_triple(P))
    assert cf.k == 1 and cf.alternation[0][1] == DeltaP(X**2)
    w = GeneratorWord(P, (TauAlpha(0), DeltaP(X), TauAlpha(1), DeltaP(X**3), Hyperbolic(2)))
    assert recognize_triple(w.to_triple()) == normalize_word(w)


def test_recognize_rejects_non_automorphisms(P):
    e, h, f = P.gens()
    for t in (EndoTriple(P, e, h, e), EndoTriple(P, e + h * h, h, f), EndoTriple(P, f, h, e), EndoTriple(P, 2 * e, h, f)):
        with pytest.raises(NotAnAutomorphism):
            recognize_triple(t)


def test_map_to_U_examples():
    lam = Scalar(3)
    P, U = PoissonAlgebra(lam), EnvelopingAlgebra(lam)
    w = map_to_U(GeneratorWord(P, (DeltaP(X**2),)))
    assert w.factors == (DeltaU(X**2),)
    assert verify_endomorphism(w.to_triple())
    assert map_to_U(GeneratorWord(P, ())).factors == ()
    g1, g2 = X**2, 2 * X
    both = map_to_U(GeneratorWord(P, (DeltaP(g1), DeltaP(g2))))
    assert both.to_triple() == DeltaU(g1 + g2).to_triple(U)
    with pytest.raises(SideMismatch):
        map_to_U(GeneratorWord(U, ()))


def test_word_equal_examples(P):
    W = lambda *gs: GeneratorWord(P, gs)
    assert word_equal(W(DeltaP(X), DeltaP(-X)), W(), cross_check=True)
    assert word_equal(W(TauAlpha(0), TauAlpha(0)), W(), cross_check=True)
    assert not word_equal(W(DeltaP(X)), W(DeltaP(X**2)), cross_check=True)


@given(seeds, lambdas)
@settings(max_examples=20)
def test_normalize_is_sound(seed, lam):
    rng = random.Random(seed)
    for A in (PoissonAlgebra(lam), EnvelopingAlgebra(lam)):
        n = rng.randint(0, 6 if A.__class__ is PoissonAlgebra else 4)
        w = rand_word(rng, A, n, max_deg=4 if n <= 3 else 2)
        cf = normalize_word(w)
        assert cf.to_triple() == w.to_triple()
        assert normalize_word(cf.to_word()) == cf


@given(seeds)
@settings(max_examples=20)
def test_canonical_forms_are_unique(seed):
    rng = random.Random(seed)
    P = PoissonAlgebra(rand_scalar(rng))
    forms = {rand_canonical(rng, P, rng.randint(0, 2), 2) for _ in range(6)}
    triples = {cf.to_triple() for cf in forms}
    assert len(triples) == len(forms)


@given(seeds, lambdas)
@settings(max_examples=20)
def test_multidegree_consistency(seed, lam):
    rng = random.Random(seed)
    P = PoissonAlgebra(lam)
    cf = rand_canonical(rng, P, rng.randint(1, 2), 3, bare=True)
    assert multidegree(cf.to_triple()) == multidegree_formula(cf)


@given(seeds, lambdas)
@settings(max_examples=20)
def test_recognition_round_trip(seed, lam):
    rng = random.Random(seed)
    for A in (PoissonAlgebra(lam), EnvelopingAlgebra(lam)):
        cf = rand_canonical(rng, A, rng.randint(0, 2), 2)
        assert recognize_triple(cf.to_triple()) == cf


@given(seeds, lambdas)
@settings(max_examples=20)
def test_amalgamation(seed, lam):
    rng = random.Random(seed)
    P = PoissonAlgebra(lam)
    a, b = rand_scalar(rng), rand_scalar(rng, nonzero=True)
    c = CElement(a, b)
    linear = GeneratorWord(P, (c.inverse(), c, c))
    g0 = -a / b
    triangular = GeneratorWord(P, (DeltaP(UPoly([g0])), Hyperbolic(b)))
    n1, n2 = normalize_word(linear), normalize_word(triangular)
    assert not n1.alternation and not n2.alternation
    assert (n1.tail == n2.tail) == (linear.to_triple() == triangular.to_triple())
    other = GeneratorWord(P, (Hyperbolic(b + 1),)) if b + 1 else GeneratorWord(P, (Hyperbolic(2),))
    n3 = normalize_word(other)
    assert (n1.tail == n3.tail) == (linear.to_triple() == other.to_triple())


@given(seeds, lambdas)
@settings(max_examples=15)
def test_map_to_U_is_a_homomorphism(seed, lam):
    rng = random.Random(seed)
    P = PoissonAlgebra(lam)
    w1, w2 = rand_word(rng, P, rng.randint(0, 2)), rand_word(rng, P, rng.randint(0, 2))
    lhs = map_to_U(normalize_word(w1.then(w2))).to_triple()
    assert lhs == compose(map_to_U(w1).to_triple(), map_to_U(w2).to_triple())
    assert map_to_P(map_to_U(w1)).to_triple() == w1.to_triple()


@given(seeds)
@settings(max_examples=20)
def test_nontrivial_forms_are_not_linear(seed):
    rng = random.Random(seed)
    P = PoissonAlgebra(Scalar(1))
    cf = rand_canonical(rng, P, rng.randint(1, 2), 2)
    assert multidegree(cf.to_triple()) != (1, 1, 1)
