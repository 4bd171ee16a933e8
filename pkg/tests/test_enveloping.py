import random
from itertools import product

import pytest
from hypothesis import given

from sl2aut import EnvelopingAlgebra, PBWMonomial, Scalar, symmetrize
from sl2aut.enveloping import SYMMETRIZE_MAX_DEGREE, free_algebra
from sl2aut.normal_form import _row_reduce
from sl2aut.poisson import PoissonAlgebra, free_algebra as free_p
from helpers import LAMBDAS, lambdas, rand_p_element, rand_u_element, seeds
from oracles import p_dict, symmetrize_oracle, u_dict, u_mul


@pytest.fixture
def FU():
    return free_algebra()


def test_commutation_relations(FU):
    e, h, f = FU.gens()
    assert e * f - f * e == h
    assert h * f == f * h - 2 * f
    assert h.commutator(e) == 2 * e
    assert e.commutator(e) == 0


def test_ef_in_quotient():
    lam = Scalar(3)
    U = EnvelopingAlgebra(lam)
    e, h, f = U.gens()
    assert e * f == (lam + 2 * h - h * h) / 4
    assert 4 * e * f + h * h - 2 * h == lam
    assert 4 * f * e + h * h + 2 * h == lam


def test_casimir_presentations_agree_and_are_central(FU):
    e, h, f = FU.gens()
    forms = [4 * f * e + h**2 + 2 * h, 4 * e * f + h**2 - 2 * h, 2 * e * f + 2 * f * e + h**2]
    assert forms[0] == forms[1] == forms[2] == FU.casimir()
    for x in FU.gens():
        assert not forms[0].commutator(x)


def test_pbw_terms(FU):
    e, h, f = FU.gens()
    x = e * h * f
    assert x.terms() == {
        PBWMonomial(1, 1, 1): Scalar(1),
        PBWMonomial(1, 0, 1): Scalar(-4),
        PBWMonomial(0, 2, 0): Scalar(1),
        PBWMonomial(0, 1, 0): Scalar(-2),
    }
    assert x.degree() == 3
    assert x.leading_word() == PBWMonomial(1, 1, 1)


def test_symmetrize_examples(FU):
    P = free_p()
    E, H, F = P.gens()
    e, h, f = FU.gens()
    assert symmetrize(E * F) == f * e + h / 2
    assert symmetrize(4 * E * F + H**2) == 4 * f * e + h**2 + 2 * h
    assert symmetrize(H**3) == h**3


def test_symmetrize_guards():
    with pytest.raises(ValueError):
        symmetrize(PoissonAlgebra(Scalar(1)).e)
    E = free_p().e
    with pytest.raises(ValueError):
        symmetrize(E ** (SYMMETRIZE_MAX_DEGREE + 1))


def test_symmetrize_is_bijective_up_to_degree_4():
    P = free_p()
    rows, index = [], {}
    for me, mh, mf in product(range(5), repeat=3):
        if me + mh + mf > 4:
            continue
        img = symmetrize(P.monomial(me, mh, mf))
        for m in img.terms():
            index.setdefault(m, len(index))
        rows.append(img)
    matrix = []
    for img in rows:
        row = [Scalar(0)] * len(index)
        for m, c in img.terms().items():
            row[index[m]] = c
        matrix.append(row)
    _, pivots = _row_reduce(matrix, len(index))
    assert len(rows) == 35 and len(pivots) == 35


@given(seeds)
def test_symmetrize_matches_permutation_oracle(seed):
    rng = random.Random(seed)
    a = rand_p_element(rng, free_p(), 4)
    assert u_dict(symmetrize(a)) == symmetrize_oracle(p_dict(a))


@given(seeds)
def test_free_product_matches_word_rewriting(seed):
    rng = random.Random(seed)
    U = free_algebra()
    a, b = rand_u_element(rng, U), rand_u_element(rng, U)
    assert u_dict(a * b) == u_mul(u_dict(a), u_dict(b))


@given(seeds, lambdas)
def test_quotient_product_matches_word_rewriting(seed, lam):
    rng = random.Random(seed)
    U = EnvelopingAlgebra(lam)
    a, b = rand_u_element(rng, U), rand_u_element(rng, U)
    assert u_dict(a * b) == u_mul(u_dict(a), u_dict(b), lam)


@given(seeds, lambdas)
def test_associativity_and_jacobi(seed, lam):
    rng = random.Random(seed)
    for U in (free_algebra(), EnvelopingAlgebra(lam)):
        a, b, c = (rand_u_element(rng, U) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert not (a.commutator(b.commutator(c)) + b.commutator(c.commutator(a)) + c.commutator(a.commutator(b)))


def test_quotient_normal_form_constraint():
    rng = random.Random(5)
    for lam in LAMBDAS:
        U = EnvelopingAlgebra(lam)
        for _ in range(10):
            x = rand_u_element(rng, U) * rand_u_element(rng, U)
            assert all(m.mf == 0 or m.me == 0 for m in x.terms())


def test_ambient_mismatch():
    from sl2aut import AmbientMismatch

    with pytest.raises(AmbientMismatch):
        EnvelopingAlgebra(Scalar(1)).e * free_algebra().e
