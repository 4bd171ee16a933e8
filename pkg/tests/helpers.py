"""Random samplers shared by the unit, property and acceptance tests."""

import random

from hypothesis import strategies as st

from sl2aut import (
    CElement,
    CanonicalForm,
    EnvelopingAlgebra,
    GeneratorWord,
    Hyperbolic,
    LinearMatrix,
    PoissonAlgebra,
    Scalar,
    TauAlpha,
    UPoly,
)
from sl2aut.automorphisms import delta

LAMBDAS = [Scalar(0), Scalar(1), Scalar(-4), Scalar(1, 1), Scalar(1, 2)]


# -- random.Random samplers ---------------------------------------------------------


def rand_scalar(rng, bound=4, complex_rate=0.3, nonzero=False):
    while True:
        re = rng.randint(-bound, bound)
        im = rng.randint(-bound, bound) if rng.random() < complex_rate else 0
        den = rng.choice([1, 1, 2, 3])
        s = Scalar(re, im) / den
        if s or not nonzero:
            return s


def rand_poly(rng, degree, constant=True):
    coeffs = [rand_scalar(rng) if constant else 0]
    coeffs += [rand_scalar(rng) for _ in range(degree - 1)]
    if degree >= 1:
        coeffs.append(rand_scalar(rng, nonzero=True))
    return UPoly(coeffs)


def rand_p_element(rng, algebra, max_deg=3, max_terms=4):
    x = algebra.zero()
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_deg)
        if algebra.is_free:
            me = rng.randint(0, d)
            mh = rng.randint(0, d - me)
            mf = d - me - mh
        else:
            mh = rng.randint(0, d)
            rest = d - mh
            me, mf = (rest, 0) if rng.random() < 0.5 else (0, rest)
        x = x + algebra.monomial(me, mh, mf, rand_scalar(rng, nonzero=True))
    return x


def rand_u_element(rng, algebra, max_deg=3, max_terms=4):
    x = algebra.zero()
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_deg)
        if algebra.is_free:
            mf = rng.randint(0, d)
            mh = rng.randint(0, d - mf)
            me = d - mf - mh
        else:
            mh = rng.randint(0, d)
            rest = d - mh
            mf, me = (rest, 0) if rng.random() < 0.5 else (0, rest)
        x = x + algebra.monomial(mf, mh, me, rand_scalar(rng, nonzero=True))
    return x


def rand_matrix(rng):
    while True:
        m = tuple(tuple(rand_scalar(rng, 3) for _ in range(2)) for _ in range(2))
        if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
            return m


def rand_generator(rng, side, max_deg=2):
    kind = rng.choice(["tau", "delta", "delta", "hyp", "lin", "C"])
    if kind == "tau":
        return TauAlpha(rand_scalar(rng))
    if kind == "delta":
        return delta(rand_poly(rng, rng.randint(0, max_deg)), side)
    if kind == "hyp":
        return Hyperbolic(rand_scalar(rng, nonzero=True))
    if kind == "lin":
        return LinearMatrix(rand_matrix(rng))
    return CElement(rand_scalar(rng), rand_scalar(rng, nonzero=True))


def rand_word(rng, algebra, length, max_deg=2):
    from sl2aut.automorphisms import side_of

    side = side_of(algebra)
    return GeneratorWord(algebra, tuple(rand_generator(rng, side, max_deg) for _ in range(length)))


def rand_canonical(rng, algebra, k, max_n, bare=False, ns=None):
    from sl2aut.automorphisms import side_of

    side = side_of(algebra)
    alternation = []
    for i in range(k):
        if i == 0:
            a = None if bare or rng.random() < 0.5 else TauAlpha(rand_scalar(rng))
        else:
            a = TauAlpha(rand_scalar(rng))
        n = ns[i] if ns else rng.randint(1, max_n)
        alternation.append((a, delta(rand_poly(rng, n, constant=False), side)))
    if bare:
        return CanonicalForm(algebra, tuple(alternation))
    trailing = TauAlpha(rand_scalar(rng)) if rng.random() < 0.5 else None
    tail = CElement(rand_scalar(rng), rand_scalar(rng, nonzero=True)) if rng.random() < 0.7 else CElement()
    return CanonicalForm(algebra, tuple(alternation), trailing, tail)


# -- hypothesis strategies ----------------------------------------------------------

small_ints = st.integers(-5, 5)
scalars = st.builds(lambda a, b, d: Scalar(a, b) / d, small_ints, small_ints, st.integers(1, 4))
nonzero_scalars = scalars.filter(bool)
lambdas = st.sampled_from(LAMBDAS)
seeds = st.integers(0, 2**32 - 1)


def quotient_p(lam):
    return PoissonAlgebra(lam)


def quotient_u(lam):
    return EnvelopingAlgebra(lam)
