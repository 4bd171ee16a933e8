"""Exact arithmetic in the Casimir quotients of P(sl2) and U(sl2) and their automorphism groups."""

from .scalar import I, ONE, ZERO, Scalar, parse_scalar, sqrt_exact
from .poly import UPoly
from .poisson import AmbientMismatch, Monomial, PoissonAlgebra, PoissonElement
from .enveloping import EnvelopingAlgebra, EnvElement, PBWMonomial, symmetrize
from .automorphisms import (
    CElement,
    DeltaP,
    DeltaU,
    EndoTriple,
    Hyperbolic,
    LinearMatrix,
    SideMismatch,
    SingularMatrix,
    TauAlpha,
    apply,
    compose,
    exp_ad,
    identity,
    phi_psi_u,
    verify_endomorphism,
)
from .normal_form import (
    CanonicalForm,
    GeneratorWord,
    NotAnAutomorphism,
    coset_decompose_A,
    coset_decompose_T,
    map_to_U,
    multidegree,
    multidegree_formula,
    normalize_word,
    recognize_triple,
    word_equal,
)
from .parsing import ParseError, parse_expression, parse_poly, parse_triple, parse_word

__all__ = [name for name in dir() if not name.startswith("_")]
