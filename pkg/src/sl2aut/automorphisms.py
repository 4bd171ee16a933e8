"""Endomorphism triples and the generators of Aut(P_lambda) and Aut(U_lambda).

A triple ``(A, B, C)`` is the endomorphism sending e, h, f to A, B, C.  The
composition ``compose(theta, phi)`` is the map x -> theta(phi(x)); its
images are phi's images with theta's images substituted for e, h, f.

Linear automorphisms come from 2x2 matrices T acting by X -> T^-1 X T on
sl2 = span(E, H, F).  With this convention hat(S T) = hat(T) o hat(S).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple, Union

from .enveloping import EnvelopingAlgebra, EnvElement
from .poisson import AmbientMismatch, PoissonAlgebra, PoissonElement
from .poly import UPoly
from .scalar import ONE, ZERO, Scalar, ScalarLike

Algebra = Union[PoissonAlgebra, EnvelopingAlgebra]
Element = Union[PoissonElement, EnvElement]
Matrix = Tuple[Tuple[Scalar, Scalar], Tuple[Scalar, Scalar]]

P_SIDE = "P"
U_SIDE = "U"


class SideMismatch(ValueError):
    """A generator or triple was used with the wrong algebra."""


class SingularMatrix(ValueError):
    pass


def side_of(algebra: Algebra) -> str:
    return P_SIDE if isinstance(algebra, PoissonAlgebra) else U_SIDE


def algebra_for(side: str, lam: ScalarLike) -> Algebra:
    if side == P_SIDE:
        return PoissonAlgebra(Scalar.coerce(lam))
    if side == U_SIDE:
        return EnvelopingAlgebra(Scalar.coerce(lam))
    raise ValueError(f"unknown side {side!r}")


def _require_quotient(algebra: Algebra) -> None:
    if algebra.is_free:
        raise SideMismatch("automorphisms are defined on the quotients P_lambda and U_lambda only")


# -- 2x2 matrices ---------------------------------------------------------------


def matrix(a: ScalarLike, b: ScalarLike, c: ScalarLike, d: ScalarLike) -> Matrix:
    s = Scalar.coerce
    return ((s(a), s(b)), (s(c), s(d)))


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    (a, b), (c, d) = x
    (p, q), (r, s) = y
    return ((a * p + b * r, a * q + b * s), (c * p + d * r, c * q + d * s))


def det(x: Matrix) -> Scalar:
    (a, b), (c, d) = x
    return a * d - b * c


def mat_inv(x: Matrix) -> Matrix:
    (a, b), (c, d) = x
    dt = det(x)
    if not dt:
        raise SingularMatrix("matrix is singular")
    k = dt.inverse()
    return ((d * k, -b * k), (-c * k, a * k))


def mat_scale(x: Matrix, k: Scalar) -> Matrix:
    return tuple(tuple(v * k for v in row) for row in x)  # type: ignore[return-value]


def normalize_matrix(x: Matrix) -> Matrix:
    """Representative of x in PGL2: first nonzero entry in column-major order is 1."""
    if not det(x):
        raise SingularMatrix("matrix is singular")
    for v in (x[0][0], x[1][0], x[0][1], x[1][1]):
        if v:
            return mat_scale(x, v.inverse())
    raise SingularMatrix("zero matrix")


def sl2_coordinates(x: Matrix) -> Tuple[Scalar, Scalar, Scalar]:
    """Coordinates (e, h, f) of a traceless matrix in the basis E, H, F."""
    (a, b), (c, d) = x
    if a + d:
        raise ValueError("matrix is not traceless")
    return b, a, c


def from_sl2_coordinates(ce: Scalar, ch: Scalar, cf: Scalar) -> Matrix:
    return ((ch, ce), (cf, -ch))


E_MAT = from_sl2_coordinates(ONE, ZERO, ZERO)
H_MAT = from_sl2_coordinates(ZERO, ONE, ZERO)
F_MAT = from_sl2_coordinates(ZERO, ZERO, ONE)


def inner_action(t: Matrix) -> Tuple[Tuple[Scalar, Scalar, Scalar], ...]:
    """Coordinates of T^-1 X T for X = E, H, F."""
    ti = mat_inv(t)
    return tuple(sl2_coordinates(mat_mul(mat_mul(ti, x), t)) for x in (E_MAT, H_MAT, F_MAT))


# -- generators -----------------------------------------------------------------


class Generator:
    """Base class of the atomic automorphisms that make up words."""

    is_linear = False

    def matrix(self) -> Matrix:  # pragma: no cover - overridden by linear generators
        raise TypeError(f"{self} is not linear")

    def to_triple(self, algebra: Algebra) -> "EndoTriple":
        raise NotImplementedError

    def inverse(self) -> "Generator":
        raise NotImplementedError

    def __str__(self):
        from .parsing import format_generator

        return format_generator(self)


class _LinearGenerator(Generator):
    is_linear = True

    def to_triple(self, algebra: Algebra) -> "EndoTriple":
        _require_quotient(algebra)
        e, h, f = algebra.gens()
        images = [ce * e + ch * h + cf * f for ce, ch, cf in inner_action(self.matrix())]
        return EndoTriple(algebra, *images)

    def inverse(self) -> "Generator":
        return LinearMatrix(mat_inv(self.matrix()))


@dataclass(frozen=True, eq=True)
class LinearMatrix(_LinearGenerator):
    """hat(T) for T in GL2, stored as its normalized PGL2 representative."""

    T: Matrix

    def __post_init__(self):
        t = tuple(tuple(Scalar.coerce(v) for v in row) for row in self.T)
        object.__setattr__(self, "T", normalize_matrix(t))

    def matrix(self) -> Matrix:
        return self.T

    __str__ = Generator.__str__


@dataclass(frozen=True)
class TauAlpha(_LinearGenerator):
    """tau_alpha = (f, -h + 2 alpha f, e + alpha h - alpha^2 f) = hat([[alpha, 1], [1, 0]])."""

    alpha: Scalar

    def __post_init__(self):
        object.__setattr__(self, "alpha", Scalar.coerce(self.alpha))

    def matrix(self) -> Matrix:
        return matrix(self.alpha, 1, 1, 0)

    __str__ = Generator.__str__


@dataclass(frozen=True)
class Hyperbolic(_LinearGenerator):
    """H_nu = (nu e, h, f / nu)."""

    nu: Scalar

    def __post_init__(self):
        object.__setattr__(self, "nu", Scalar.coerce(self.nu))
        if not self.nu:
            raise ValueError("hyperbolic rotation needs nu != 0")

    def matrix(self) -> Matrix:
        return matrix(1, 0, 0, self.nu)

    def inverse(self) -> "Hyperbolic":
        return Hyperbolic(self.nu.inverse())

    __str__ = Generator.__str__


@dataclass(frozen=True)
class CElement(_LinearGenerator):
    """A linear triangular automorphism hat([[1, 0], [alpha, beta]]).

    Its triple is (beta e + alpha h - alpha^2/beta f, h - 2 alpha/beta f, f/beta).
    """

    alpha: Scalar = ZERO
    beta: Scalar = ONE

    def __post_init__(self):
        object.__setattr__(self, "alpha", Scalar.coerce(self.alpha))
        object.__setattr__(self, "beta", Scalar.coerce(self.beta))
        if not self.beta:
            raise SingularMatrix("C element needs beta != 0")

    def matrix(self) -> Matrix:
        return matrix(1, 0, self.alpha, self.beta)

    @classmethod
    def from_matrix(cls, t: Matrix) -> "CElement":
        (a, b), (c, d) = t
        if b or not a:
            raise ValueError("matrix is not lower triangular")
        return cls(c / a, d / a)

    @property
    def is_identity(self) -> bool:
        return not self.alpha and self.beta == ONE

    def then(self, other: "CElement") -> "CElement":
        """self o other."""
        return CElement.from_matrix(mat_mul(other.matrix(), self.matrix()))

    def inverse(self) -> "CElement":
        return CElement.from_matrix(mat_inv(self.matrix()))

    __str__ = Generator.__str__


class _Triangular(Generator):
    g: UPoly
    side: str

    def images(self, algebra: Algebra):
        _require_quotient(algebra)
        if side_of(algebra) != self.side:
            raise SideMismatch(f"{type(self).__name__} acts on the {self.side} side only")
        e, h, f = algebra.gens()
        one = algebra.one()
        gf = self.g(f, one)
        img_e = e - gf * h - f * gf * gf
        if self.side == U_SIDE:
            img_e = img_e + f * self.g.derivative()(f, one)
        return img_e, h + 2 * f * gf, f

    def to_triple(self, algebra: Algebra) -> "EndoTriple":
        return EndoTriple(algebra, *self.images(algebra))


@dataclass(frozen=True)
class DeltaP(_Triangular):
    """Delta_g = (e - g(f) h - f g(f)^2, h + 2 f g(f), f) on P_lambda."""

    g: UPoly
    side = P_SIDE

    def inverse(self) -> "DeltaP":
        return DeltaP(-self.g)

    __str__ = Generator.__str__


@dataclass(frozen=True)
class DeltaU(_Triangular):
    """delta_g = (e - g(f) h - f g(f)^2 + f g'(f), h + 2 f g(f), f) on U_lambda."""

    g: UPoly
    side = U_SIDE

    def inverse(self) -> "DeltaU":
        return DeltaU(-self.g)

    __str__ = Generator.__str__


def delta(g: UPoly, side: str) -> _Triangular:
    return DeltaP(g) if side == P_SIDE else DeltaU(g)


# -- triples --------------------------------------------------------------------


class EndoTriple:
    """Images (img_e, img_h, img_f) of an endomorphism of P_lambda or U_lambda."""

    __slots__ = ("algebra", "img_e", "img_h", "img_f")

    def __init__(self, algebra: Algebra, img_e: Element, img_h: Element, img_f: Element):
        _require_quotient(algebra)
        for x in (img_e, img_h, img_f):
            if x.algebra != algebra:
                raise AmbientMismatch(f"image in {x.algebra}, triple over {algebra}")
        self.algebra = algebra
        self.img_e = img_e
        self.img_h = img_h
        self.img_f = img_f

    @property
    def side(self) -> str:
        return side_of(self.algebra)

    @property
    def lam(self) -> Scalar:
        return self.algebra.lam

    def images(self) -> Tuple[Element, Element, Element]:
        return self.img_e, self.img_h, self.img_f

    def __iter__(self):
        return iter(self.images())

    def __eq__(self, other):
        if not isinstance(other, EndoTriple):
            return NotImplemented
        return self.algebra == other.algebra and self.images() == other.images()

    def __hash__(self):
        return hash((self.algebra, self.images()))

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.images()) + ")"

    def __repr__(self):
        return f"EndoTriple[{self.algebra}]{self}"


def identity(algebra: Algebra) -> EndoTriple:
    return EndoTriple(algebra, *algebra.gens())


def to_triple(gen: Generator, algebra: Algebra) -> EndoTriple:
    return gen.to_triple(algebra)


def apply(t: EndoTriple, a: Element) -> Element:
    """Substitute t's images for e, h, f in ``a`` and renormalize.

    On U_lambda each PBW word f^i h^j e^k becomes C^i B^j A^k, in that order.
    """
    if a.algebra != t.algebra:
        raise AmbientMismatch(f"cannot apply a triple over {t.algebra} to an element of {a.algebra}")
    A, B, C = t.images()
    one = t.algebra.one()
    blocks: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    for m, c in a.terms().items():
        blocks.setdefault((m.mf, m.me), {})[m.mh] = c
    b_pows = _Powers(B, one)
    c_pows = _Powers(C, one)
    a_pows = _Powers(A, one)
    out = t.algebra.zero()
    for (i, k), hpoly in blocks.items():
        mid = t.algebra.zero()
        for j, c in hpoly.items():
            mid = mid + b_pows[j] * c
        if i:
            mid = c_pows[i] * mid
        if k:
            mid = mid * a_pows[k]
        out = out + mid
    return out


class _Powers:
    def __init__(self, x: Element, one: Element):
        self._p = [one, x]

    def __getitem__(self, n: int) -> Element:
        while len(self._p) <= n:
            self._p.append(self._p[-1] * self._p[1])
        return self._p[n]


def compose(outer: EndoTriple, inner: EndoTriple) -> EndoTriple:
    """outer o inner, i.e. the map x -> outer(inner(x))."""
    if outer.algebra != inner.algebra:
        raise AmbientMismatch("triples over different algebras")
    return EndoTriple(outer.algebra, *(apply(outer, x) for x in inner.images()))


def verify_endomorphism(t: EndoTriple) -> bool:
    """Do the images satisfy the defining relations of the algebra?"""
    A, B, C = t.images()
    lam = t.lam
    if t.side == P_SIDE:
        return (
            A.bracket(C) == B
            and B.bracket(A) == 2 * A
            and B.bracket(C) == -2 * C
            and 4 * A * C + B * B == lam
        )
    return (
        A.commutator(C) == B
        and C.commutator(B) == 2 * C
        and B.commutator(A) == 2 * A
        and 4 * C * A + B * B + 2 * B == lam
    )


def exp_ad(p: PoissonElement) -> EndoTriple:
    """exp(ad p) for p a polynomial in f; ad p is locally nilpotent.

    Returns the triple of images of e, h, f.
    """
    algebra = p.algebra
    if algebra.is_free or not p.is_polynomial_in_f():
        raise ValueError("exp_ad expects a polynomial in f in P_lambda")
    deg = p.degree() if p else 0
    cap = 2 * deg * (1 + 1) + 4
    images = []
    for x in algebra.gens():
        total, term = x, x
        for i in range(1, cap + 1):
            term = p.bracket(term) / i
            if not term:
                break
            total = total + term
        else:
            raise RuntimeError("ad(p) did not terminate; p is not locally nilpotent")
        images.append(total)
    return EndoTriple(algebra, *images)


def phi_psi_u(n: int, mu: ScalarLike, which: str, lam: ScalarLike) -> EndoTriple:
    """Dixmier's exponential automorphisms Phi_{n,mu} and Psi_{n,mu} of U_lambda."""
    if n < 1:
        raise ValueError("n must be positive")
    mu = Scalar.coerce(mu)
    U = EnvelopingAlgebra(Scalar.coerce(lam))
    e, h, f = U.gens()
    a, b = mu * n, mu * mu * n * n
    if which == "Phi":
        img_e = e - a * f ** (n - 1) * h + a * (n - 1) * f ** (n - 1) - b * f ** (2 * n - 1)
        return EndoTriple(U, img_e, h + 2 * a * f ** n, f)
    if which == "Psi":
        img_f = f + a * e ** (n - 1) * h + a * (n - 1) * e ** (n - 1) - b * e ** (2 * n - 1)
        return EndoTriple(U, e, h - 2 * a * e ** n, img_f)
    raise ValueError("which must be 'Phi' or 'Psi'")


def triple_of_generators(gens: Iterable[Generator], algebra: Algebra) -> EndoTriple:
    """g1 o g2 o ... o gn, folded from the left."""
    acc = identity(algebra)
    for g in gens:
        acc = compose(acc, g.to_triple(algebra))
    return acc


def multidegree_of(t: EndoTriple) -> Tuple[int, int, int]:
    return tuple(x.degree() for x in t.images())  # type: ignore[return-value]


def sqrt_or_none(nu: ScalarLike) -> Optional[Scalar]:
    from .scalar import sqrt_exact

    return sqrt_exact(nu)


def hyperbolic_factorization(nu: ScalarLike) -> Tuple[Generator, ...]:
    """tau, Delta_{i s}, tau, Delta_{i/s}, tau, Delta_{i s} with s = sqrt(nu).

    Their composite is H_nu.  Only available when nu is a square in Q(i).
    """
    s = sqrt_or_none(nu)
    if s is None:
        raise ValueError(f"{nu} has no square root in Q(i)")
    i = Scalar(0, 1)
    tau = TauAlpha(ZERO)
    d1 = DeltaP(UPoly([i * s]))
    d2 = DeltaP(UPoly([i * s.inverse()]))
    return (tau, d1, tau, d2, tau, d1)
