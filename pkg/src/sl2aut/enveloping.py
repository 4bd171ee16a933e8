"""PBW arithmetic in U(sl2) and its Casimir quotients U_lambda.

Elements are sums of blocks f^a P(h) e^c with P a polynomial in h, which is
the PBW basis f^a h^b e^c grouped by (a, c).  Products are brought to this
order with

    e f = f e + h,     h f = f (h - 2),     e h = (h - 2) e,

and in U_lambda every block with a, c > 0 is reduced with
f e = (lambda - h^2 - 2h)/4, so normal-form words have a = 0 or c = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, total_ordering
from itertools import permutations
from math import factorial
from typing import Dict, Iterator, Mapping, Optional, Tuple

import flint

from ._kernel import Qi, make_scalar, scalar_parts
from .poisson import AmbientMismatch, PoissonElement
from .scalar import ONE, ZERO, Scalar, ScalarLike

SYMMETRIZE_MAX_DEGREE = 8

_Block = Tuple[int, int]  # (a, c): exponents of f on the left and e on the right


@total_ordering
@dataclass(frozen=True)
class PBWMonomial:
    """The ordered product f^mf h^mh e^me."""

    mf: int
    mh: int
    me: int

    @property
    def degree(self) -> int:
        return self.mf + self.mh + self.me

    def sort_key(self) -> Tuple[int, int, int, int]:
        return (self.degree, self.mf, self.mh, self.me)

    def __lt__(self, other: "PBWMonomial") -> bool:
        if not isinstance(other, PBWMonomial):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __str__(self):
        from .parsing import format_word

        return format_word(self.mf, self.mh, self.me) or "1"


def _hpoly(coeffs) -> flint.fmpq_poly:
    return flint.fmpq_poly(coeffs)


_H = _hpoly([0, 1])
_ONE_H = Qi(_hpoly([1]), _hpoly([]))


def _shift(p: Qi, t: int) -> Qi:
    """p(h + t)."""
    if not t:
        return p
    sub = _hpoly([t, 1])
    return Qi(p.re(sub), p.im(sub))


@lru_cache(maxsize=None)
def _reorder(c: int, m: int) -> Tuple[Tuple[int, flint.fmpq_poly], ...]:
    """e^c f^m as a list of (k, R_k) meaning sum_k f^(m-k) R_k(h) e^(c-k)."""
    if c == 0 or m == 0:
        return ((0, _hpoly([1])),)
    out: Dict[int, flint.fmpq_poly] = {}
    minus_two = _hpoly([-2, 1])
    for k, r in _reorder(c - 1, m):
        j = m - k
        # e f^j = f^j e + j f^(j-1) (h - j + 1);  e R(h) = R(h - 2) e
        out[k] = out.get(k, _hpoly([])) + r(minus_two)
        if j:
            out[k + 1] = out.get(k + 1, _hpoly([])) + j * _hpoly([1 - j, 1]) * r
    return tuple((k, p) for k, p in sorted(out.items()) if p)


@dataclass(frozen=True)
class EnvelopingAlgebra:
    """U(sl2) when ``lam`` is None, otherwise U_lambda."""

    lam: Optional[Scalar] = None

    def __post_init__(self):
        if self.lam is not None:
            object.__setattr__(self, "lam", Scalar.coerce(self.lam))

    @property
    def is_free(self) -> bool:
        return self.lam is None

    def _wrap(self, blocks: Dict[_Block, Qi]) -> "EnvElement":
        return EnvElement._make(self, blocks)

    def zero(self) -> "EnvElement":
        return self._wrap({})

    def scalar(self, c: ScalarLike) -> "EnvElement":
        r, i = scalar_parts(Scalar.coerce(c))
        return self._wrap({(0, 0): Qi(_hpoly([r]), _hpoly([i]))})

    def one(self) -> "EnvElement":
        return self.scalar(ONE)

    @property
    def e(self) -> "EnvElement":
        return self._wrap({(0, 1): _ONE_H})

    @property
    def h(self) -> "EnvElement":
        return self._wrap({(0, 0): Qi.real(_H)})

    @property
    def f(self) -> "EnvElement":
        return self._wrap({(1, 0): _ONE_H})

    def gens(self) -> Tuple["EnvElement", "EnvElement", "EnvElement"]:
        return self.e, self.h, self.f

    def casimir(self) -> "EnvElement":
        """C_U = 4fe + h^2 + 2h."""
        e, h, f = self.gens()
        return 4 * f * e + h * h + 2 * h

    def _fe_value(self) -> Qi:
        """(lambda - h^2 - 2h)/4, the value of f*e in U_lambda."""
        r, i = scalar_parts(self.lam)
        q = flint.fmpq(1, 4)
        return Qi(_hpoly([r * q, -2 * q, -q]), _hpoly([i * q]))

    def monomial(self, mf: int, mh: int, me: int, coeff: ScalarLike = 1) -> "EnvElement":
        if min(mf, mh, me) < 0:
            raise ValueError("negative exponent")
        r, i = scalar_parts(Scalar.coerce(coeff))
        p = Qi(_hpoly([0] * mh + [r]), _hpoly([0] * mh + [i]))
        return self._wrap({(mf, me): p})

    def from_terms(self, terms: Mapping[PBWMonomial, ScalarLike]) -> "EnvElement":
        out = self.zero()
        for m, c in terms.items():
            out = out + self.monomial(m.mf, m.mh, m.me, c)
        return out

    def __str__(self):
        if self.is_free:
            return "U(sl2)"
        return f"U_lambda(lambda={self.lam})"


class EnvElement:
    __slots__ = ("algebra", "_b", "_hash")

    algebra: EnvelopingAlgebra

    @classmethod
    def _make(cls, algebra: EnvelopingAlgebra, blocks: Dict[_Block, Qi]) -> "EnvElement":
        if not algebra.is_free:
            blocks = _casimir_reduce(blocks, algebra)
        obj = object.__new__(cls)
        obj.algebra = algebra
        obj._b = {k: v for k, v in blocks.items() if v}
        obj._hash = None
        return obj

    def _check(self, other: "EnvElement") -> None:
        if self.algebra != other.algebra:
            raise AmbientMismatch(f"{self.algebra} vs {other.algebra}")

    def _lift(self, other) -> Optional["EnvElement"]:
        if isinstance(other, EnvElement):
            self._check(other)
            return other
        try:
            return self.algebra.scalar(Scalar.coerce(other))
        except TypeError:
            return None

    @property
    def lam(self) -> Optional[Scalar]:
        return self.algebra.lam

    # -- ring structure -----------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._b)
        for k, v in o._b.items():
            out[k] = out[k] + v if k in out else v
        return EnvElement._make(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return EnvElement._make(self.algebra, {k: -v for k, v in self._b.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, EnvElement):
            self._check(other)
            return EnvElement._make(self.algebra, _block_product(self._b, other._b))
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return EnvElement._make(self.algebra, {k: v.scale(c) for k, v in self._b.items()})

    def __rmul__(self, other):
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return EnvElement._make(self.algebra, {k: v.scale(c) for k, v in self._b.items()})

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self.algebra.one()
        for _ in range(n):
            result = result * self
        return result

    def commutator(self, other: "EnvElement") -> "EnvElement":
        return self * other - other * self

    # -- comparison ---------------------------------------------------------

    def __bool__(self):
        return bool(self._b)

    @property
    def is_zero(self) -> bool:
        return not self._b

    def __eq__(self, other):
        if isinstance(other, EnvElement):
            return self.algebra == other.algebra and self._b == other._b
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self == self.algebra.scalar(c)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra, tuple(sorted(self.terms().items(), key=lambda kv: kv[0]))))
        return self._hash

    # -- normal form view ---------------------------------------------------

    def terms(self) -> Dict[PBWMonomial, Scalar]:
        out: Dict[PBWMonomial, Scalar] = {}
        for (a, c), p in self._b.items():
            for n in range(max(p.re.degree(), p.im.degree()) + 1):
                coeff = make_scalar(p.re[n], p.im[n])
                if coeff:
                    out[PBWMonomial(a, n, c)] = coeff
        return dict(sorted(out.items(), key=lambda kv: kv[0], reverse=True))

    def leading_term(self) -> Tuple[PBWMonomial, Scalar]:
        if not self:
            raise ValueError("leading word of the zero element is undefined")
        best = None
        for (a, c), p in self._b.items():
            d = max(p.re.degree(), p.im.degree())
            m = PBWMonomial(a, d, c)
            if best is None or best[0] < m:
                best = (m, make_scalar(p.re[d], p.im[d]))
        return best

    def leading_word(self) -> PBWMonomial:
        return self.leading_term()[0]

    def leading_coefficient(self) -> Scalar:
        return self.leading_term()[1]

    def degree(self) -> int:
        if not self:
            raise ValueError("degree of the zero element is undefined")
        return self.leading_word().degree

    def coefficient(self, m: PBWMonomial) -> Scalar:
        return self.terms().get(m, ZERO)

    def constant_value(self) -> Optional[Scalar]:
        if not self:
            return ZERO
        if set(self._b) != {(0, 0)}:
            return None
        p = self._b[(0, 0)]
        if max(p.re.degree(), p.im.degree()) > 0:
            return None
        return make_scalar(p.re[0], p.im[0])

    def is_polynomial_in_f(self) -> bool:
        return all(m.me == 0 and m.mh == 0 for m in self.terms())

    def __iter__(self) -> Iterator[Tuple[PBWMonomial, Scalar]]:
        return iter(self.terms().items())

    def __str__(self):
        from .parsing import format_element

        return format_element(self)

    def __repr__(self):
        return f"<{self.algebra}: {self}>"


def _block_product(x: Dict[_Block, Qi], y: Dict[_Block, Qi]) -> Dict[_Block, Qi]:
    out: Dict[_Block, Qi] = {}
    for (a, c), p in x.items():
        for (a2, c2), q in y.items():
            for k, r in _reorder(c, a2):
                # f^a P(h) f^j = f^(a+j) P(h - 2j);  e^y Q(h) = Q(h - 2y) e^y
                term = _shift(p, -2 * (a2 - k)) * Qi.real(r) * _shift(q, -2 * (c - k))
                key = (a + a2 - k, c - k + c2)
                out[key] = out[key] + term if key in out else term
    return out


def _casimir_reduce(blocks: Dict[_Block, Qi], algebra: EnvelopingAlgebra) -> Dict[_Block, Qi]:
    if all(a == 0 or c == 0 for a, c in blocks):
        return blocks
    fe = algebra._fe_value()
    out: Dict[_Block, Qi] = {}
    for (a, c), p in blocks.items():
        # f P(h) e = P(h + 2) f e, one application lowers min(a, c) by one
        while a and c:
            p = _shift(p, 2) * fe
            a, c = a - 1, c - 1
        key = (a, c)
        out[key] = out[key] + p if key in out else p
    return out


def free_algebra() -> EnvelopingAlgebra:
    return EnvelopingAlgebra(None)


def quotient_algebra(lam: ScalarLike) -> EnvelopingAlgebra:
    return EnvelopingAlgebra(Scalar.coerce(lam))


def u_multiply(a: EnvElement, b: EnvElement) -> EnvElement:
    return a * b


def commutator(a: EnvElement, b: EnvElement) -> EnvElement:
    return a.commutator(b)


def _distinct_orderings(counts: Tuple[int, int, int]) -> Iterator[Tuple[str, ...]]:
    letters = "e" * counts[0] + "h" * counts[1] + "f" * counts[2]
    return iter(sorted(set(permutations(letters))))


def symmetrize(a: PoissonElement, target: Optional[EnvelopingAlgebra] = None) -> EnvElement:
    """The symmetrization map P(sl2) -> U(sl2).

    A commutative word x1...xn goes to the average of its n! orderings.
    Inputs are limited to degree ``SYMMETRIZE_MAX_DEGREE``.
    """
    if not a.algebra.is_free:
        raise AmbientMismatch("symmetrize expects an element of the free algebra P(sl2)")
    U = target or free_algebra()
    out = U.zero()
    for m, coeff in a.terms().items():
        if m.degree > SYMMETRIZE_MAX_DEGREE:
            raise ValueError(
                f"symmetrize is limited to degree {SYMMETRIZE_MAX_DEGREE}, got a term of degree {m.degree}"
            )
        out = out + _symmetrized_word(U, (m.me, m.mh, m.mf)) * coeff
    return out


def _symmetrized_word(U: EnvelopingAlgebra, counts: Tuple[int, int, int]) -> EnvElement:
    gens = dict(zip("ehf", U.gens()))
    total = U.zero()
    for word in _distinct_orderings(counts):
        prod = U.one()
        for letter in word:
            prod = prod * gens[letter]
        total = total + prod
    n = sum(counts)
    # each distinct ordering occurs me! mh! mf! times among the n! orderings
    weight = Scalar(factorial(counts[0]) * factorial(counts[1]) * factorial(counts[2])) / factorial(n)
    return total * weight
