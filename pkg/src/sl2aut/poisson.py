"""The Poisson enveloping algebra P(sl2) and its Casimir quotients P_lambda.

P(sl2) is the polynomial ring K[e, h, f] with the bracket

    {e, f} = h,   {h, e} = 2e,   {h, f} = -2f

extended by the Leibniz rule.  P_lambda is the quotient by 4ef + h^2 - lambda,
with linear basis f^m h^n and h^n e^r.

Quotient elements are stored through the embedding

    P_lambda -> K[f, 1/f, h],   e |-> (lambda - h^2) / (4 f),

which is injective because P_lambda is a domain.  Under it the rewriting
rule ef -> (lambda - h^2)/4 becomes plain Laurent multiplication, and the
bracket is {a, b} = 2f (a_f b_h - a_h b_f).  The normal-form word of a
Laurent term f^w h^n has degree w + n and "weight" w, so the leading word is
simply the deglex-leading Laurent term.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import total_ordering
from typing import Dict, Iterator, Mapping, Optional, Tuple

import flint

from ._kernel import FREE_CTX, LAURENT_CTX, Qi, make_scalar, qi_pow, scalar_parts
from .scalar import ONE, ZERO, Scalar, ScalarLike


class AmbientMismatch(ValueError):
    """Operands live in different algebras."""


@total_ordering
@dataclass(frozen=True)
class Monomial:
    """The commutative word e^me h^mh f^mf.

    Ordered by total degree, then lexicographically with f > h > e.
    """

    me: int
    mh: int
    mf: int

    @property
    def degree(self) -> int:
        return self.me + self.mh + self.mf

    def sort_key(self) -> Tuple[int, int, int, int]:
        return (self.degree, self.mf, self.mh, self.me)

    def __lt__(self, other: "Monomial") -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    @property
    def is_basis_word(self) -> bool:
        """True for the P_lambda basis words f^m h^n and h^n e^r."""
        return self.me == 0 or self.mf == 0

    def __str__(self):
        from .parsing import format_word

        return format_word(self.mf, self.mh, self.me) or "1"


@dataclass(frozen=True)
class PoissonAlgebra:
    """P(sl2) when ``lam`` is None, otherwise P_lambda."""

    lam: Optional[Scalar] = None

    def __post_init__(self):
        if self.lam is not None:
            object.__setattr__(self, "lam", Scalar.coerce(self.lam))

    @property
    def is_free(self) -> bool:
        return self.lam is None

    # -- construction -------------------------------------------------------

    def _ctx(self):
        return FREE_CTX if self.is_free else LAURENT_CTX

    def _wrap(self, p: Qi, s: int = 0) -> "PoissonElement":
        return PoissonElement._make(self, p, s)

    def zero(self) -> "PoissonElement":
        z = self._ctx().constant(0)
        return self._wrap(Qi(z, z))

    def scalar(self, c: ScalarLike) -> "PoissonElement":
        return self._wrap(Qi.const(self._ctx().constant(0), Scalar.coerce(c)))

    def one(self) -> "PoissonElement":
        return self.scalar(ONE)

    @property
    def e(self) -> "PoissonElement":
        if self.is_free:
            return self._wrap(Qi.real(FREE_CTX.gen(2)))
        return self._wrap(self._casimir_factor(), 1)

    @property
    def h(self) -> "PoissonElement":
        return self._wrap(Qi.real(self._ctx().gen(1)))

    @property
    def f(self) -> "PoissonElement":
        return self._wrap(Qi.real(self._ctx().gen(0)))

    def gens(self) -> Tuple["PoissonElement", "PoissonElement", "PoissonElement"]:
        return self.e, self.h, self.f

    def _casimir_factor(self) -> Qi:
        """(lambda - h^2)/4, the value of e*f in P_lambda."""
        h = LAURENT_CTX.gen(1)
        lr, li = scalar_parts(self.lam)
        quarter = flint.fmpq(1, 4)
        return Qi((lr - h * h) * quarter, LAURENT_CTX.constant(li * quarter))

    def casimir(self) -> "PoissonElement":
        """C_P = 4ef + h^2 (equal to the scalar lambda in a quotient)."""
        e, h, f = self.gens()
        return 4 * e * f + h * h

    def monomial(self, me: int, mh: int, mf: int, coeff: ScalarLike = 1) -> "PoissonElement":
        if min(me, mh, mf) < 0:
            raise ValueError("negative exponent")
        c = Qi.const(self._ctx().constant(0), Scalar.coerce(coeff))
        if self.is_free:
            mono = FREE_CTX.from_dict({(mf, mh, me): 1})
            return self._wrap(c * Qi.real(mono))
        f, h = LAURENT_CTX.gens()
        q = qi_pow(self._casimir_factor(), me, Qi.real(LAURENT_CTX.constant(1)))
        word = c * Qi.real(f ** mf * h ** mh) * q
        return self._wrap(word, me)

    def from_terms(self, terms: Mapping[Monomial, ScalarLike]) -> "PoissonElement":
        out = self.zero()
        for m, c in terms.items():
            out = out + self.monomial(m.me, m.mh, m.mf, c)
        return out

    def __str__(self):
        if self.is_free:
            return "P(sl2)"
        return f"P_lambda(lambda={self.lam})"


def _shift_poly(p, k: int):
    return p * LAURENT_CTX.gen(0) ** k if k else p


def _min_f_exponent(p) -> Optional[int]:
    if not p:
        return None
    return int(p.term_content().monomial(0)[0])


class PoissonElement:
    """An immutable element of P(sl2) or P_lambda.

    Internally ``f^-shift * poly`` (quotient) or a plain polynomial (free).
    """

    __slots__ = ("algebra", "_p", "_s", "_hash")

    algebra: PoissonAlgebra

    @classmethod
    def _make(cls, algebra: PoissonAlgebra, p: Qi, s: int) -> "PoissonElement":
        if s and not algebra.is_free:
            mins = [m for m in (_min_f_exponent(p.re), _min_f_exponent(p.im)) if m is not None]
            k = min([s] + mins) if mins else s
            if k:
                div = LAURENT_CTX.gen(0) ** k
                p = Qi(p.re / div, p.im / div)
                s -= k
        obj = object.__new__(cls)
        obj.algebra = algebra
        obj._p = p
        obj._s = s
        obj._hash = None
        return obj

    # -- helpers ------------------------------------------------------------

    def _check(self, other: "PoissonElement") -> None:
        if self.algebra != other.algebra:
            raise AmbientMismatch(f"{self.algebra} vs {other.algebra}")

    def _lift(self, other) -> Optional["PoissonElement"]:
        if isinstance(other, PoissonElement):
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
        s = max(self._s, o._s)
        a = self._p.map(lambda p: _shift_poly(p, s - self._s))
        b = o._p.map(lambda p: _shift_poly(p, s - o._s))
        return PoissonElement._make(self.algebra, a + b, s)

    __radd__ = __add__

    def __neg__(self):
        return PoissonElement._make(self.algebra, -self._p, self._s)

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
        if isinstance(other, PoissonElement):
            self._check(other)
            return PoissonElement._make(self.algebra, self._p * other._p, self._s + other._s)
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return PoissonElement._make(self.algebra, self._p.scale(c), self._s)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = self.algebra.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def bracket(self, other: "PoissonElement") -> "PoissonElement":
        """The Poisson bracket {self, other}."""
        self._check(other)
        a, b = self._p, other._p
        if self.algebra.is_free:
            d = lambda q, v: q.map(lambda p: p.derivative(v))  # noqa: E731
            ae, ah, af = d(a, "e"), d(a, "h"), d(a, "f")
            be, bh, bf = d(b, "e"), d(b, "h"), d(b, "f")
            e, h, f = (Qi.real(FREE_CTX.gen(i)) for i in (2, 1, 0))
            two = Qi.real(FREE_CTX.constant(2))
            out = h * (ae * bf - af * be) + two * e * (ah * be - ae * bh) - two * f * (ah * bf - af * bh)
            return PoissonElement._make(self.algebra, out, 0)
        f = Qi.real(LAURENT_CTX.gen(0))
        sa = Qi.real(LAURENT_CTX.constant(self._s))
        sb = Qi.real(LAURENT_CTX.constant(other._s))
        af = f * a.map(lambda p: p.derivative("f")) - sa * a
        bf = f * b.map(lambda p: p.derivative("f")) - sb * b
        ah = a.map(lambda p: p.derivative("h"))
        bh = b.map(lambda p: p.derivative("h"))
        out = (af * bh - ah * bf).map(lambda p: 2 * p)
        return PoissonElement._make(self.algebra, out, self._s + other._s)

    # -- comparison ---------------------------------------------------------

    def __bool__(self):
        return bool(self._p)

    @property
    def is_zero(self) -> bool:
        return not self._p

    def __eq__(self, other):
        if isinstance(other, PoissonElement):
            return self.algebra == other.algebra and self._s == other._s and self._p == other._p
        try:
            c = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self == self.algebra.scalar(c)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra, self._s, str(self._p.re), str(self._p.im)))
        return self._hash

    # -- normal form view ---------------------------------------------------

    def _total_degree(self) -> int:
        return int(max(self._p.re.total_degree(), self._p.im.total_degree())) - self._s

    def degree(self) -> int:
        """Total degree of the leading word; an error for zero."""
        if not self:
            raise ValueError("degree of the zero element is undefined")
        return self._total_degree()

    def leading_term(self) -> Tuple[Monomial, Scalar]:
        if not self:
            raise ValueError("leading word of the zero element is undefined")
        cands = []
        for part in (self._p.re, self._p.im):
            if part:
                m = part.monomial(0)
                cands.append((sum(m), m[0], m))
        mono = max(cands)[2]
        re = self._p.re.coefficient(0) if self._p.re and self._p.re.monomial(0) == mono else 0
        im = self._p.im.coefficient(0) if self._p.im and self._p.im.monomial(0) == mono else 0
        coeff = make_scalar(flint.fmpq(re), flint.fmpq(im))
        if self.algebra.is_free:
            mf, mh, me = (int(v) for v in mono)
            return Monomial(me, mh, mf), coeff
        a, b = (int(v) for v in mono)
        w = a - self._s
        if w >= 0:
            return Monomial(0, b, w), coeff
        r = -w
        # each e contributes (lambda - h^2)/4, leading coefficient -1/4
        return Monomial(r, b - 2 * r, 0), coeff * Scalar(-4) ** r

    def leading_word(self) -> Monomial:
        return self.leading_term()[0]

    def leading_coefficient(self) -> Scalar:
        return self.leading_term()[1]

    def terms(self) -> Dict[Monomial, Scalar]:
        """Normal-form terms, in descending monomial order."""
        if self.algebra.is_free:
            out = _merge_parts(self._p, lambda k: Monomial(k[2], k[1], k[0]))
        else:
            out = self._quotient_terms()
        return dict(sorted(out.items(), key=lambda kv: kv[0], reverse=True))

    def _quotient_terms(self) -> Dict[Monomial, Scalar]:
        out: Dict[Monomial, Scalar] = {}
        negative: Dict[int, Dict[int, Tuple[flint.fmpq, flint.fmpq]]] = defaultdict(dict)
        zero = flint.fmpq(0)
        for part, idx in ((self._p.re, 0), (self._p.im, 1)):
            for (a, b), c in part.to_dict().items():
                a, b = int(a), int(b)
                w = a - self._s
                if w >= 0:
                    m = Monomial(0, b, w)
                    out[m] = out.get(m, ZERO) + (make_scalar(c, zero) if idx == 0 else make_scalar(zero, c))
                else:
                    slot = negative[-w].get(b, (zero, zero))
                    negative[-w][b] = (c, slot[1]) if idx == 0 else (slot[0], c)
        if negative:
            lr, li = scalar_parts(self.algebra.lam)
            quarter = flint.fmpq(1, 4)
            q = Qi(flint.fmpq_poly([lr * quarter, 0, -quarter]), flint.fmpq_poly([li * quarter]))
            for r, coeffs in negative.items():
                top = max(coeffs)
                num = Qi(
                    flint.fmpq_poly([coeffs.get(n, (zero, zero))[0] for n in range(top + 1)]),
                    flint.fmpq_poly([coeffs.get(n, (zero, zero))[1] for n in range(top + 1)]),
                )
                den = qi_pow(q, r, Qi.real(flint.fmpq_poly([1])))
                quo = qi_exact_div(num, den)
                for n in range(max(quo.re.degree(), quo.im.degree()) + 1):
                    c = make_scalar(quo.re[n], quo.im[n])
                    if c:
                        out[Monomial(r, n, 0)] = c
        return {m: c for m, c in out.items() if c}

    def coefficient(self, m: Monomial) -> Scalar:
        return self.terms().get(m, ZERO)

    def constant_value(self) -> Optional[Scalar]:
        """The scalar this element equals, or None if it is not constant."""
        if not self:
            return ZERO
        if self._total_degree() > 0:
            return None
        t = self.terms()
        if len(t) == 1:
            (m, c), = t.items()
            if m.degree == 0:
                return c
        return None

    def is_polynomial_in_f(self) -> bool:
        return all(m.me == 0 and m.mh == 0 for m in self.terms())

    def __iter__(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(self.terms().items())

    def __str__(self):
        from .parsing import format_element

        return format_element(self)

    def __repr__(self):
        return f"<{self.algebra}: {self}>"


def _merge_parts(p: Qi, key) -> Dict[Monomial, Scalar]:
    out: Dict[Monomial, Scalar] = {}
    zero = flint.fmpq(0)
    for (exps, c) in p.re.to_dict().items():
        out[key(tuple(int(v) for v in exps))] = make_scalar(c, zero)
    for (exps, c) in p.im.to_dict().items():
        m = key(tuple(int(v) for v in exps))
        out[m] = out.get(m, ZERO) + make_scalar(zero, c)
    return out


def qi_exact_div(num: Qi, den: Qi) -> Qi:
    """Exact quotient of univariate Gaussian-rational polynomials."""
    if not den.im:
        parts = [divmod(num.re, den.re), divmod(num.im, den.re)]
    else:
        norm = den.re * den.re + den.im * den.im
        n = num * Qi(den.re, -den.im)
        parts = [divmod(n.re, norm), divmod(n.im, norm)]
    if any(r for _, r in parts):
        raise ArithmeticError("inexact polynomial division")
    return Qi(parts[0][0], parts[1][0])


def free_algebra() -> PoissonAlgebra:
    return PoissonAlgebra(None)


def quotient_algebra(lam: ScalarLike) -> PoissonAlgebra:
    return PoissonAlgebra(Scalar.coerce(lam))


def multiply(a: PoissonElement, b: PoissonElement) -> PoissonElement:
    return a * b


def bracket(a: PoissonElement, b: PoissonElement) -> PoissonElement:
    return a.bracket(b)


def leading_word(a: PoissonElement) -> Monomial:
    return a.leading_word()


def degree(a: PoissonElement) -> int:
    return a.degree()
