"""Gaussian-rational polynomials on top of FLINT's rational polynomials.

A ``Qi`` is a pair ``re + i*im`` of FLINT polynomials of the same type
(``fmpq_mpoly`` in one context, or ``fmpq_poly``).  Only ring operations
are provided; normal forms live in the algebra modules.
"""

from __future__ import annotations

from fractions import Fraction

import flint

from .scalar import Scalar

# P_lambda is embedded in K[f, 1/f, h]; terms ordered by degree, then f > h.
LAURENT_CTX = flint.fmpq_mpoly_ctx.get(("f", "h"), "deglex")
# free Poisson algebra K[e, h, f]; variable order makes deglex agree with f > h > e
FREE_CTX = flint.fmpq_mpoly_ctx.get(("f", "h", "e"), "deglex")


def to_fmpq(q: Fraction) -> flint.fmpq:
    return flint.fmpq(q.numerator, q.denominator)


def from_fmpq(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def scalar_parts(c: Scalar):
    return to_fmpq(c.re), to_fmpq(c.im)


def make_scalar(re, im) -> Scalar:
    return Scalar(from_fmpq(re), from_fmpq(im))


class Qi:
    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    @classmethod
    def real(cls, p):
        return cls(p, p * 0)

    @classmethod
    def const(cls, zero, c: Scalar) -> "Qi":
        r, i = scalar_parts(c)
        return cls(zero + r, zero + i)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, o: "Qi") -> "Qi":
        return Qi(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "Qi") -> "Qi":
        return Qi(self.re - o.re, self.im - o.im)

    def __neg__(self) -> "Qi":
        return Qi(-self.re, -self.im)

    def __mul__(self, o: "Qi") -> "Qi":
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b:
            if not d:
                return Qi(a * c, a * 0)
            return Qi(a * c, a * d)
        if not d:
            return Qi(a * c, b * c)
        ac, bd = a * c, b * d
        # Karatsuba: (a+b)(c+d) - ac - bd = ad + bc
        return Qi(ac - bd, (a + b) * (c + d) - ac - bd)

    def scale(self, c: Scalar) -> "Qi":
        r, i = scalar_parts(c)
        if not i:
            return Qi(self.re * r, self.im * r)
        return Qi(self.re * r - self.im * i, self.re * i + self.im * r)

    def map(self, fn) -> "Qi":
        return Qi(fn(self.re), fn(self.im))

    def __eq__(self, o):
        return isinstance(o, Qi) and self.re == o.re and self.im == o.im

    __hash__ = None

    def __repr__(self):
        return f"Qi({self.re}, {self.im})"


def qi_pow(x: Qi, n: int, one: Qi) -> Qi:
    result, base = one, x
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result
