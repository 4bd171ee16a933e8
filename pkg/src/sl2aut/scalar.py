"""Exact Gaussian rationals a + b*i, the base field for every algebra here."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

ScalarLike = Union["Scalar", int, Fraction]


class Scalar:
    """An element of Q(i), stored as two reduced fractions.

    Instances are immutable and hashable; equality is structural.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, x: ScalarLike) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.im and not o.im:
            return Scalar(self.re * o.re)
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_rational(self) -> bool:
        return not self.im

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_exact(a: ScalarLike) -> Optional[Scalar]:
    """Square root of ``a`` in Q(i), or None when ``a`` is not a square there.

    The returned root has positive real part, or zero real part and
    non-negative imaginary part.
    """
    a = Scalar.coerce(a)
    if not a:
        return ZERO
    x, y = a.re, a.im
    # (u + v i)^2 = x + y i  =>  u^2 = (|a| + x)/2, v^2 = (|a| - x)/2, 2uv = y
    modulus = _rational_sqrt(x * x + y * y)
    if modulus is None:
        return None
    u = _rational_sqrt((modulus + x) / 2)
    v = _rational_sqrt((modulus - x) / 2)
    if u is None or v is None:
        return None
    if y < 0:
        v = -v
    root = Scalar(u, v)
    if root.re < 0 or (root.re == 0 and root.im < 0):
        root = -root
    assert root * root == a
    return root


# -- text form: ``p/q`` or ``p/q+r/s*i`` --------------------------------------


def _fmt_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(a: Scalar) -> str:
    if not a.im:
        return _fmt_rat(a.re)
    if a.im == 1:
        imag = "i"
    elif a.im == -1:
        imag = "-i"
    else:
        imag = _fmt_rat(a.im) + "*i"
    if not a.re:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return _fmt_rat(a.re) + sign + imag


_SCALAR_RE = re.compile(
    r"""^\s*(?:
        (?P<re>[+-]?\d+(?:/\d+)?)
        (?:\s*(?P<isign>[+-])\s*(?P<im>\d+(?:/\d+)?)?\s*(?:\*\s*)?i)?
      | (?P<ionly>[+-]?(?:\d+(?:/\d+)?)?)\s*(?:\*\s*)?i
    )\s*$""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> Scalar:
    """Parse the compact scalar form; the inverse of :func:`format_scalar`.

    >>> parse_scalar("1/2-3/4*i")
    Scalar('1/2-3/4*i')
    """
    m = _SCALAR_RE.match(text)
    if not m:
        raise ValueError(f"not a Gaussian rational literal: {text!r}")
    if m.group("re") is not None:
        re_part = Fraction(m.group("re"))
        if m.group("isign") is None:
            return Scalar(re_part)
        im = Fraction(m.group("im") or 1)
        return Scalar(re_part, im if m.group("isign") == "+" else -im)
    body = m.group("ionly")
    if body in ("", "+"):
        return I
    if body == "-":
        return -I
    return Scalar(0, Fraction(body))
