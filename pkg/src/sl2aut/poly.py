"""Dense univariate polynomials over Q(i) in a formal variable ``x``.

These parametrize the triangular generators: ``delta[g]`` carries a ``UPoly``.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

from .scalar import ONE, ZERO, Scalar, ScalarLike


class UPoly:
    """``c[0] + c[1] x + ... + c[n] x^n`` with no trailing zero coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        cs = [Scalar.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def x(cls) -> "UPoly":
        return cls([0, 1])

    @classmethod
    def constant(cls, c: ScalarLike) -> "UPoly":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c: ScalarLike = 1) -> "UPoly":
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == UPoly.constant(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(("UPoly", self.coeffs))

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _lift(o) -> "UPoly":
        return o if isinstance(o, UPoly) else UPoly.constant(o)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return UPoly(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        try:
            return self + (-self._lift(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            try:
                c = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
            return UPoly(c * a for a in self.coeffs)
        if not self or not other:
            return UPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = Scalar.coerce(other)
        return self * c.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = UPoly.constant(ONE)
        for _ in range(n):
            result = result * self
        return result

    # -- calculus -----------------------------------------------------------

    def derivative(self) -> "UPoly":
        return UPoly(c * i for i, c in enumerate(self.coeffs) if i)

    def integral(self) -> "UPoly":
        """Formal antiderivative with zero constant term."""
        return UPoly([ZERO] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    # -- pieces -------------------------------------------------------------

    @property
    def constant_term(self) -> Scalar:
        return self[0]

    def without_constant(self) -> "UPoly":
        return UPoly([ZERO] + list(self.coeffs[1:]))

    def split_constant(self) -> Tuple["UPoly", Scalar]:
        """``g = q + g(0)`` with ``q`` in x*K[x]."""
        return self.without_constant(), self.constant_term

    def rescale(self, nu: ScalarLike) -> "UPoly":
        """``nu^-1 * g(nu^-1 * x)``, the conjugate of ``g`` by a hyperbolic rotation."""
        inv = Scalar.coerce(nu).inverse()
        out, p = [], inv
        for c in self.coeffs:
            out.append(c * p)
            p = p * inv
        return UPoly(out)

    def __call__(self, value, one=None):
        """Horner evaluation at any ring element supporting ``+`` and ``*``."""
        if one is None:
            one = ONE
        if not self.coeffs:
            return value * ZERO
        acc = one * self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + one * c
        return acc

    def __str__(self):
        return format_upoly(self)

    def __repr__(self):
        return f"UPoly({format_upoly(self)!r})"


def format_upoly(p: UPoly, var: str = "x") -> str:
    from .parsing import format_sum

    terms = []
    for n in range(p.degree, -1, -1):
        c = p.coeffs[n]
        if not c:
            continue
        mono = "" if n == 0 else (var if n == 1 else f"{var}^{n}")
        terms.append((c, mono))
    return format_sum(terms)


def upoly(coeffs: Sequence[ScalarLike]) -> UPoly:
    return UPoly(coeffs)
