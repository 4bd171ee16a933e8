"""Text and JSON forms of scalars, elements, polynomials, words and triples.

Expressions are read by a small recursive-descent parser::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary | unary)*      # juxtaposition multiplies
    unary   := ("-" | "+") unary | power
    power   := primary ("^" ["-"] NUMBER)?
    primary := NUMBER | NAME | "(" expr ")" | "{" expr "," expr "}" | "[" expr "," expr "]"

``{a, b}`` is the Poisson bracket and ``[a, b]`` the commutator.  Words are
dot-separated factors applied right to left::

    tau[1] . delta[x^2] . C[alpha=-3, beta=1]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .scalar import I, ONE, ZERO, Scalar, format_scalar


class ParseError(ValueError):
    def __init__(self, message: str, pos: int = 0, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.text = text


# -- printing ------------------------------------------------------------------


def format_word(mf: int, mh: int, me: int) -> str:
    parts = []
    for name, n in (("f", mf), ("h", mh), ("e", me)):
        if n == 1:
            parts.append(name)
        elif n > 1:
            parts.append(f"{name}^{n}")
    return "*".join(parts)


def _term(c: Scalar, mono: str) -> Tuple[bool, str]:
    """(negative?, body) for the term c*mono."""
    if c.im and c.re:
        body = f"({format_scalar(c)})"
        return False, body + ("*" + mono if mono else "")
    if c.im:
        neg, mag = c.im < 0, abs(c.im)
        coeff = "i" if mag == 1 else format_scalar(Scalar(mag)) + "*i"
        return neg, coeff + ("*" + mono if mono else "")
    neg, mag = c.re < 0, abs(c.re)
    if mag == 1 and mono:
        return neg, mono
    coeff = format_scalar(Scalar(mag))
    return neg, coeff + ("*" + mono if mono else "")


def format_sum(terms: Sequence[Tuple[Scalar, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for k, (c, mono) in enumerate(terms):
        neg, body = _term(c, mono)
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_element(x) -> str:
    return format_sum([(c, format_word(m.mf, m.mh, m.me)) for m, c in x.terms().items()])


def format_generator(g) -> str:
    from .automorphisms import CElement, DeltaP, DeltaU, Hyperbolic, LinearMatrix, TauAlpha

    s = format_scalar
    if isinstance(g, (DeltaP, DeltaU)):
        return f"delta[{g.g}]"
    if isinstance(g, TauAlpha):
        return f"tau[{s(g.alpha)}]"
    if isinstance(g, Hyperbolic):
        return f"hyp[{s(g.nu)}]"
    if isinstance(g, CElement):
        return f"C[alpha={s(g.alpha)}, beta={s(g.beta)}]"
    if isinstance(g, LinearMatrix):
        (a, b), (c, d) = g.T
        return f"lin[[{s(a)},{s(b)}],[{s(c)},{s(d)}]]"
    raise TypeError(f"unknown generator {g!r}")


def format_word_factors(factors) -> str:
    if not factors:
        return "id"
    return " . ".join(format_generator(g) for g in factors)


def format_triple(t) -> str:
    return "(" + ", ".join(format_element(x) for x in t.images()) + ")"


# -- tokens --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(){}\[\],.=]))")


@dataclass
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out, pos = [], 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip():
                bad = pos + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
            out.append(Token("end", "", len(text)))
            return out
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()


# -- expression parser ----------------------------------------------------------


class Env:
    """Meaning of names and brackets for one parse."""

    def name(self, ident: str, pos: int):
        raise ParseError(f"unknown name {ident!r}", pos)

    def bracket(self, a, b, pos: int):
        raise ParseError("the bracket {a, b} is not available here", pos)

    def commutator(self, a, b, pos: int):
        raise ParseError("the commutator [a, b] is not available here", pos)


class ScalarEnv(Env):
    def name(self, ident, pos):
        if ident == "i":
            return I
        return super().name(ident, pos)


class PolyEnv(ScalarEnv):
    def name(self, ident, pos):
        from .poly import UPoly

        if ident == "x":
            return UPoly.x()
        return super().name(ident, pos)


class ElementEnv(ScalarEnv):
    def __init__(self, algebra, bindings: Optional[Mapping[str, object]] = None):
        self.algebra = algebra
        self.bindings = bindings or {}

    def name(self, ident, pos):
        if ident in self.bindings:
            value = self.bindings[ident]
            if getattr(value, "algebra", None) != self.algebra:
                raise ParseError(f"{ident!r} is not an element of {self.algebra}", pos)
            return value
        low = ident.lower()
        if low in ("e", "h", "f"):
            return getattr(self.algebra, low)
        return super().name(ident, pos)

    def bracket(self, a, b, pos):
        from .poisson import PoissonAlgebra

        if not isinstance(self.algebra, PoissonAlgebra):
            raise ParseError("{a, b} is the Poisson bracket; use [a, b] on the U side", pos)
        return self.lift(a).bracket(self.lift(b))

    def commutator(self, a, b, pos):
        from .enveloping import EnvelopingAlgebra

        if not isinstance(self.algebra, EnvelopingAlgebra):
            raise ParseError("[a, b] is the commutator; use {a, b} on the P side", pos)
        return self.lift(a).commutator(self.lift(b))

    def lift(self, v):
        if isinstance(v, Scalar):
            return self.algebra.scalar(v)
        return v


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        return ParseError(msg, tok.pos, self.text)

    def at(self, kind: str, value: Optional[str] = None) -> bool:
        t = self.tok
        return t.kind == kind and (value is None or t.value == value)

    def at_op(self, value: str) -> bool:
        return self.at("op", value)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect_op(self, value: str) -> Token:
        if not self.at_op(value):
            found = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")
        return self.advance()

    def expect_name(self, value: Optional[str] = None) -> Token:
        if not self.at("name", value):
            found = self.tok.value or "end of input"
            raise self.error(f"expected {value or 'a name'}, found {found!r}")
        return self.advance()

    def expect_end(self):
        if not self.at("end"):
            raise self.error(f"unexpected {self.tok.value!r}")

    # grammar
    def expr(self, env: Env):
        value = self.term(env)
        while self.at_op("+") or self.at_op("-"):
            op = self.advance().value
            rhs = self.term(env)
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_primary(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.value in "({[")

    def term(self, env: Env):
        value = self.unary(env)
        while True:
            if self.at_op("*"):
                self.advance()
                value = value * self.unary(env)
            elif self.at_op("/"):
                tok = self.advance()
                value = self._divide(value, self.unary(env), tok)
            elif self._starts_primary():
                value = value * self.power(env)
            else:
                return value

    def _divide(self, a, b, tok):
        if not isinstance(b, Scalar):
            c = b.constant_value() if hasattr(b, "constant_value") else None
            if c is None:
                raise self.error("can only divide by a scalar", tok)
            b = c
        if not b:
            raise self.error("division by zero", tok)
        return a * b.inverse()

    def unary(self, env: Env):
        if self.at_op("-"):
            self.advance()
            return -self.unary(env)
        if self.at_op("+"):
            self.advance()
            return self.unary(env)
        return self.power(env)

    def power(self, env: Env):
        base = self.primary(env)
        if self.at_op("^"):
            tok = self.advance()
            neg = False
            if self.at_op("-"):
                self.advance()
                neg = True
            if not self.at("num"):
                raise self.error("exponent must be an integer literal")
            n = int(self.advance().value)
            if neg:
                if not isinstance(base, Scalar):
                    raise self.error("negative powers are only defined for scalars", tok)
                if not base:
                    raise self.error("division by zero", tok)
                n = -n
            return base ** n
        return base

    def primary(self, env: Env):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Scalar(int(t.value))
        if t.kind == "name":
            self.advance()
            return env.name(t.value, t.pos)
        if self.at_op("("):
            self.advance()
            value = self.expr(env)
            self.expect_op(")")
            return value
        if self.at_op("{"):
            self.advance()
            a = self.expr(env)
            self.expect_op(",")
            b = self.expr(env)
            self.expect_op("}")
            return env.bracket(a, b, t.pos)
        if self.at_op("["):
            self.advance()
            a = self.expr(env)
            self.expect_op(",")
            b = self.expr(env)
            self.expect_op("]")
            return env.commutator(a, b, t.pos)
        found = t.value or "end of input"
        raise self.error(f"unexpected {found!r}")

    # words
    def word(self, algebra, bindings: Mapping[str, object]):
        from .normal_form import GeneratorWord

        factors = list(self.factor(algebra, bindings))
        while self.at_op("."):
            self.advance()
            factors.extend(self.factor(algebra, bindings))
        return GeneratorWord(algebra, tuple(factors))

    def scalar_arg(self) -> Scalar:
        tok = self.tok
        v = self.expr(ScalarEnv())
        if not isinstance(v, Scalar):
            raise self.error("expected a scalar", tok)
        return v

    def factor(self, algebra, bindings):
        from .automorphisms import CElement, Hyperbolic, LinearMatrix, SingularMatrix, TauAlpha, delta, side_of
        from .poly import UPoly

        t = self.expect_name()
        name = t.value
        try:
            if name == "id":
                return ()
            if name in bindings and not self.at_op("["):
                w = bindings[name]
                if getattr(w, "algebra", None) != algebra or not hasattr(w, "factors"):
                    raise self.error(f"{name!r} is not a word over {algebra}", t)
                return tuple(w.factors)
            self.expect_op("[")
            if name == "delta":
                tok = self.tok
                g = self.expr(PolyEnv())
                if not isinstance(g, UPoly):
                    g = UPoly.constant(g)
                gen = delta(g, side_of(algebra))
            elif name == "tau":
                gen = TauAlpha(self.scalar_arg())
            elif name == "hyp":
                gen = Hyperbolic(self.scalar_arg())
            elif name == "C":
                self.expect_name("alpha")
                self.expect_op("=")
                alpha = self.scalar_arg()
                self.expect_op(",")
                self.expect_name("beta")
                self.expect_op("=")
                beta = self.scalar_arg()
                gen = CElement(alpha, beta)
            elif name == "lin":
                rows = []
                for r in range(2):
                    if r:
                        self.expect_op(",")
                    self.expect_op("[")
                    a = self.scalar_arg()
                    self.expect_op(",")
                    b = self.scalar_arg()
                    self.expect_op("]")
                    rows.append((a, b))
                gen = LinearMatrix(tuple(rows))
            else:
                raise self.error(f"unknown generator {name!r}", t)
            self.expect_op("]")
        except (SingularMatrix, ZeroDivisionError) as exc:
            raise self.error(f"invalid generator: {exc}", t) from None
        except ParseError:
            raise
        except ValueError as exc:
            raise self.error(f"invalid generator: {exc}", t) from None
        return (gen,)


def _run(text: str, fn: Callable[[Parser], object]):
    p = Parser(text)
    value = fn(p)
    p.expect_end()
    return value


def parse_expression(text: str, algebra, bindings: Optional[Mapping[str, object]] = None):
    env = ElementEnv(algebra, bindings)
    try:
        return env.lift(_run(text, lambda p: p.expr(env)))
    except ZeroDivisionError as exc:
        raise ParseError(str(exc), 0, text) from None


def parse_scalar_expr(text: str) -> Scalar:
    return _run(text, lambda p: p.scalar_arg())


def parse_poly(text: str):
    from .poly import UPoly

    v = _run(text, lambda p: p.expr(PolyEnv()))
    return v if isinstance(v, UPoly) else UPoly.constant(v)


def parse_word(text: str, algebra, bindings: Optional[Mapping[str, object]] = None):
    return _run(text, lambda p: p.word(algebra, bindings or {}))


def parse_canonical(text: str, algebra, bindings=None):
    from .normal_form import normalize_word

    return normalize_word(parse_word(text, algebra, bindings))


def parse_triple(text: str, algebra, bindings: Optional[Mapping[str, object]] = None):
    from .automorphisms import EndoTriple

    env = ElementEnv(algebra, bindings)

    def body(p: Parser):
        p.expect_op("(")
        parts = [p.expr(env)]
        for _ in range(2):
            p.expect_op(",")
            parts.append(p.expr(env))
        p.expect_op(")")
        return parts

    parts = _run(text, body)
    return EndoTriple(algebra, *(env.lift(v) for v in parts))


def looks_like_triple(text: str) -> bool:
    return text.lstrip().startswith("(")


# -- JSON -------------------------------------------------------------------------


def scalar_to_json(c: Scalar) -> Dict[str, int]:
    return {
        "re_num": c.re.numerator,
        "re_den": c.re.denominator,
        "im_num": c.im.numerator,
        "im_den": c.im.denominator,
    }


def scalar_from_json(d: Mapping[str, int]) -> Scalar:
    return Scalar(Fraction(d["re_num"], d["re_den"]), Fraction(d["im_num"], d["im_den"]))


def element_to_json(x) -> List[dict]:
    from .poisson import PoissonElement

    out = []
    for m, c in x.terms().items():
        mono = [m.me, m.mh, m.mf] if isinstance(x, PoissonElement) else [m.mf, m.mh, m.me]
        out.append({"monomial": mono, "coeff": scalar_to_json(c)})
    return out


def element_from_json(data: Sequence[Mapping], algebra):
    # monomial() takes exponents in the same order the schema lists them
    total = algebra.zero()
    for item in data:
        a, b, c = item["monomial"]
        total = total + algebra.monomial(a, b, c, scalar_from_json(item["coeff"]))
    return total


def poly_to_json(g) -> List[dict]:
    return [scalar_to_json(c) for c in g.coeffs]


def poly_from_json(data):
    from .poly import UPoly

    return UPoly(scalar_from_json(d) for d in data)


def generator_to_json(g) -> dict:
    from .automorphisms import CElement, DeltaP, DeltaU, Hyperbolic, LinearMatrix, TauAlpha

    if isinstance(g, (DeltaP, DeltaU)):
        return {"type": "delta", "g": poly_to_json(g.g)}
    if isinstance(g, TauAlpha):
        return {"type": "tau", "alpha": scalar_to_json(g.alpha)}
    if isinstance(g, Hyperbolic):
        return {"type": "hyp", "nu": scalar_to_json(g.nu)}
    if isinstance(g, CElement):
        return {"type": "C", "alpha": scalar_to_json(g.alpha), "beta": scalar_to_json(g.beta)}
    if isinstance(g, LinearMatrix):
        return {"type": "lin", "matrix": [[scalar_to_json(v) for v in row] for row in g.T]}
    raise TypeError(f"unknown generator {g!r}")


def generator_from_json(d: Mapping, side: str):
    from .automorphisms import CElement, Hyperbolic, LinearMatrix, TauAlpha, delta

    kind = d["type"]
    if kind == "delta":
        return delta(poly_from_json(d["g"]), side)
    if kind == "tau":
        return TauAlpha(scalar_from_json(d["alpha"]))
    if kind == "hyp":
        return Hyperbolic(scalar_from_json(d["nu"]))
    if kind == "C":
        return CElement(scalar_from_json(d["alpha"]), scalar_from_json(d["beta"]))
    if kind == "lin":
        return LinearMatrix(tuple(tuple(scalar_from_json(v) for v in row) for row in d["matrix"]))
    raise ValueError(f"unknown generator type {kind!r}")


def word_to_json(w) -> dict:
    return {
        "side": w.side,
        "lambda": scalar_to_json(w.lam),
        "factors": [generator_to_json(g) for g in w.factors],
        "text": str(w),
    }


def word_from_json(d: Mapping):
    from .automorphisms import algebra_for
    from .normal_form import GeneratorWord

    algebra = algebra_for(d["side"], scalar_from_json(d["lambda"]))
    return GeneratorWord(algebra, tuple(generator_from_json(g, d["side"]) for g in d["factors"]))


def canonical_to_json(cf) -> dict:
    return {
        "side": cf.side,
        "lambda": scalar_to_json(cf.lam),
        "alternation": [
            {"tau": None if a is None else scalar_to_json(a.alpha), "delta": poly_to_json(b.g)}
            for a, b in cf.alternation
        ],
        "trailing": None if cf.trailing is None else scalar_to_json(cf.trailing.alpha),
        "tail": {"alpha": scalar_to_json(cf.tail.alpha), "beta": scalar_to_json(cf.tail.beta)},
        "text": str(cf),
    }


def canonical_from_json(d: Mapping):
    from .automorphisms import CElement, TauAlpha, algebra_for, delta
    from .normal_form import CanonicalForm

    side = d["side"]
    algebra = algebra_for(side, scalar_from_json(d["lambda"]))
    alternation = tuple(
        (
            None if item["tau"] is None else TauAlpha(scalar_from_json(item["tau"])),
            delta(poly_from_json(item["delta"]), side),
        )
        for item in d["alternation"]
    )
    trailing = None if d["trailing"] is None else TauAlpha(scalar_from_json(d["trailing"]))
    tail = CElement(scalar_from_json(d["tail"]["alpha"]), scalar_from_json(d["tail"]["beta"]))
    return CanonicalForm(algebra, alternation, trailing, tail)


def triple_to_json(t) -> dict:
    return {
        "side": t.side,
        "lambda": scalar_to_json(t.lam),
        "images": [element_to_json(x) for x in t.images()],
        "text": format_triple(t),
    }


def triple_from_json(d: Mapping):
    from .automorphisms import EndoTriple, algebra_for

    algebra = algebra_for(d["side"], scalar_from_json(d["lambda"]))
    return EndoTriple(algebra, *(element_from_json(x, algebra) for x in d["images"]))
