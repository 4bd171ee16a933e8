"""Words in the generators, the canonical alternating form, and recognition.

Every automorphism factors uniquely as

    a_1 o b_1 o a_2 o b_2 o ... o a_k o b_k o a_{k+1} o c

with a_i a tau_alpha (a_1 and a_{k+1} may be absent), b_i a triangular
Delta_q (delta_q on the U side) with q in x K[x], q != 0, and c a linear
triangular CElement.  ``normalize_word`` computes this form by a single
left-to-right sweep; ``recognize_triple`` recovers it from raw images.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from .automorphisms import (
    P_SIDE,
    U_SIDE,
    Algebra,
    CElement,
    DeltaP,
    DeltaU,
    EndoTriple,
    Generator,
    LinearMatrix,
    Matrix,
    SideMismatch,
    SingularMatrix,
    TauAlpha,
    _Triangular,
    compose,
    delta,
    det,
    from_sl2_coordinates,
    identity,
    mat_inv,
    mat_mul,
    matrix,
    side_of,
    verify_endomorphism,
)
from .enveloping import EnvelopingAlgebra
from .poisson import PoissonAlgebra
from .poly import UPoly
from .scalar import ONE, ZERO, Scalar, ScalarLike


class NotAnAutomorphism(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


# -- words ----------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorWord:
    """g_1 o g_2 o ... o g_n; the rightmost factor acts first."""

    algebra: Algebra
    factors: Tuple[Generator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for g in self.factors:
            if isinstance(g, _Triangular) and g.side != self.side:
                raise SideMismatch(f"{g} does not act on the {self.side} side")

    @property
    def side(self) -> str:
        return side_of(self.algebra)

    @property
    def lam(self) -> Scalar:
        return self.algebra.lam

    def __len__(self):
        return len(self.factors)

    def then(self, other: "GeneratorWord") -> "GeneratorWord":
        """self o other."""
        if other.algebra != self.algebra:
            raise SideMismatch("words over different algebras")
        return GeneratorWord(self.algebra, self.factors + other.factors)

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(self.algebra, tuple(g.inverse() for g in reversed(self.factors)))

    def to_triple(self) -> EndoTriple:
        acc = identity(self.algebra)
        for g in self.factors:
            acc = compose(acc, g.to_triple(self.algebra))
        return acc

    def __str__(self):
        from .parsing import format_word_factors

        return format_word_factors(self.factors)


@dataclass(frozen=True)
class CanonicalForm:
    algebra: Algebra
    alternation: Tuple[Tuple[Optional[TauAlpha], _Triangular], ...] = ()
    trailing: Optional[TauAlpha] = None
    tail: CElement = field(default_factory=CElement)

    def __post_init__(self):
        side = self.side
        for i, (a, b) in enumerate(self.alternation):
            if i > 0 and a is None:
                raise ValueError("inner tau factors of a canonical form cannot be absent")
            if not isinstance(b, _Triangular) or b.side != side:
                raise SideMismatch(f"{b} is not a triangular factor on the {side} side")
            if not b.g or b.g.constant_term:
                raise ValueError("triangular factors need a nonzero polynomial in x K[x]")

    @property
    def side(self) -> str:
        return side_of(self.algebra)

    @property
    def lam(self) -> Scalar:
        return self.algebra.lam

    @property
    def k(self) -> int:
        return len(self.alternation)

    def factors(self) -> Tuple[Generator, ...]:
        out: List[Generator] = []
        for a, b in self.alternation:
            if a is not None:
                out.append(a)
            out.append(b)
        if self.trailing is not None:
            out.append(self.trailing)
        if not self.tail.is_identity:
            out.append(self.tail)
        return tuple(out)

    def to_word(self) -> GeneratorWord:
        return GeneratorWord(self.algebra, self.factors())

    def to_triple(self) -> EndoTriple:
        return self.to_word().to_triple()

    def is_identity(self) -> bool:
        return not self.alternation and self.trailing is None and self.tail.is_identity

    def __str__(self):
        return str(self.to_word())


def canonical_identity(algebra: Algebra) -> CanonicalForm:
    return CanonicalForm(algebra)


# -- coset decompositions ------------------------------------------------------


def coset_decompose_A(t: Matrix) -> Tuple[Optional[TauAlpha], CElement]:
    """hat(T) = rep o c with rep a tau_alpha or absent and c in C."""
    (a, b), (c, d) = t
    if not det(t):
        raise SingularMatrix("matrix is singular")
    if not b:
        return None, CElement(c / a, d / a)
    k = b.inverse()
    a, c, d = a * k, c * k, d * k
    # T = P Q_a with P = [[1, 0], [d, c - a d]]
    return TauAlpha(a), CElement(d, c - a * d)


def coset_decompose_T(g: UPoly, nu: ScalarLike, side: str = P_SIDE) -> Tuple[Optional[_Triangular], CElement]:
    """Delta_g o H_nu = Delta_q o c with q = g - g(0) in x K[x]."""
    nu = Scalar.coerce(nu)
    if not nu:
        raise ValueError("nu must be nonzero")
    q, g0 = g.split_constant()
    rep = delta(q, side) if q else None
    return rep, CElement(-nu * g0, nu)


def _c_then_delta(c: CElement, g: UPoly) -> Tuple[UPoly, CElement]:
    """c o Delta_g = Delta_q o c' with q in x K[x]."""
    # c = Delta_gamma o H_beta with gamma = -alpha/beta
    beta = c.beta
    total = g.rescale(beta) + (-c.alpha / beta)
    q, g0 = total.split_constant()
    return q, CElement(-beta * g0, beta)


def normalize_word(w: GeneratorWord) -> CanonicalForm:
    side = w.side
    # prefix alternates tau parameters (Scalar) and triangular polynomials (UPoly)
    prefix: List[Union[Scalar, UPoly]] = []
    c = CElement()
    for g in w.factors:
        if isinstance(g, CElement):
            c = c.then(g)
        elif g.is_linear:
            m = mat_mul(g.matrix(), c.matrix())
            if prefix and isinstance(prefix[-1], Scalar):
                m = mat_mul(m, TauAlpha(prefix.pop()).matrix())
            rep, c = coset_decompose_A(m)
            if rep is not None:
                prefix.append(rep.alpha)
        else:
            q, c = _c_then_delta(c, g.g)
            if not q:
                continue
            if prefix and isinstance(prefix[-1], UPoly):
                merged = prefix.pop() + q
                if merged:
                    prefix.append(merged)
            else:
                prefix.append(q)
    return _from_prefix(w.algebra, prefix, c)


def _from_prefix(algebra: Algebra, prefix, c: CElement) -> CanonicalForm:
    side = side_of(algebra)
    alternation = []
    pending = None
    for item in prefix:
        if isinstance(item, UPoly):
            alternation.append((pending, delta(item, side)))
            pending = None
        else:
            pending = TauAlpha(item)
    return CanonicalForm(algebra, tuple(alternation), pending, c)


def word_equal(w1: GeneratorWord, w2: GeneratorWord, cross_check: bool = False) -> bool:
    if w1.algebra != w2.algebra:
        raise SideMismatch("words over different algebras")
    same = normalize_word(w1) == normalize_word(w2)
    if cross_check and same != (w1.to_triple() == w2.to_triple()):
        raise AssertionError("canonical forms and triples disagree")
    return same


# -- multidegrees -------------------------------------------------------------


def multidegree(t: EndoTriple, verify: bool = True) -> Tuple[int, int, int]:
    if verify and not verify_endomorphism(t):
        raise NotAnAutomorphism("triple does not satisfy the defining relations")
    if not all(t.images()):
        raise NotAnAutomorphism("zero image")
    return tuple(x.degree() for x in t.images())  # type: ignore[return-value]


def multidegree_formula(cf: CanonicalForm) -> Tuple[int, int, int]:
    """Closed-form multidegree of b_1 o a_2 o b_2 o ... o a_k o b_k."""
    if cf.k and cf.alternation[0][0] is not None:
        raise ShapeMismatch("formula needs a word starting with a triangular factor")
    if cf.trailing is not None or not cf.tail.is_identity:
        raise ShapeMismatch("formula needs a word ending with a triangular factor")
    if not cf.k:
        return (1, 1, 1)
    ns = [b.g.degree for _, b in cf.alternation]
    head = 1
    for n in ns[:-1]:
        head *= 2 * n + 1
    return (head * (2 * ns[-1] + 1), head * (ns[-1] + 1), head)


# -- exact linear algebra over Q(i) --------------------------------------------


def _row_reduce(rows: List[List[Scalar]], ncols: int) -> Tuple[List[List[Scalar]], List[int]]:
    rows = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                k = rows[i][col]
                rows[i] = [a - k * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def solve_unique(a: List[List[Scalar]], b: List[Scalar]) -> List[Scalar]:
    n = len(a[0])
    red, piv = _row_reduce([row + [rhs] for row, rhs in zip(a, b)], n + 1)
    if n in piv or len(piv) != n:
        raise NotAnAutomorphism("linear system has no unique solution")
    return [row[n] for row in red]


def nullspace_vector(a: List[List[Scalar]], n: int) -> List[Scalar]:
    red, piv = _row_reduce(a, n)
    free = [c for c in range(n) if c not in piv]
    if len(free) != 1:
        raise NotAnAutomorphism("linear action does not determine a unique matrix")
    v = [ZERO] * n
    v[free[0]] = ONE
    for row, p in zip(red, piv):
        v[p] = -row[free[0]]
    return v


def matrix_of_linear_action(images: Sequence[Tuple[Scalar, Scalar, Scalar]]) -> Matrix:
    """T with T^-1 X T = image(X) for X = E, H, F, as a PGL2 representative."""
    equations: List[List[Scalar]] = []
    for x, img in zip(
        (from_sl2_coordinates(ONE, ZERO, ZERO), from_sl2_coordinates(ZERO, ONE, ZERO), from_sl2_coordinates(ZERO, ZERO, ONE)),
        images,
    ):
        y = from_sl2_coordinates(*img)
        # T y - x T = 0, unknowns t = (t00, t01, t10, t11)
        for i in range(2):
            for j in range(2):
                row = [ZERO] * 4
                for k in range(2):
                    row[2 * i + k] = row[2 * i + k] + y[k][j]
                    row[2 * k + j] = row[2 * k + j] - x[i][k]
                equations.append(row)
    t = nullspace_vector(equations, 4)
    m = matrix(t[0], t[1], t[2], t[3])
    if not det(m):
        raise NotAnAutomorphism("linear action is degenerate")
    return LinearMatrix(m).T


# -- recognition ---------------------------------------------------------------


def _linear_coordinates(x) -> Tuple[Scalar, Scalar, Scalar]:
    ce = ch = cf = ZERO
    for m, c in x.terms().items():
        if (m.me, m.mh, m.mf) == (1, 0, 0):
            ce = c
        elif (m.me, m.mh, m.mf) == (0, 1, 0):
            ch = c
        elif (m.me, m.mh, m.mf) == (0, 0, 1):
            cf = c
        else:
            raise NotAnAutomorphism(f"{x} is not a linear form in e, h, f")
    return ce, ch, cf


def _echelon(images, vectors):
    """Basis of span(images) with pairwise distinct leading words, highest first."""
    items = list(zip(images, vectors))
    while True:
        if any(not z for z, _ in items):
            raise NotAnAutomorphism("images are linearly dependent")
        items.sort(key=lambda it: it[0].leading_word(), reverse=True)
        for i in range(len(items) - 1):
            (z1, v1), (z2, v2) = items[i], items[i + 1]
            if z1.leading_word() == z2.leading_word():
                k = z2.leading_coefficient() / z1.leading_coefficient()
                items[i + 1] = (z2 - k * z1, [b - k * a for a, b in zip(v1, v2)])
                break
        else:
            return items


def _coordinates(z, basis) -> List[Scalar]:
    out = [ZERO] * len(basis)
    while z:
        lw = z.leading_word()
        for i, y in enumerate(basis):
            if y.leading_word() == lw:
                k = z.leading_coefficient() / y.leading_coefficient()
                out[i] = out[i] + k
                z = z - k * y
                break
        else:
            raise NotAnAutomorphism("bracket leaves the span of the images")
    return out


def _bracket_fn(side: str):
    if side == P_SIDE:
        return lambda a, b: a.bracket(b)
    return lambda a, b: a.commutator(b)


def _split_off_linear(cur: EndoTriple) -> Tuple[EndoTriple, Matrix]:
    """cur o M with M linear, arranged so that (cur o M)(f) spans the lowest-degree line.

    Returns the new triple and the matrix of M.
    """
    br = _bracket_fn(cur.side)
    unit = [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]]
    items = _echelon(cur.images(), unit)
    (y1, c1), (y2, c2), (y3, c3) = items
    if not (y1.degree() > y2.degree() > y3.degree()):
        raise NotAnAutomorphism("degree pattern of the images is not that of an automorphism")
    basis = [y1, y2, y3]
    kappa_vec = _coordinates(br(y2, y3), basis)
    kappa = kappa_vec[2]
    if kappa_vec[0] or kappa_vec[1] or not kappa:
        raise NotAnAutomorphism("images do not close up under the bracket")
    s = Scalar(-2) / kappa
    h_new = s * y2
    # e_new = u y1 + v y2 + w y3 with {e_new, y3} = h_new and {h_new, e_new} = 2 e_new
    b1 = _coordinates(br(y1, y3), basis)
    b2 = _coordinates(br(y2, y3), basis)
    a1 = _coordinates(br(h_new, y1), basis)
    a2 = _coordinates(br(h_new, y2), basis)
    a3 = _coordinates(br(h_new, y3), basis)
    rows, rhs = [], []
    for r in range(3):
        rows.append([b1[r], b2[r], ZERO])
        rhs.append(s if r == 1 else ZERO)
    for r in range(3):
        row = [a1[r], a2[r], a3[r]]
        row[r] = row[r] - 2
        rows.append(row)
        rhs.append(ZERO)
    u, v, w = solve_unique(rows, rhs)
    e_new = u * y1 + v * y2 + w * y3
    new = EndoTriple(cur.algebra, e_new, h_new, y3)
    coords = (
        tuple(u * p + v * q + w * r for p, q, r in zip(c1, c2, c3)),
        tuple(s * q for q in c2),
        tuple(c3),
    )
    return new, matrix_of_linear_action(coords)


def _peel_triangular(cur: EndoTriple) -> Tuple[EndoTriple, UPoly]:
    """cur = cur' o Delta_g with cur'(h) of degree below cur(f) (or linear)."""
    v = cur.img_f
    dv = v.degree()
    r = cur.img_h
    coeffs = {}
    powers = {}
    floor = 2 if dv == 1 else 1
    while r and r.degree() >= dv * floor:
        d = r.degree()
        if d % dv:
            raise NotAnAutomorphism("image of h is not a polynomial in the image of f")
        j = d // dv
        if j not in powers:
            powers[j] = v ** j
        vj = powers[j]
        if vj.leading_word() != r.leading_word():
            raise NotAnAutomorphism("image of h is not a polynomial in the image of f")
        k = r.leading_coefficient() / vj.leading_coefficient()
        coeffs[j] = k
        r = r - k * vj
    if not coeffs:
        raise NotAnAutomorphism("cannot lower the degree of the triple")
    # 2 x g(x) = sum_j k_j x^j
    top = max(coeffs)
    g = UPoly([coeffs.get(j + 1, ZERO) / 2 for j in range(top)])
    step = delta(-g, cur.side).to_triple(cur.algebra)
    return compose(cur, step), g


def recognize_triple(t: EndoTriple) -> CanonicalForm:
    """The canonical form of the automorphism with images t.

    Raises NotAnAutomorphism when t is not an automorphism.
    """
    side = t.side
    cur = t
    peeled: List[Generator] = []
    while True:
        if not all(cur.images()):
            raise NotAnAutomorphism("zero image")
        degs = [x.degree() for x in cur.images()]
        if degs == [1, 1, 1]:
            coords = [_linear_coordinates(x) for x in cur.images()]
            final = LinearMatrix(matrix_of_linear_action(coords))
            break
        before = sum(degs)
        cur, m = _split_off_linear(cur)
        peeled.append(LinearMatrix(mat_inv(m)))
        cur, g = _peel_triangular(cur)
        peeled.append(delta(g, side))
        if sum(x.degree() for x in cur.images()) >= before:
            raise NotAnAutomorphism("peeling did not lower the degree")
    word = GeneratorWord(t.algebra, (final,) + tuple(reversed(peeled)))
    cf = normalize_word(word)
    if cf.to_triple() != t:
        raise NotAnAutomorphism("triple is not an automorphism")
    return cf


# -- P to U ---------------------------------------------------------------------


def map_to_U(x: Union[CanonicalForm, GeneratorWord]) -> GeneratorWord:
    """Send Delta_g to delta_g and keep linear factors, landing in Aut(U_lambda)."""
    if isinstance(x, GeneratorWord):
        x = normalize_word(x)
    if x.side != P_SIDE:
        raise SideMismatch("map_to_U expects a canonical form on the P side")
    U = EnvelopingAlgebra(x.lam)
    factors = tuple(DeltaU(g.g) if isinstance(g, DeltaP) else g for g in x.factors())
    return GeneratorWord(U, factors)


def map_to_P(x: Union[CanonicalForm, GeneratorWord]) -> GeneratorWord:
    if isinstance(x, GeneratorWord):
        x = normalize_word(x)
    if x.side != U_SIDE:
        raise SideMismatch("map_to_P expects a canonical form on the U side")
    P = PoissonAlgebra(x.lam)
    factors = tuple(DeltaP(g.g) if isinstance(g, DeltaU) else g for g in x.factors())
    return GeneratorWord(P, factors)
