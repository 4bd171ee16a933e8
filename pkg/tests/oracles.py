"""Slow, obviously-correct reference implementations used to cross-check the library.

Nothing here touches FLINT: P-side elements are dicts keyed by (me, mh, mf),
U-side elements are dicts keyed by letter strings over "f", "h", "e".
"""

from itertools import permutations

from sl2aut.scalar import ONE, ZERO, Scalar


def _clean(d):
    return {k: v for k, v in d.items() if v}


def _add_into(acc, key, c):
    acc[key] = acc.get(key, ZERO) + c


# -- P side ------------------------------------------------------------------------


def p_dict(x):
    return {(m.me, m.mh, m.mf): c for m, c in x.terms().items()}


def p_mul_free(a, b):
    out = {}
    for (e1, h1, f1), c1 in a.items():
        for (e2, h2, f2), c2 in b.items():
            _add_into(out, (e1 + e2, h1 + h2, f1 + f2), c1 * c2)
    return _clean(out)


def p_reduce(d, lam):
    """Rewrite e*f -> (lam - h^2)/4 until no monomial holds both e and f."""
    d = dict(d)
    while True:
        mixed = [k for k in d if k[0] and k[2] and d[k]]
        if not mixed:
            return _clean(d)
        key = mixed[0]
        c = d.pop(key)
        me, mh, mf = key
        _add_into(d, (me - 1, mh, mf - 1), c * lam / 4)
        _add_into(d, (me - 1, mh + 2, mf - 1), -c / 4)


def p_mul_quotient(a, b, lam):
    return p_reduce(p_mul_free(a, b), lam)


def _partial(d, idx):
    out = {}
    for k, c in d.items():
        if k[idx]:
            k2 = list(k)
            k2[idx] -= 1
            _add_into(out, tuple(k2), c * k[idx])
    return _clean(out)


# {x_i, x_j} for x = (e, h, f)
_GEN_BRACKET = {
    (0, 2): {(0, 1, 0): ONE},  # {e, f} = h
    (2, 0): {(0, 1, 0): -ONE},
    (1, 0): {(1, 0, 0): Scalar(2)},  # {h, e} = 2e
    (0, 1): {(1, 0, 0): Scalar(-2)},
    (1, 2): {(0, 0, 1): Scalar(-2)},  # {h, f} = -2f
    (2, 1): {(0, 0, 1): Scalar(2)},
}


def p_bracket_free(a, b):
    out = {}
    for (i, j), g in _GEN_BRACKET.items():
        term = p_mul_free(p_mul_free(_partial(a, i), _partial(b, j)), g)
        for k, c in term.items():
            _add_into(out, k, c)
    return _clean(out)


def p_bracket_quotient(a, b, lam):
    return p_reduce(p_bracket_free(a, b), lam)


# -- U side -------------------------------------------------------------------------

_RANK = {"f": 0, "h": 1, "e": 2}


def u_dict(x):
    return {"f" * m.mf + "h" * m.mh + "e" * m.me: c for m, c in x.terms().items()}


def _is_pbw(w):
    return all(_RANK[a] <= _RANK[b] for a, b in zip(w, w[1:]))


def _step(w, c, lam):
    """One rewriting step on a non-normal word; returns list of (word, coeff)."""
    if lam is not None and "f" in w and "e" in w:
        letters = [(i, ch) for i, ch in enumerate(w) if ch != "h"]
        for (i, a), (j, b) in zip(letters, letters[1:]):
            if a != b:
                break
        if j == i + 1:
            if a == "f":  # fe = (lam - h^2 - 2h)/4
                pre, post = w[:i], w[i + 2 :]
                return [(pre + post, c * lam / 4), (pre + "hh" + post, -c / 4), (pre + "h" + post, -c / 2)]
            # ef = fe + h
            return [(w[:i] + "fe" + w[i + 2 :], c), (w[:i] + "h" + w[i + 2 :], c)]
        # move w[i] one step right past an h: fh = hf + 2f, eh = he - 2e
        sign = 2 if a == "f" else -2
        return [(w[:i] + "h" + a + w[i + 2 :], c), (w[:i] + a + w[i + 2 :], c * sign)]
    for i in range(len(w) - 1):
        a, b = w[i], w[i + 1]
        if _RANK[a] > _RANK[b]:
            pre, post = w[:i], w[i + 2 :]
            if (a, b) == ("e", "f"):
                return [(pre + "fe" + post, c), (pre + "h" + post, c)]
            if (a, b) == ("e", "h"):
                return [(pre + "he" + post, c), (pre + "e" + post, c * -2)]
            return [(pre + "fh" + post, c), (pre + "f" + post, c * -2)]  # hf = fh - 2f
    raise AssertionError("word already normal")


def u_normalize(d, lam=None):
    d = _clean(dict(d))
    while True:
        bad = [w for w in d if not _is_pbw(w) or (lam is not None and "f" in w and "e" in w)]
        if not bad:
            return d
        w = bad[0]
        c = d.pop(w)
        for w2, c2 in _step(w, c, lam):
            _add_into(d, w2, c2)
        d = _clean(d)


def u_mul(a, b, lam=None):
    out = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            _add_into(out, w1 + w2, c1 * c2)
    return u_normalize(out, lam)


def symmetrize_oracle(a):
    """Average over all orderings of each commutative monomial."""
    out = {}
    for (me, mh, mf), c in a.items():
        letters = "e" * me + "h" * mh + "f" * mf
        perms = list(permutations(letters))
        weight = c / len(perms)
        for p in perms:
            _add_into(out, "".join(p), weight)
    return u_normalize(out)
