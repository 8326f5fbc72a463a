"""Commutative univariate polynomials over a finite field.

Minimal dense toolkit used by the extension-field machinery: coefficient
lists are ascending with no trailing zeros.  Factorization is the standard
squarefree + distinct-degree + equal-degree pipeline; the equal-degree
splitting consumes a caller-provided seeded Random so runs are reproducible.
"""

from __future__ import annotations

import random

from .errors import DivisionByZero
from .rings import FFElem, FiniteField


def trim(cs):
    cs = list(cs)
    while cs and not cs[-1]:
        cs.pop()
    return cs


def degree(cs) -> int:
    return len(cs) - 1


def add(a, b, zero):
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else zero
        y = b[k] if k < len(b) else zero
        out.append(x + y)
    return trim(out)


def sub(a, b, zero):
    return add(a, [-c for c in b], zero)


def mul(a, b, zero):
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return trim(out)


def divmod_(a, b, zero):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    q = [zero] * max(0, len(a) - len(b) + 1)
    inv = b[-1].inv()
    while len(trim(a)) >= len(b):
        a = trim(a)
        c = a[-1] * inv
        d = len(a) - len(b)
        q[d] = c
        for i, bi in enumerate(b):
            a[d + i] = a[d + i] - c * bi
    return trim(q), trim(a)


def monic(a):
    if not a:
        return []
    inv = a[-1].inv()
    return [inv * c for c in a]


def gcd(a, b, zero):
    while b:
        a, b = b, divmod_(a, b, zero)[1]
    return monic(a)


def pow_mod(a, e: int, mod, zero, one):
    r = [one]
    b = divmod_(a, mod, zero)[1]
    while e:
        if e & 1:
            r = divmod_(mul(r, b, zero), mod, zero)[1]
        b = divmod_(mul(b, b, zero), mod, zero)[1]
        e >>= 1
    return r


def eval_at(a, x, zero):
    total = zero
    for c in reversed(a):
        total = total * x + c
    return total


def deriv(a, field: FiniteField):
    return trim([field.from_int(k) * a[k] for k in range(1, len(a))])


def format_poly(a, var: str = "y") -> str:
    if not a:
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        cs = str(c)
        if k == 0:
            terms.append(cs)
        else:
            xp = var if k == 1 else f"{var}^{k}"
            terms.append(xp if cs == "1" else f"{cs}*{xp}")
    return " + ".join(terms)


def _pth_root_poly(a, field: FiniteField):
    """Inverse of c -> c^p on coefficients of a polynomial in y^p."""
    p = field.p
    e = field.p ** (field.m - 1)  # c^(q/p) is the p-th root in F_q
    return trim([FFElem(field, field.pow_idx(a[k].idx, e)) for k in range(0, len(a), p)])


def squarefree_decomposition(f, field: FiniteField):
    """List of (monic squarefree factor, multiplicity), standard char-p form."""
    zero = field.zero
    p = field.p
    f = monic(f)
    out = []
    fp = deriv(f, field)
    if not fp:
        for h, m in squarefree_decomposition(_pth_root_poly(f, field), field):
            out.append((h, m * p))
        return out
    c = gcd(f, fp, zero)
    w = divmod_(f, c, zero)[0]
    i = 1
    while degree(w) > 0:
        y = gcd(w, c, zero)
        fac = divmod_(w, y, zero)[0]
        if degree(fac) > 0:
            out.append((fac, i))
        w = y
        c = divmod_(c, y, zero)[0]
        i += 1
    if degree(c) > 0:
        for h, m in squarefree_decomposition(_pth_root_poly(c, field), field):
            out.append((h, m * p))
    return out


def _distinct_degree(f, field: FiniteField):
    """Split a monic squarefree f into (product of irreducibles of degree d, d)."""
    zero, one = field.zero, field.one
    q = field.q
    out = []
    v = f
    h = [zero, one]  # y
    d = 0
    while degree(v) >= 2 * (d + 1):
        d += 1
        h = pow_mod(h, q, v, zero, one)
        g = gcd(sub(h, [zero, one], zero), v, zero)
        if degree(g) > 0:
            out.append((g, d))
            v = divmod_(v, g, zero)[0]
            h = divmod_(h, v, zero)[1] if degree(v) > 0 else h
    if degree(v) > 0:
        out.append((v, degree(v)))
    return out


def _equal_degree(f, d: int, field: FiniteField, rng: random.Random):
    """Split a monic product of distinct degree-d irreducibles completely."""
    zero, one = field.zero, field.one
    n = degree(f)
    if n == d:
        return [f]
    q = field.q
    while True:
        r = trim([field.random_element(rng) for _ in range(n)])
        if degree(r) < 1:
            continue
        if field.p == 2:
            # trace map over F_2 of r modulo f
            bits = field.m * d
            g = divmod_(r, f, zero)[1]
            cur = g
            for _ in range(bits - 1):
                cur = pow_mod(cur, 2, f, zero, one)
                g = add(g, cur, zero)
        else:
            g = sub(pow_mod(r, (q ** d - 1) // 2, f, zero, one), [one], zero)
        h = gcd(g, f, zero)
        if 0 < degree(h) < n:
            return _equal_degree(h, d, field, rng) + _equal_degree(
                divmod_(f, h, zero)[0], d, field, rng
            )


def factor(f, field: FiniteField, rng: random.Random | None = None):
    """Monic irreducible factors with multiplicities, deterministically sorted."""
    if rng is None:
        rng = random.Random(0)
    if degree(f) < 1:
        return []
    out = []
    for sq, mult in squarefree_decomposition(f, field):
        for prod, d in _distinct_degree(sq, field):
            for irr in _equal_degree(prod, d, field, rng):
                out.append((monic(irr), mult))
    out.sort(key=lambda im: (degree(im[0]), [c.idx for c in im[0]]))
    return out


def roots(f, field: FiniteField, rng: random.Random | None = None):
    """All roots of f in the coefficient field, sorted by element index."""
    rts = []
    for irr, _ in factor(f, field, rng):
        if degree(irr) == 1:
            rts.append(-irr[0])
    return sorted(set(rts), key=lambda e: e.idx)
