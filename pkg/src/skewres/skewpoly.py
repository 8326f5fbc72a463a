"""Skew polynomial arithmetic in F[x; sigma, delta].

Polynomials are stored in left-coefficient form ``a0 + a1*x + ... + am*x^m``
(``coeffs`` ascending, normalized so the last entry is nonzero).  The degree
of the zero polynomial is ``float('-inf')`` so it sorts below every integer.

The twisted product is driven by the composition operators ``comp_C`` and
``comp_T``: ``comp_C(ctx, d, s, a)`` is the sum of all compositions of d
copies of delta and s copies of sigma applied to a, and ``comp_T`` the same
with delta*sigma^-1 and sigma^-1.  Both have a dynamic-programming kernel and
a brute-force enumeration twin used as its oracle.
"""

from __future__ import annotations

import itertools

from .errors import CtxMismatch, DivisionByZero, NoInverse, TooLarge
from .rings import RingCtx

NEG_INF = float("-inf")

_ENUM_LIMIT = 20


# ---------------------------------------------------------------------------
# Composition operators
# ---------------------------------------------------------------------------


def comp_C_table(ctx: RingCtx, a, dmax: int, smax: int):
    """Table t[d][s] = comp_C(ctx, d, s, a) for 0 <= d <= dmax, 0 <= s <= smax."""
    t = [[None] * (smax + 1) for _ in range(dmax + 1)]
    t[0][0] = a
    for s in range(1, smax + 1):
        t[0][s] = ctx.sigma(t[0][s - 1])
    for d in range(1, dmax + 1):
        t[d][0] = ctx.delta(t[d - 1][0])
        for s in range(1, smax + 1):
            t[d][s] = ctx.delta(t[d - 1][s]) + ctx.sigma(t[d][s - 1])
    return t


def comp_C(ctx: RingCtx, d: int, s: int, a):
    if d < 0 or s < 0:
        return ctx.zero
    return comp_C_table(ctx, a, d, s)[d][s]


def comp_C_enum(ctx: RingCtx, d: int, s: int, a):
    """Enumeration twin of comp_C: sums over every interleaving word."""
    if d < 0 or s < 0:
        return ctx.zero
    if d + s > _ENUM_LIMIT:
        raise TooLarge(f"enumeration over {d + s} positions refused")
    total = ctx.zero
    for deltas in itertools.combinations(range(d + s), d):
        dset = set(deltas)
        b = a
        for pos in range(d + s):
            b = ctx.delta(b) if pos in dset else ctx.sigma(b)
        total = total + b
    return total


def comp_T_table(ctx: RingCtx, a, dmax: int, smax: int):
    if not ctx.has_sigma_inverse:
        raise NoInverse("comp_T needs sigma to be an automorphism")
    t = [[None] * (smax + 1) for _ in range(dmax + 1)]
    t[0][0] = a
    for s in range(1, smax + 1):
        t[0][s] = ctx.sigma_inv(t[0][s - 1])
    for d in range(1, dmax + 1):
        t[d][0] = ctx.delta(ctx.sigma_inv(t[d - 1][0]))
        for s in range(1, smax + 1):
            t[d][s] = ctx.delta(ctx.sigma_inv(t[d - 1][s])) + ctx.sigma_inv(t[d][s - 1])
    return t


def comp_T(ctx: RingCtx, d: int, s: int, a):
    if d < 0 or s < 0:
        return ctx.zero
    return comp_T_table(ctx, a, d, s)[d][s]


def comp_T_enum(ctx: RingCtx, d: int, s: int, a):
    if not ctx.has_sigma_inverse:
        raise NoInverse("comp_T needs sigma to be an automorphism")
    if d < 0 or s < 0:
        return ctx.zero
    if d + s > _ENUM_LIMIT:
        raise TooLarge(f"enumeration over {d + s} positions refused")
    total = ctx.zero
    for deltas in itertools.combinations(range(d + s), d):
        dset = set(deltas)
        b = a
        for pos in range(d + s):
            b = ctx.delta(ctx.sigma_inv(b)) if pos in dset else ctx.sigma_inv(b)
        total = total + b
    return total


# ---------------------------------------------------------------------------
# SkewPoly
# ---------------------------------------------------------------------------


class SkewPoly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: RingCtx, coeffs):
        coeffs = list(coeffs)
        for c in coeffs:
            if getattr(c, "ring", None) != ctx.ring:
                raise CtxMismatch("coefficient from a different ring")
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("SkewPoly is immutable")

    # -- constructors

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, [])

    @classmethod
    def one(cls, ctx):
        return cls(ctx, [ctx.one])

    @classmethod
    def gen(cls, ctx):
        return cls(ctx, [ctx.zero, ctx.one])

    @classmethod
    def monomial(cls, ctx, coef, k: int):
        return cls(ctx, [ctx.zero] * k + [coef])

    @classmethod
    def from_ints(cls, ctx, ints):
        return cls(ctx, [ctx.from_int(n) for n in ints])

    # -- structure

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise DivisionByZero("leading coefficient of zero polynomial")
        return self.coeffs[-1]

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ctx.zero

    def monic(self) -> "SkewPoly":
        """Left-normalize so the leading coefficient is one."""
        if self.is_zero:
            return self
        inv = self.lc.inv()
        return SkewPoly(self.ctx, [inv * c for c in self.coeffs])

    def _check(self, other):
        if not isinstance(other, SkewPoly):
            raise CtxMismatch(f"expected SkewPoly, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise CtxMismatch("polynomials from different ring contexts")

    # -- arithmetic

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.ctx.zero
        return SkewPoly(
            self.ctx,
            [self.coeff(k) + other.coeff(k) for k in range(n)] or [z],
        )

    def __neg__(self):
        return SkewPoly(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def __mul__(self, other):
        # right scalar multiply is the full twisted product with a constant
        if not isinstance(other, SkewPoly):
            return self._mul_poly(SkewPoly(self.ctx, [other]))
        self._check(other)
        return self._mul_poly(other)

    def __rmul__(self, other):
        # left scalar multiply: plain coefficient scaling
        return SkewPoly(self.ctx, [other * c for c in self.coeffs])

    def _mul_poly(self, other: "SkewPoly") -> "SkewPoly":
        if self.is_zero or other.is_zero:
            return SkewPoly.zero(self.ctx)
        ctx = self.ctx
        m, n = len(self.coeffs) - 1, len(other.coeffs) - 1
        out = [ctx.zero] * (m + n + 1)
        for j, bj in enumerate(other.coeffs):
            if not bj:
                continue
            table = comp_C_table(ctx, bj, m, m)
            for i, ai in enumerate(self.coeffs):
                if not ai:
                    continue
                for k in range(i + 1):
                    out[i + j - k] = out[i + j - k] + ai * table[k][i - k]
        return SkewPoly(ctx, out)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        r = SkewPoly.one(self.ctx)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, other):
        return (
            isinstance(other, SkewPoly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- evaluation

    def eval_right(self, a):
        """Remainder of right division by (x - a), via the norm recursion."""
        total = self.ctx.zero
        n = self.ctx.one
        for i, c in enumerate(self.coeffs):
            if i:
                n = self.ctx.sigma(n) * a + self.ctx.delta(n)
            total = total + c * n
        return total

    def eval_left(self, a):
        """Remainder of left division by (x - a); needs sigma invertible."""
        ctx = self.ctx
        rcoeffs = to_right_coeffs(self).rcoeffs
        total = ctx.zero
        m = ctx.one
        for i, c in enumerate(rcoeffs):
            if i:
                si = ctx.sigma_inv(m)
                m = a * si - ctx.delta(si)
            total = total + m * c
        return total

    # -- printing

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            s = str(c)
            if _has_toplevel_sign(s):
                sign, body = "+", f"({s})"
            elif s.startswith("-"):
                sign, body = "-", s[1:]
            else:
                sign, body = "+", s
            if k == 0:
                term = body
            else:
                xpart = "x" if k == 1 else f"x^{k}"
                term = xpart if body == "1" else f"{body}*{xpart}"
            parts.append((sign, term))
        first_sign, first_term = parts[0]
        out = ("-" if first_sign == "-" else "") + first_term
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    def __repr__(self):
        return f"SkewPoly({self})"


def _has_toplevel_sign(s: str) -> bool:
    depth = 0
    for idx, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and idx > 0 and depth == 0:
            return True
    return False


# ---------------------------------------------------------------------------
# Right-coefficient representation
# ---------------------------------------------------------------------------


class RightForm:
    """A polynomial written with right-hand coefficients sum x^i * A_i."""

    __slots__ = ("ctx", "rcoeffs")

    def __init__(self, ctx: RingCtx, rcoeffs):
        if not ctx.has_sigma_inverse:
            raise NoInverse("right-coefficient form needs sigma invertible")
        rcoeffs = list(rcoeffs)
        while rcoeffs and not rcoeffs[-1]:
            rcoeffs.pop()
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "rcoeffs", tuple(rcoeffs))

    def __setattr__(self, *a):
        raise AttributeError("RightForm is immutable")

    @classmethod
    def one(cls, ctx):
        return cls(ctx, [ctx.one])

    @property
    def degree(self):
        return len(self.rcoeffs) - 1 if self.rcoeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.rcoeffs

    def rcoeff(self, k: int):
        return self.rcoeffs[k] if 0 <= k < len(self.rcoeffs) else self.ctx.zero

    def __eq__(self, other):
        return (
            isinstance(other, RightForm)
            and self.ctx == other.ctx
            and self.rcoeffs == other.rcoeffs
        )

    def __hash__(self):
        return hash((self.ctx, self.rcoeffs))

    def __mul__(self, other):
        if not isinstance(other, RightForm) or other.ctx != self.ctx:
            raise CtxMismatch("right-form product needs matching contexts")
        return mul_right_form(self, other)

    def __repr__(self):
        return f"RightForm({[str(c) for c in self.rcoeffs]})"


def mul_right_form(F: RightForm, G: RightForm) -> RightForm:
    """Product of two right-form polynomials."""
    ctx = F.ctx
    if G.ctx != ctx:
        raise CtxMismatch("right-form product needs matching contexts")
    if F.is_zero or G.is_zero:
        return RightForm(ctx, [])
    m, n = len(F.rcoeffs) - 1, len(G.rcoeffs) - 1
    out = [ctx.zero] * (m + n + 1)
    for i, bi in enumerate(F.rcoeffs):
        if not bi:
            continue
        table = comp_T_table(ctx, bi, n, n)
        for j, aj in enumerate(G.rcoeffs):
            if not aj:
                continue
            for k in range(j + 1):
                term = table[k][j - k] * aj
                if k % 2:
                    term = -term
                out[i + j - k] = out[i + j - k] + term
    return RightForm(ctx, out)


def to_right_coeffs(f: SkewPoly) -> RightForm:
    """Rewrite sum a_i x^i as sum x^i A_i."""
    ctx = f.ctx
    if not ctx.has_sigma_inverse:
        raise NoInverse("conversion needs sigma invertible")
    m = len(f.coeffs) - 1
    if m < 0:
        return RightForm(ctx, [])
    out = [ctx.zero] * (m + 1)
    for k, ak in enumerate(f.coeffs):
        if not ak:
            continue
        table = comp_T_table(ctx, ak, k, k)
        for j in range(k + 1):
            term = table[j][k - j]
            if j % 2:
                term = -term
            out[k - j] = out[k - j] + term
    return RightForm(ctx, out)


def from_right_coeffs(F: RightForm) -> SkewPoly:
    """Expand sum x^i A_i back into left-coefficient form."""
    ctx = F.ctx
    if F.is_zero:
        return SkewPoly.zero(ctx)
    m = len(F.rcoeffs) - 1
    out = [ctx.zero] * (m + 1)
    for i, Ai in enumerate(F.rcoeffs):
        if not Ai:
            continue
        table = comp_C_table(ctx, Ai, i, i)
        for k in range(i + 1):
            out[i - k] = out[i - k] + table[k][i - k]
    return SkewPoly(ctx, out)


# ---------------------------------------------------------------------------
# Division and one-sided gcds
# ---------------------------------------------------------------------------


def divmod_right(f: SkewPoly, g: SkewPoly):
    """Unique q, r with f = q*g + r and deg r < deg g."""
    f._check(g)
    if g.is_zero:
        raise DivisionByZero("right division by zero polynomial")
    ctx = f.ctx
    q = SkewPoly.zero(ctx)
    r = f
    dg, lg = g.degree, g.lc
    while not r.is_zero and r.degree >= dg:
        d = r.degree - dg
        c = r.lc * ctx.sigma_pow(lg, d).inv()
        t = SkewPoly.monomial(ctx, c, d)
        q = q + t
        r = r - t * g
    return q, r


def divmod_left(f: SkewPoly, g: SkewPoly):
    """Unique q, r with f = g*q + r and deg r < deg g (sigma invertible)."""
    f._check(g)
    if g.is_zero:
        raise DivisionByZero("left division by zero polynomial")
    ctx = f.ctx
    if not ctx.has_sigma_inverse:
        raise NoInverse("left division needs sigma invertible")
    q = SkewPoly.zero(ctx)
    r = f
    dg, lg_inv = g.degree, g.lc.inv()
    while not r.is_zero and r.degree >= dg:
        d = r.degree - dg
        c = ctx.sigma_pow(lg_inv * r.lc, -dg)
        t = SkewPoly.monomial(ctx, c, d)
        q = q + t
        r = r - g * t
    return q, r


def _euclid_right(f: SkewPoly, g: SkewPoly):
    """Extended right-Euclid rows (r, p, q) with p*f + q*g = r, ending at r=0."""
    ctx = f.ctx
    one, zero = SkewPoly.one(ctx), SkewPoly.zero(ctx)
    rows = [(f, one, zero), (g, zero, one)]
    while not rows[-1][0].is_zero:
        (r0, p0, q0), (r1, p1, q1) = rows[-2], rows[-1]
        quo, rem = divmod_right(r0, r1)
        rows.append((rem, p0 - quo * p1, q0 - quo * q1))
    return rows


def gcrd(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Monic generator of Rf + Rg (greatest common right divisor)."""
    f._check(g)
    if f.is_zero and g.is_zero:
        raise ValueError("gcrd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero:
        a, b = b, divmod_right(a, b)[1]
    return a.monic()


def xgcrd(f: SkewPoly, g: SkewPoly):
    """(d, p, q) with p*f + q*g = d = gcrd(f, g)."""
    f._check(g)
    if f.is_zero and g.is_zero:
        raise ValueError("gcrd(0, 0) is undefined")
    rows = _euclid_right(f, g)
    r, p, q = rows[-2]
    inv = r.lc.inv()
    return inv * r, inv * p, inv * q


def lcrm(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Monic generator of Rf  Rg, from the terminating Euclid cofactors."""
    f._check(g)
    if f.is_zero or g.is_zero:
        raise ValueError("lcrm needs nonzero polynomials")
    rows = _euclid_right(f, g)
    _, p, _ = rows[-1]
    return (p * f).monic()


def gcld(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Monic generator of fR + gR (needs sigma invertible)."""
    f._check(g)
    if f.is_zero and g.is_zero:
        raise ValueError("gcld(0, 0) is undefined")
    ctx = f.ctx
    if not ctx.has_sigma_inverse:
        raise NoInverse("gcld needs sigma invertible")
    a, b = f, g
    while not b.is_zero:
        a, b = b, divmod_left(a, b)[1]
    # monic via right multiplication by a unit
    c = ctx.sigma_pow(a.lc.inv(), -a.degree)
    return a * SkewPoly(ctx, [c])


# ---------------------------------------------------------------------------
# (sigma, delta)-conjugation
# ---------------------------------------------------------------------------


def conj_right(ctx: RingCtx, a, c):
    """Right conjugate a^c = sigma(c) a c^-1 + delta(c) c^-1."""
    if not c:
        raise DivisionByZero("conjugation by zero")
    ci = c.inv()
    return ctx.sigma(c) * a * ci + ctx.delta(c) * ci


def conj_left(ctx: RingCtx, a, c):
    """Left conjugate: c^-1 a sigma^-1(c) - c^-1 delta(sigma^-1(c))."""
    if not c:
        raise DivisionByZero("conjugation by zero")
    if not ctx.has_sigma_inverse:
        raise NoInverse("left conjugation needs sigma invertible")
    ci = c.inv()
    sc = ctx.sigma_inv(c)
    return ci * a * sc - ci * ctx.delta(sc)
