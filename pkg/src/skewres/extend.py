"""Finite-field context extensions and common-root search.

Over F_q with a Frobenius sigma and an inner (or zero) delta, both maps
extend trivially to any F_{q^e}: sigma keeps the same p-power and delta keeps
the same beta.  Right evaluation of a fixed polynomial then agrees between
the base and the extension, which turns "common right root somewhere" into a
commutative root-finding problem: the vanishing resultant yields a common
right factor h, the value map c -> h(c) expands symbolically into an ordinary
polynomial over F_q, and any root of an irreducible factor of that polynomial
lives in the extension of the factor's degree.

The left-side twin runs through the opposite ring: rewriting f with
right-hand coefficients and reading them as left coefficients over
(sigma^-1, -delta o sigma^-1) turns left division into right division, so the
right-root search applies; the extension returned for the original ring takes
sigma-tilde as the *inverse* of the trivially-extended sigma^-1, which still
restricts to sigma on the base field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import fqpoly
from .errors import UnsupportedRing
from .resultant import Side, resultant
from .rings import (
    FFElem,
    FiniteField,
    Frobenius,
    Identity,
    InnerL,
    RingCtx,
    ZeroDelta,
    finite_field,
    make_ctx,
)
from .skewpoly import SkewPoly, gcld, gcrd, to_right_coeffs


@dataclass(frozen=True)
class ExtensionResult:
    """A verified common root in a (possibly trivial) field extension."""

    ext_degree: int
    ext_ctx: RingCtx
    root: FFElem
    embed: object  # callable mapping base-field elements into the extension

    @property
    def description(self) -> str:
        base = self.ext_ctx.ring
        gen_img = self.embed(_base_field_of(self).gen)
        return (
            f"F_{base.p}^{base.m // self.ext_degree} -> F_{base.p}^{base.m}, "
            f"w -> {gen_img}"
        )


def _base_field_of(res: ExtensionResult) -> FiniteField:
    f = res.ext_ctx.ring
    return finite_field(f.p, f.m // res.ext_degree)


_EMBED_CACHE: dict[tuple, object] = {}


def field_embedding(base: FiniteField, ext: FiniteField, seed: int = 0):
    """The canonical embedding F_{p^m} -> F_{p^{m e}}.

    The generator of the base field maps to the smallest-index root of the
    base modulus inside the extension; the rest follows linearly.
    """
    if ext == base:
        return lambda a: a
    if ext.p != base.p or ext.m % base.m:
        raise UnsupportedRing(f"{ext!r} does not contain {base!r}")
    key = (base.p, base.m, ext.m)
    emb = _EMBED_CACHE.get(key)
    if emb is not None:
        return emb
    modulus = [ext.from_int(c) for c in base.modulus]
    rng = random.Random(seed)
    rts = fqpoly.roots(modulus, ext, rng)
    assert rts, "base modulus must split in the extension"
    img = rts[0]
    powers = [ext.one]
    for _ in range(base.m - 1):
        powers.append(powers[-1] * img)

    def emb(a: FFElem, _powers=powers, _base=base, _ext=ext):
        total = _ext.zero
        for digit, power in zip(_base.digits(a.idx), _powers):
            if digit:
                total = total + _ext.from_int(digit) * power
        return total

    _EMBED_CACHE[key] = emb
    return emb


def _check_extendable(ctx: RingCtx):
    if not isinstance(ctx.ring, FiniteField):
        raise UnsupportedRing("context extension is defined for finite fields")
    if not isinstance(ctx.sigma_spec, (Frobenius, Identity)):
        raise UnsupportedRing("sigma must be a Frobenius power (or identity)")
    if not isinstance(ctx.delta_spec, (ZeroDelta, InnerL)):
        raise UnsupportedRing("delta must be zero or inner")


def extend_ctx(ctx: RingCtx, e: int) -> RingCtx:
    """Context over F_{q^e} with trivially extended sigma and delta."""
    _check_extendable(ctx)
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if e == 1:
        return ctx
    base: FiniteField = ctx.ring
    ext = finite_field(base.p, base.m * e)
    emb = field_embedding(base, ext)
    sigma = ctx.sigma_spec
    if isinstance(sigma, Frobenius):
        sigma = Frobenius(sigma.power % base.m)
    delta = ctx.delta_spec
    if isinstance(delta, InnerL):
        delta = InnerL(emb(delta.beta))
    return make_ctx(ext, sigma, delta)


def embed_poly(f: SkewPoly, ext_ctx: RingCtx, emb) -> SkewPoly:
    return SkewPoly(ext_ctx, [emb(c) for c in f.coeffs])


def _sigma_power_of(ctx: RingCtx) -> int:
    s = ctx.sigma_spec
    if isinstance(s, Identity):
        return 0
    return s.power % ctx.ring.m


def norm_value_poly(h: SkewPoly):
    """The ordinary polynomial V(y) over F_q with V(c) = h(c) (right
    evaluation) for every c in the base field or any trivial extension."""
    ctx = h.ctx
    _check_extendable(ctx)
    field: FiniteField = ctx.ring
    jp = _sigma_power_of(ctx)
    pj = field.p ** jp
    beta = ctx.delta_spec.beta if isinstance(ctx.delta_spec, InnerL) else None
    zero = field.zero

    def sigma_sym(poly):
        out = [zero] * (max((len(poly) - 1) * pj, 0) + 1) if poly else []
        for k, c in enumerate(poly):
            if c:
                out[k * pj] = out[k * pj] + ctx.sigma(c)
        return fqpoly.trim(out)

    def delta_sym(poly):
        if beta is None:
            return []
        diff = fqpoly.sub(sigma_sym(poly), poly, zero)
        return fqpoly.mul([beta], diff, zero)

    total = []
    n_i = [field.one]
    for k, c in enumerate(h.coeffs):
        if k:
            n_i = fqpoly.add(
                fqpoly.mul(sigma_sym(n_i), [zero, field.one], zero),
                delta_sym(n_i),
                zero,
            )
        if c:
            total = fqpoly.add(total, fqpoly.mul([c], n_i, zero), zero)
    return total


def common_right_root_ext(f: SkewPoly, g: SkewPoly, seed: int = 0):
    """A verified common right root in the smallest trivial extension, or
    None exactly when the right resultant is nonzero."""
    _check_extendable(f.ctx)
    if not resultant(f, g, Side.RIGHT).is_zero:
        return None
    ctx = f.ctx
    base: FiniteField = ctx.ring
    h = gcrd(f, g)
    assert h.degree >= 1, "zero resultant must yield a non-unit gcrd"
    value_poly = norm_value_poly(h)
    rng = random.Random(seed)
    factors = fqpoly.factor(value_poly, base, rng)
    irr = factors[0][0]  # minimal degree, then smallest coefficients
    e = fqpoly.degree(irr)
    if e == 1:
        root = -irr[0]
        res = ExtensionResult(1, ctx, root, lambda a: a)
    else:
        ext_ctx = extend_ctx(ctx, e)
        emb = field_embedding(base, ext_ctx.ring)
        irr_ext = [emb(c) for c in irr]
        rts = fqpoly.roots(irr_ext, ext_ctx.ring, rng)
        assert rts, "irreducible factor must split in its own degree extension"
        res = ExtensionResult(e, ext_ctx, rts[0], emb)
    fe = embed_poly(f, res.ext_ctx, res.embed)
    ge = embed_poly(g, res.ext_ctx, res.embed)
    assert not fe.eval_right(res.root) and not ge.eval_right(res.root), (
        "returned root failed verification"
    )
    return res


def _opposite_ctx(ctx: RingCtx) -> RingCtx:
    """The ring carrying right-form coefficients as left ones: sigma^-1 with
    the matching inner delta (same beta)."""
    base: FiniteField = ctx.ring
    jp = _sigma_power_of(ctx)
    sigma = Frobenius((-jp) % base.m) if not isinstance(ctx.sigma_spec, Identity) else Identity()
    return make_ctx(base, sigma, ctx.delta_spec)


def common_left_root_ext(f: SkewPoly, g: SkewPoly, seed: int = 0):
    """Left twin of :func:`common_right_root_ext`.

    Works in the opposite ring, where left roots of f become right roots of
    its right-form rewrite; the extension handed back carries the sigma whose
    inverse extends sigma^-1 trivially, so it still restricts correctly.
    """
    _check_extendable(f.ctx)
    if not resultant(f, g, Side.LEFT).is_zero:
        return None
    ctx = f.ctx
    base: FiniteField = ctx.ring
    op = _opposite_ctx(ctx)
    fo = SkewPoly(op, to_right_coeffs(f).rcoeffs)
    go = SkewPoly(op, to_right_coeffs(g).rcoeffs)
    d = gcld(f, g)
    assert d.degree >= 1, "zero left resultant must yield a non-unit gcld"
    res = common_right_root_ext(fo, go, seed)
    assert res is not None, "opposite-ring search must succeed"
    e = res.ext_degree
    if e == 1:
        out = ExtensionResult(1, ctx, res.root, lambda a: a)
    else:
        ext: FiniteField = res.ext_ctx.ring
        jp = _sigma_power_of(ctx)
        jprime = (-jp) % base.m  # the opposite ring's Frobenius power
        tau = (-jprime) % ext.m  # inverse of its trivial extension
        sigma = Frobenius(tau) if not isinstance(ctx.sigma_spec, Identity) else Identity()
        delta = ctx.delta_spec
        emb = res.embed
        if isinstance(delta, InnerL):
            delta = InnerL(emb(delta.beta))
        ext_ctx = make_ctx(ext, sigma, delta)
        out = ExtensionResult(e, ext_ctx, res.root, emb)
    fe = embed_poly(f, out.ext_ctx, out.embed)
    ge = embed_poly(g, out.ext_ctx, out.embed)
    assert not fe.eval_left(out.root) and not ge.eval_left(out.root), (
        "returned left root failed verification"
    )
    return out
