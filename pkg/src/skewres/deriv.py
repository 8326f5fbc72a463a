"""Derivative polynomials, Hasse derivatives and root multiplicities.

The right derivative polynomial of f via a point sequence (a_1, ..., a_r) is
the quotient of f upon right division by (x - a_r) ... (x - a_1); the left
version divides by (x - a_1) ... (x - a_r) on the left.  The right quotient is
computed by the single-step coefficient recursion

    b_{m-1} = a_m,   b_k = a_{k+1} + sum_i b_{k+1+i} * C_{i, k+1}(point)

iterated once per point, which agrees with the division-quotient definition.
Multiplicity of a root is decided by repeated exact division; the consistency
of the resultant/gcld criteria chains is asserted alongside where they apply.
"""

from __future__ import annotations

from .errors import NoInverse, UnsupportedRing
from .rings import FiniteField
from .resultant import Side, resultant
from .skewpoly import SkewPoly, comp_C_table, divmod_left, divmod_right, gcld, gcrd


def _check_seq(f: SkewPoly, seq):
    seq = tuple(seq)
    if not seq:
        raise ValueError("point sequence must be nonempty")
    for a in seq:
        if getattr(a, "ring", None) != f.ctx.ring:
            raise ValueError("sequence point from a different ring")
    return seq


def _delta_step_right(f: SkewPoly, a) -> SkewPoly:
    """Quotient of f upon right division by (x - a), by the recursion."""
    ctx = f.ctx
    m = f.degree
    if m < 1:
        return SkewPoly.zero(ctx)
    table = comp_C_table(ctx, a, m, m)
    beta = [ctx.zero] * m
    beta[m - 1] = f.coeff(m)
    for k in range(m - 2, -1, -1):
        acc = f.coeff(k + 1)
        for i in range(m - k - 1):
            acc = acc + beta[k + 1 + i] * table[i][k + 1]
        beta[k] = acc
    return SkewPoly(ctx, beta)


def delta_poly(f: SkewPoly, seq, side: Side = Side.RIGHT) -> SkewPoly:
    """Derivative polynomial of f of order len(seq) via the point sequence."""
    seq = _check_seq(f, seq)
    ctx = f.ctx
    if len(seq) > (f.degree if not f.is_zero else -1):
        return SkewPoly.zero(ctx)
    if side is Side.RIGHT:
        out = f
        for a in seq:
            out = _delta_step_right(out, a)
        return out
    if not ctx.has_sigma_inverse:
        raise NoInverse("left derivative polynomials need sigma invertible")
    out = f
    for a in seq:
        out = divmod_left(out, SkewPoly(ctx, [-a, ctx.one]))[0]
    return out


def _seq_product(ctx, seq, side: Side) -> SkewPoly:
    """(x-a_r)...(x-a_1) for the right side, (x-a_1)...(x-a_r) for the left."""
    order = reversed(seq) if side is Side.RIGHT else seq
    prod = SkewPoly.one(ctx)
    for a in order:
        prod = prod * SkewPoly(ctx, [-a, ctx.one])
    return prod


def hasse(f: SkewPoly, seq, side: Side = Side.RIGHT):
    """Hasse derivative of order r: the x^(r-1) coefficient of the remainder
    of dividing f by the sequence product on the given side."""
    seq = _check_seq(f, seq)
    ctx = f.ctx
    p = _seq_product(ctx, seq, side)
    if side is Side.RIGHT:
        _, rem = divmod_right(f, p)
    else:
        _, rem = divmod_left(f, p)
    return rem.coeff(len(seq) - 1)


def multiplicity(f: SkewPoly, a, side: Side = Side.RIGHT) -> int:
    """Largest r such that (x - a)^r divides f on the given side."""
    if f.is_zero:
        raise ValueError("multiplicity in the zero polynomial is undefined")
    ctx = f.ctx
    lin = SkewPoly(ctx, [-a, ctx.one])
    div = divmod_right if side is Side.RIGHT else divmod_left
    r = 0
    rest = f
    while not rest.is_zero:
        q, rem = div(rest, lin)
        if not rem.is_zero:
            break
        r += 1
        rest = q
    if ctx.has_sigma_inverse and 1 <= r < f.degree:
        _assert_root_chain(f, a, r, side)
    return r


def _assert_root_chain(f: SkewPoly, a, r: int, side: Side):
    """Consistency of the derivative/resultant criteria for a one-sided root
    of multiplicity >= r (the chain applies while r < deg f): all derivative
    polynomials up to order r-1 vanish at the point, and consecutive ones have
    vanishing resultant / non-unit common factor on the opposite side."""
    chain = [f]
    for _ in range(r):
        chain.append(delta_poly(chain[-1], [a], side))
    res_side = Side.LEFT if side is Side.RIGHT else Side.RIGHT
    common = gcld if res_side is Side.LEFT else gcrd
    for jj in range(r):
        val = chain[jj].eval_right(a) if side is Side.RIGHT else chain[jj].eval_left(a)
        assert not val, "derivative chain evaluation broken"
        assert resultant(chain[jj], chain[jj + 1], res_side).is_zero, (
            "resultant of consecutive derivatives should vanish"
        )
        assert common(chain[jj], chain[jj + 1]).degree >= 1


def is_multiplicity_sequence(ctx, seq, side: Side = Side.RIGHT) -> bool:
    """True when seq[0] is the only root of the sequence product on the given
    side; decided by exhaustive scan, hence finite fields only."""
    if not isinstance(ctx.ring, FiniteField):
        raise UnsupportedRing("multiplicity sequences are scanned over finite fields only")
    seq = tuple(seq)
    if not seq:
        raise ValueError("point sequence must be nonempty")
    p = _seq_product(ctx, seq, side)
    ev = (lambda c: p.eval_right(c)) if side is Side.RIGHT else (lambda c: p.eval_left(c))
    for c in ctx.ring.elements():
        if not ev(c) and c != seq[0]:
            return False
    return True


def multiplicity_via_sequence(f: SkewPoly, seq, side: Side = Side.RIGHT) -> bool:
    """True when the sequence product divides f on the given side, i.e. seq[0]
    is a root of f of multiplicity len(seq) via seq.

    Over finite fields the multiplicity-sequence property of seq is verified;
    elsewhere it is the caller's obligation.  Where the criteria chain applies
    (r < deg f, sigma invertible) its four routes are asserted to agree.
    """
    seq = _check_seq(f, seq)
    ctx = f.ctx
    if isinstance(ctx.ring, FiniteField) and not is_multiplicity_sequence(ctx, seq, side):
        raise ValueError("not a multiplicity sequence")
    p = _seq_product(ctx, seq, side)
    div = divmod_right if side is Side.RIGHT else divmod_left
    divides = div(f, p)[1].is_zero
    r = len(seq)
    if r < (f.degree if not f.is_zero else 0) and ctx.has_sigma_inverse:
        _assert_sequence_chain(f, seq, side, divides)
    return divides


def _assert_sequence_chain(f: SkewPoly, seq, side: Side, divides: bool):
    ctx = f.ctx
    r = len(seq)
    derivs = [f]
    for idx in range(r):
        derivs.append(delta_poly(f, seq[: idx + 1], side))
    if side is Side.RIGHT:
        evals = [not derivs[idx].eval_right(seq[idx]) for idx in range(r)]
    else:
        evals = [not derivs[idx].eval_left(seq[idx]) for idx in range(r)]
    assert all(evals) == divides, "evaluation chain disagrees with division"
    res_side = Side.LEFT if side is Side.RIGHT else Side.RIGHT
    common = gcrd if res_side is Side.RIGHT else gcld
    chain_ok = True
    for idx in range(r):
        lower, upper = derivs[idx], derivs[idx + 1]
        res_zero = resultant(lower, upper, res_side).is_zero
        fac_nonunit = common(lower, upper).degree >= 1
        assert res_zero == fac_nonunit, "resultant and gcd routes disagree"
        if not res_zero:
            chain_ok = False
            break
    assert chain_ok == divides, "criteria chain disagrees with division"
