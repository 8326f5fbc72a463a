"""Right and left (sigma, delta)-Sylvester matrices and resultants.

For f of degree m and g of degree n (both >= 1), the right Sylvester matrix
is (m+n) x (m+n): its first n rows expand ``c*f`` and its last m rows expand
``d*g`` for unknown cofactors c (deg < n) and d (deg < m), columns indexed by
ascending powers of x.  Row r of a block holds ``sum_l C_{r-l,l}(a_{q-l})``
in column q.  The left matrix is built the same way from right-form
coefficients with ``T`` operators and alternating signs ``(-1)^{r+i}``.

The resultant is the Dieudonne determinant of the matrix; it vanishes exactly
when the pair has a common (non-unit) factor on the corresponding side.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .dlinalg import DDetValue, DMatrix, coset_eq, ddet, left_kernel, rank, solve_row
from .errors import CtxMismatch, NoInverse, ZeroResultant
from .rings import RingCtx
from .skewpoly import (
    SkewPoly,
    comp_C_table,
    comp_T_table,
    divmod_right,
    gcld,
    gcrd,
    to_right_coeffs,
    xgcrd,
)


class Side(enum.Enum):
    RIGHT = "right"
    LEFT = "left"


def _check_pair(f: SkewPoly, g: SkewPoly):
    f._check(g)
    if f.is_zero or g.is_zero or f.degree < 1 or g.degree < 1:
        raise ValueError("sylvester needs two polynomials of degree >= 1")


def _right_block(ctx: RingCtx, coeffs, nrows: int, size: int):
    deg = len(coeffs) - 1
    tables = [comp_C_table(ctx, a, nrows - 1, nrows - 1) for a in coeffs]
    block = []
    for p in range(nrows):
        row = []
        for q in range(size):
            acc = ctx.zero
            for l in range(max(0, q - deg), min(p, q) + 1):
                acc = acc + tables[q - l][p - l][l]
            row.append(acc)
        block.append(row)
    return block


def _left_block(ctx: RingCtx, rcoeffs, nrows: int, size: int):
    deg = len(rcoeffs) - 1
    tables = [comp_T_table(ctx, a, nrows - 1, nrows - 1) for a in rcoeffs]
    block = []
    for p in range(nrows):
        row = []
        for q in range(size):
            acc = ctx.zero
            for i in range(max(0, q - deg), min(p, q) + 1):
                term = tables[q - i][p - i][i]
                if (p + i) % 2:
                    term = -term
                acc = acc + term
            row.append(acc)
        block.append(row)
    return block


def sylvester(f: SkewPoly, g: SkewPoly, side: Side = Side.RIGHT) -> DMatrix:
    """The (m+n) x (m+n) Sylvester matrix of f and g on the given side."""
    _check_pair(f, g)
    ctx = f.ctx
    m, n = f.degree, g.degree
    size = m + n
    if side is Side.RIGHT:
        rows = _right_block(ctx, f.coeffs, n, size) + _right_block(ctx, g.coeffs, m, size)
    else:
        if not ctx.has_sigma_inverse:
            raise NoInverse("left Sylvester matrix needs sigma invertible")
        fa = to_right_coeffs(f).rcoeffs
        gb = to_right_coeffs(g).rcoeffs
        rows = _left_block(ctx, fa, n, size) + _left_block(ctx, gb, m, size)
    return DMatrix(ctx, rows)


def resultant(f: SkewPoly, g: SkewPoly, side: Side = Side.RIGHT) -> DDetValue:
    """Dieudonne determinant of the Sylvester matrix."""
    return ddet(sylvester(f, g, side))


def gcrd_degree_via_rank(f: SkewPoly, g: SkewPoly) -> int:
    """deg gcrd(f, g) as m + n - rank of the right Sylvester matrix."""
    _check_pair(f, g)
    return f.degree + g.degree - rank(sylvester(f, g, Side.RIGHT))


def common_factor_witness(f: SkewPoly, g: SkewPoly):
    """Cofactors (c, d) with c*f + d*g = 0, deg c < deg g, deg d < deg f,
    reconstructed from the left kernel of the right Sylvester matrix.
    Returns None when the resultant is nonzero."""
    _check_pair(f, g)
    kern = left_kernel(sylvester(f, g, Side.RIGHT))
    if not kern:
        return None
    vec = kern[0]
    n = g.degree
    c = SkewPoly(f.ctx, vec[:n])
    d = SkewPoly(f.ctx, vec[n:])
    combo = c * f + d * g
    assert combo.is_zero, "kernel vector failed to annihilate the pair"
    return c, d


@dataclass(frozen=True)
class CriteriaReport:
    """Equivalent one-sided common-factor conditions, evaluated independently."""

    side: Side
    resultant_zero: bool
    gcrd_nonunit: bool
    bezout_unit_exists: bool
    ideal_proper: bool
    common_divisor: SkewPoly

    @property
    def has_common_factor(self) -> bool:
        return self.resultant_zero


def criteria_right(f: SkewPoly, g: SkewPoly) -> CriteriaReport:
    """Evaluate the equivalent right-side conditions through separate routes
    (determinant, Euclid, extended Euclid) and assert they agree."""
    _check_pair(f, g)
    res_zero = resultant(f, g, Side.RIGHT).is_zero
    d = gcrd(f, g)
    nonunit = d.degree >= 1
    dx, p, q = xgcrd(f, g)
    unit_combo = dx.degree == 0
    if unit_combo:
        assert p * f + q * g == SkewPoly.one(f.ctx)
    report = CriteriaReport(
        side=Side.RIGHT,
        resultant_zero=res_zero,
        gcrd_nonunit=nonunit,
        bezout_unit_exists=unit_combo,
        ideal_proper=nonunit,
        common_divisor=d,
    )
    assert res_zero == nonunit == (not unit_combo), (
        f"equivalence broken: resultant_zero={res_zero} gcrd_nonunit={nonunit} "
        f"bezout_unit_exists={unit_combo}"
    )
    return report


def criteria_left(f: SkewPoly, g: SkewPoly) -> CriteriaReport:
    """Left twin of :func:`criteria_right` (needs sigma invertible)."""
    _check_pair(f, g)
    res_zero = resultant(f, g, Side.LEFT).is_zero
    d = gcld(f, g)
    nonunit = d.degree >= 1
    report = CriteriaReport(
        side=Side.LEFT,
        resultant_zero=res_zero,
        gcrd_nonunit=nonunit,
        bezout_unit_exists=not nonunit,
        ideal_proper=nonunit,
        common_divisor=d,
    )
    assert res_zero == nonunit, (
        f"left equivalence broken: resultant_zero={res_zero} gcld_nonunit={nonunit}"
    )
    return report


def bezout_resultant(f: SkewPoly, g: SkewPoly):
    """(A, B, R) with A*f + B*g equal to the resultant representative.

    Solves the unit-combination system by elimination, then scales by the
    resultant: exact over fields, exact-up-to-the-chosen-representative over
    noncommutative rings.
    """
    _check_pair(f, g)
    ctx = f.ctx
    r = resultant(f, g, Side.RIGHT)
    if r.is_zero:
        raise ZeroResultant("pair has a common right factor")
    s = sylvester(f, g, Side.RIGHT)
    size = f.degree + g.degree
    target = [ctx.zero] * size
    target[0] = ctx.one  # constant coefficient of A'(x) f + B'(x) g = 1
    y = solve_row(s, target)
    n = g.degree
    a1 = SkewPoly(ctx, y[:n])
    b1 = SkewPoly(ctx, y[n:])
    assert a1 * f + b1 * g == SkewPoly.one(ctx), "unit combination failed"
    a = r.rep * a1
    b = r.rep * b1
    assert a * f + b * g == SkewPoly(ctx, [r.rep])
    return a, b, r


def resultant_properties_check(f: SkewPoly, g: SkewPoly, c=None) -> dict:
    """Verify the basic resultant identities applicable to (f, g).

    Returns a dict mapping item name to True/False, or None when the item
    does not apply to this pair.  Items: ``swap`` and ``negation`` (always,
    needs both degrees >= 1), ``linear_divisor`` (g = x - a),
    ``constant_divisor`` (g constant), ``scaling`` (delta = 0, with the
    scalar c, defaulting to the leading coefficient of f).
    """
    f._check(g)
    ctx = f.ctx
    report = {
        "swap": None,
        "negation": None,
        "linear_divisor": None,
        "constant_divisor": None,
        "scaling": None,
    }
    m = f.degree
    n = g.degree

    if m >= 1 and n >= 1:
        r_fg = resultant(f, g, Side.RIGHT)
        r_gf = resultant(g, f, Side.RIGHT)
        if ctx.ring.commutative:
            if r_fg.is_zero:
                ok = r_gf.is_zero
            else:
                expect = r_fg.rep if (m * n) % 2 == 0 else -r_fg.rep
                ok = (not r_gf.is_zero) and r_gf.rep == expect
        else:
            ok = r_fg.is_zero == r_gf.is_zero
            if not r_fg.is_zero and ok:
                ok = coset_eq(ctx, r_fg.rep, r_gf.rep)
        report["swap"] = ok

        r_nf = resultant(-f, g, Side.RIGHT)
        r_ng = resultant(f, -g, Side.RIGHT)
        if ctx.ring.commutative:
            if r_fg.is_zero:
                ok = r_nf.is_zero and r_ng.is_zero
            else:
                e1 = r_fg.rep if n % 2 == 0 else -r_fg.rep
                e2 = r_fg.rep if m % 2 == 0 else -r_fg.rep
                ok = r_nf.rep == e1 and r_ng.rep == e2
        else:
            ok = r_nf.is_zero == r_fg.is_zero == r_ng.is_zero
            if not r_fg.is_zero and ok:
                ok = coset_eq(ctx, r_nf.rep, r_fg.rep) and coset_eq(ctx, r_ng.rep, r_fg.rep)
        report["negation"] = ok

        if n == 1 and g.lc == ctx.one:
            a = -g.coeff(0)
            ok = r_fg.is_zero == (not f.eval_right(a))
            if ok and not a and not r_fg.is_zero:
                f0 = f.coeff(0)
                ok = r_fg.rep == f0 if ctx.ring.commutative else coset_eq(ctx, r_fg.rep, f0)
            report["linear_divisor"] = ok

    if n == 0 and m >= 1:
        b0 = g.coeff(0)
        prod = ctx.one
        for p in range(m):
            prod = prod * ctx.sigma_pow(b0, p)
        degenerate = DMatrix(ctx, _right_block(ctx, g.coeffs, m, m))
        dd = ddet(degenerate)
        report["constant_divisor"] = (not dd.is_zero) and dd.rep == prod

    if ctx.is_delta_zero and m >= 1 and n >= 1:
        cc = c if c is not None else f.lc
        r_fg = resultant(f, g, Side.RIGHT)
        r_cf = resultant(cc * f, g, Side.RIGHT)
        norm = ctx.one  # N_n(c) = sigma^{n-1}(c) ... sigma(c) c
        for p in range(n):
            norm = ctx.sigma_pow(cc, p) * norm
        if r_fg.is_zero:
            ok = r_cf.is_zero
        elif ctx.ring.commutative:
            ok = r_cf.rep == norm * r_fg.rep
        else:
            ok = (not r_cf.is_zero) and coset_eq(ctx, r_cf.rep, norm * r_fg.rep)
        report["scaling"] = ok

    return report
