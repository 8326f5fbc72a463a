"""Exact linear algebra over division rings.

All eliminations use row operations *on the left* (add a left multiple of a
row, swap rows), which is what keeps them meaningful over noncommutative
coefficients.  The Dieudonne determinant of a square matrix is read off the
triangularized form: zero when a diagonal entry vanishes, otherwise the coset
of the ordered diagonal product.  Over commutative fields the swap parity is
folded back in, so ``ddet`` returns the exact classical determinant there.
"""

from __future__ import annotations

import itertools

from .errors import (
    CtxMismatch,
    DivisionByZero,
    NonCommutativeRing,
    SingularMatrix,
    TooLarge,
)
from .rings import Quaternion, RingCtx

_LEIBNIZ_LIMIT = 8


class DMatrix:
    """Immutable rectangular matrix of ring elements tied to one context."""

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx: RingCtx, rows):
        rows = [tuple(r) for r in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged matrix rows")
            for r in rows:
                for e in r:
                    if getattr(e, "ring", None) != ctx.ring:
                        raise CtxMismatch("matrix entry from a different ring")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "rows", tuple(rows))

    def __setattr__(self, *a):
        raise AttributeError("DMatrix is immutable")

    @classmethod
    def identity(cls, ctx, n: int):
        z, o = ctx.zero, ctx.one
        return cls(ctx, [[o if i == j else z for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, DMatrix)
            and self.ctx == other.ctx
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ctx, self.rows))

    def __str__(self):
        return "; ".join(", ".join(str(e) for e in r) for r in self.rows)

    def __repr__(self):
        return f"DMatrix({self.nrows}x{self.ncols}: {self})"


class DDetValue:
    """Dieudonne determinant: Zero, or a coset representative.

    ``sign_ambiguous`` is set when an odd number of row swaps occurred over a
    noncommutative ring, where the class of -1 cannot be folded into the
    representative.  Over commutative fields the representative is the exact
    signed determinant and the flag stays False.
    """

    __slots__ = ("is_zero", "rep", "sign_ambiguous")

    def __init__(self, is_zero: bool, rep, sign_ambiguous: bool):
        if not is_zero and not rep:
            raise ValueError("coset representative must be nonzero")
        object.__setattr__(self, "is_zero", is_zero)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "sign_ambiguous", sign_ambiguous)

    def __setattr__(self, *a):
        raise AttributeError("DDetValue is immutable")

    @classmethod
    def zero(cls):
        return cls(True, None, False)

    @classmethod
    def coset(cls, rep, sign_ambiguous: bool = False):
        return cls(False, rep, sign_ambiguous)

    def __eq__(self, other):
        if not isinstance(other, DDetValue):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero == other.is_zero
        return self.rep == other.rep and self.sign_ambiguous == other.sign_ambiguous

    def __hash__(self):
        return hash((self.is_zero, self.rep, self.sign_ambiguous))

    def __str__(self):
        if self.is_zero:
            return "zero"
        s = str(self.rep)
        return f"+-({s})" if self.sign_ambiguous else s

    def __repr__(self):
        return f"DDetValue({self})"


def triangularize(m: DMatrix):
    """Upper-triangularize a square matrix by left row operations.

    Returns ``(U, swaps)``.  Columns are processed left to right; the first
    remaining row with a nonzero entry in the current column becomes the next
    output row (moving it up counts ``index`` swaps), and the entry is
    eliminated from every other remaining row.  A column with no pivot emits
    a zero row, so the output always has n rows and nullity is preserved.
    """
    if not m.is_square:
        raise ValueError("triangularize needs a square matrix")
    n = m.nrows
    ctx = m.ctx
    zero_row = tuple([ctx.zero] * n)
    remaining = [list(r) for r in m.rows]
    out = []
    swaps = 0
    for col in range(n):
        piv = next((k for k, r in enumerate(remaining) if r[col]), None)
        if piv is None:
            out.append(zero_row)
            continue
        swaps += piv
        prow = remaining.pop(piv)
        inv = prow[col].inv()
        for r in remaining:
            if r[col]:
                c = r[col] * inv
                for j in range(col, n):
                    r[j] = r[j] - c * prow[j]
        out.append(tuple(prow))
    return DMatrix(ctx, out), swaps


def ddet(m: DMatrix) -> DDetValue:
    """Dieudonne determinant (exact signed determinant over fields)."""
    u, swaps = triangularize(m)
    ctx = m.ctx
    prod = ctx.one
    for idx in range(m.nrows):
        d = u[idx, idx]
        if not d:
            return DDetValue.zero()
        prod = prod * d
    if ctx.ring.commutative:
        if swaps % 2:
            prod = -prod
        return DDetValue.coset(prod, sign_ambiguous=False)
    return DDetValue.coset(prod, sign_ambiguous=bool(swaps % 2))


def leibniz_det(m: DMatrix):
    """Permutation-expansion determinant; the oracle for ddet over fields."""
    if not m.ctx.ring.commutative:
        raise NonCommutativeRing("Leibniz expansion needs a commutative field")
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    if n > _LEIBNIZ_LIMIT:
        raise TooLarge(f"Leibniz expansion of a {n}x{n} matrix refused")
    if n == 0:
        return m.ctx.one
    total = m.ctx.zero
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        term = m.ctx.one
        for i in range(n):
            term = term * m[i, perm[i]]
        total = total + (-term if inversions % 2 else term)
    return total


def rank(m: DMatrix) -> int:
    """Left row rank (= right column rank) by elimination."""
    remaining = [list(r) for r in m.rows]
    pivots = 0
    for col in range(m.ncols):
        piv = next((k for k, r in enumerate(remaining) if r[col]), None)
        if piv is None:
            continue
        prow = remaining.pop(piv)
        inv = prow[col].inv()
        for r in remaining:
            if r[col]:
                c = r[col] * inv
                for j in range(col, m.ncols):
                    r[j] = r[j] - c * prow[j]
        pivots += 1
        if not remaining:
            break
    return pivots


def rref_transform(m: DMatrix):
    """Full reduced row echelon form with its transform: returns (R, E, pivots)
    where E*M = R, E invertible, and pivots lists the pivot column of each of
    the first rank(M) rows."""
    ctx = m.ctx
    nr, nc = m.nrows, m.ncols
    rows = [list(r) for r in m.rows]
    ident = DMatrix.identity(ctx, nr)
    trans = [list(r) for r in ident.rows]
    cur = 0
    pivots = []
    for col in range(nc):
        piv = next((k for k in range(cur, nr) if rows[k][col]), None)
        if piv is None:
            continue
        rows[cur], rows[piv] = rows[piv], rows[cur]
        trans[cur], trans[piv] = trans[piv], trans[cur]
        inv = rows[cur][col].inv()
        rows[cur] = [inv * e for e in rows[cur]]
        trans[cur] = [inv * e for e in trans[cur]]
        for k in range(nr):
            if k != cur and rows[k][col]:
                c = rows[k][col]
                rows[k] = [a - c * b for a, b in zip(rows[k], rows[cur])]
                trans[k] = [a - c * b for a, b in zip(trans[k], trans[cur])]
        pivots.append(col)
        cur += 1
        if cur == nr:
            break
    return DMatrix(ctx, rows), DMatrix(ctx, trans), pivots


def left_kernel(m: DMatrix):
    """Basis (list of row tuples) of {y : y * M = 0}."""
    r, e, pivots = rref_transform(m)
    nz = len(pivots)
    return [e.rows[k] for k in range(nz, m.nrows)]


def inverse(m: DMatrix) -> DMatrix:
    if not m.is_square:
        raise ValueError("inverse of a non-square matrix")
    r, e, pivots = rref_transform(m)
    if len(pivots) != m.nrows:
        raise SingularMatrix("matrix is singular")
    return e


def solve_row(b: DMatrix, c) -> tuple:
    """The unique row vector y with y * B = c."""
    if not b.is_square:
        raise ValueError("solve_row needs a square matrix")
    c = tuple(c)
    if len(c) != b.ncols:
        raise ValueError("dimension mismatch")
    binv = inverse(b)
    n = b.nrows
    return tuple(
        _dot_row(c, binv, j) for j in range(n)
    )


def _dot_row(c, m: DMatrix, j: int):
    total = m.ctx.zero
    for i, ci in enumerate(c):
        if ci:
            total = total + ci * m[i, j]
    return total


def coset_eq(ctx: RingCtx, u, v) -> bool:
    """Equality of u and v modulo the commutator subgroup of the units.

    Trivial (plain equality) over fields; reduced-norm equality over the
    rational quaternions.
    """
    if not u or not v:
        raise DivisionByZero("coset classes are defined for nonzero elements")
    if ctx.ring.commutative:
        return u == v
    if isinstance(u, Quaternion):
        return u.reduced_norm() == v.reduced_norm()
    raise NonCommutativeRing("no commutator characterization for this ring")
