"""Exact division rings together with their twisting maps.

Four concrete coefficient rings are provided, all with exact arithmetic and
canonical element forms so that equality is structural:

* ``FiniteField(p, m)``       -- F_{p^m} as F_p[z]/(modulus), generator ``w``
* ``RationalFunctionField(p)``-- F_p(t), reduced fractions with monic denominator
* ``GaussianRationals``       -- Q(i), pairs of ``fractions.Fraction``
* ``RationalQuaternions``     -- quaternions over Q with i^2 = j^2 = -1

A :class:`RingCtx` bundles a ring with an endomorphism ``sigma`` and a
``sigma``-derivation ``delta`` (the pair that twists the polynomial product
``x*a = sigma(a)*x + delta(a)``).  Unless constructed ``unchecked``, the pair
is validated against the homomorphism and twisted-Leibniz axioms on a
deterministic sample set.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    AxiomViolation,
    CtxMismatch,
    DivisionByZero,
    IncompatibleSpec,
    NoInverse,
)

# ---------------------------------------------------------------------------
# F_p[z] helpers (coefficient tuples, little-endian, no trailing zeros)
# ---------------------------------------------------------------------------


def pp_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def pp_add(a, b, p):
    n = max(len(a), len(b))
    return pp_trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def pp_neg(a, p):
    return tuple((-c) % p for c in a)


def pp_sub(a, b, p):
    return pp_add(a, pp_neg(b, p), p)


def pp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return pp_trim(out)


def pp_divmod(a, b, p):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and pp_trim(a):
        a = list(pp_trim(a))
        if len(a) < len(b):
            break
        c = (a[-1] * inv_lead) % p
        d = len(a) - len(b)
        q[d] = c
        for i, bi in enumerate(b):
            a[d + i] = (a[d + i] - c * bi) % p
    return pp_trim(q), pp_trim(a)


def pp_gcd(a, b, p):
    while b:
        a, b = b, pp_divmod(a, b, p)[1]
    if a:
        inv_lead = pow(a[-1], p - 2, p)
        a = tuple((c * inv_lead) % p for c in a)
    return a


def pp_deriv(a, p):
    return pp_trim([(i * a[i]) % p for i in range(1, len(a))])


def pp_pow(a, e, p):
    r = (1,)
    b = a
    while e:
        if e & 1:
            r = pp_mul(r, b, p)
        b = pp_mul(b, b, p)
        e >>= 1
    return r


# ---------------------------------------------------------------------------
# Finite fields F_{p^m}
# ---------------------------------------------------------------------------

# Frozen table of shipped moduli: (p, m) -> integer encoding of the non-leading
# coefficients c_0..c_{m-1} (value sum c_k p^k); the modulus is z^m + sum c_k z^k.
# Each entry is the first monic primitive polynomial in ascending encoding
# order, so the generator w (= z) always generates the multiplicative group.
_MODULUS_TABLE = {
    (2, 2): 3, (2, 3): 3, (2, 4): 3, (2, 5): 5, (2, 6): 3, (2, 7): 3,
    (2, 8): 29, (2, 9): 17, (2, 10): 9, (2, 11): 5, (2, 12): 83,
    (3, 2): 5, (3, 3): 7, (3, 4): 5, (3, 5): 7, (3, 6): 5, (3, 7): 16,
    (5, 2): 7, (5, 3): 17, (5, 4): 37, (5, 5): 22,
    (7, 2): 10, (7, 3): 23, (7, 4): 75,
    (11, 2): 18, (11, 3): 15, (13, 2): 15, (13, 3): 19,
    (17, 2): 20, (19, 2): 21, (23, 2): 30, (29, 2): 32, (31, 2): 43,
    (37, 2): 42, (41, 2): 53, (43, 2): 46, (47, 2): 60, (53, 2): 58,
    (59, 2): 61, (61, 2): 63,
}

_MAX_FIELD_SIZE = 1 << 16
_TABLE_ARITH_LIMIT = 256  # build full op tables for fields up to this size


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _search_modulus(p: int, m: int) -> int:
    """First primitive modulus encoding for F_{p^m}, same rule as the table."""
    q = p ** m
    fac = _prime_factors(q - 1)
    if m == 1:
        for c0 in range(1, p):
            g = (-c0) % p
            if g and all(pow(g, (q - 1) // r, p) != 1 for r in fac):
                return c0
        return 1  # p == 2: z + 1, generator 1
    one = (1,)
    for enc in range(q):
        digits, t = [], enc
        for _ in range(m):
            digits.append(t % p)
            t //= p
        if digits[0] == 0:
            continue
        f = tuple(digits) + (1,)
        x = (0, 1)
        if pp_divmod(pp_pow(x, q - 1, p), f, p)[1] != one:
            continue
        if all(pp_divmod(pp_pow(x, (q - 1) // r, p), f, p)[1] != one for r in fac):
            return enc
    raise IncompatibleSpec(f"no primitive modulus found for F_{p}^{m}")


class FiniteField:
    """F_{p^m} with elements encoded as base-p integer indices."""

    _cache: dict[tuple[int, int], "FiniteField"] = {}

    def __init__(self, p: int, m: int):
        if not is_prime(p):
            raise IncompatibleSpec(f"{p} is not prime")
        if m < 1 or p ** m > _MAX_FIELD_SIZE:
            raise IncompatibleSpec(f"field size p^m={p}^{m} out of supported range")
        self.p = p
        self.m = m
        self.q = p ** m
        enc = _MODULUS_TABLE.get((p, m))
        if enc is None:
            enc = _search_modulus(p, m)
        digits, t = [], enc
        for _ in range(m):
            digits.append(t % p)
            t //= p
        self.modulus = tuple(digits) + (1,)
        self.commutative = True
        self.char = p
        self._frob_cache: dict[int, list[int]] = {}
        self._log_tab: list[int] | None = None
        if self.q <= _TABLE_ARITH_LIMIT:
            self._build_tables()
        else:
            self._mul_tab = None
            self._add_tab = None
            self._inv_tab = None

    # -- construction helpers

    def _build_tables(self):
        q, p = self.q, self.p
        self._add_tab = [[self._add_big(i, j) for j in range(q)] for i in range(q)]
        self._mul_tab = [[self._mul_big(i, j) for j in range(q)] for i in range(q)]
        inv = [0] * q
        for i in range(1, q):
            for j in range(1, q):
                if self._mul_tab[i][j] == 1:
                    inv[i] = j
                    break
        self._inv_tab = inv

    def digits(self, idx: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(idx % self.p)
            idx //= self.p
        return out

    def index(self, digits) -> int:
        v = 0
        for c in reversed(list(digits)):
            v = v * self.p + c % self.p
        return v

    # -- index-level arithmetic

    def _add_big(self, i, j):
        p = self.p
        di, dj = self.digits(i), self.digits(j)
        return self.index([(a + b) % p for a, b in zip(di, dj)])

    def _mul_big(self, i, j):
        prod = pp_mul(pp_trim(self.digits(i)), pp_trim(self.digits(j)), self.p)
        return self.index(list(pp_divmod(prod, self.modulus, self.p)[1]) + [0] * self.m)

    def _inv_big(self, i):
        a = pp_trim(self.digits(i))
        # extended euclid in F_p[z] against the modulus
        r0, r1 = self.modulus, a
        s0, s1 = (), (1,)
        while r1:
            qq, rr = pp_divmod(r0, r1, self.p)
            r0, r1 = r1, rr
            s0, s1 = s1, pp_sub(s0, pp_mul(qq, s1, self.p), self.p)
        inv_lead = pow(r0[-1], self.p - 2, self.p)
        s0 = pp_mul(s0, (inv_lead,), self.p)
        return self.index(list(s0) + [0] * self.m)

    def add_idx(self, i, j):
        if self.p == 2:
            return i ^ j
        if self._add_tab is not None:
            return self._add_tab[i][j]
        return self._add_big(i, j)

    def neg_idx(self, i):
        if self.p == 2:
            return i
        return self.index([(-c) % self.p for c in self.digits(i)])

    def mul_idx(self, i, j):
        if self._mul_tab is not None:
            return self._mul_tab[i][j]
        return self._mul_big(i, j)

    def inv_idx(self, i):
        if i == 0:
            raise DivisionByZero("inverse of zero field element")
        if self._inv_tab is not None:
            return self._inv_tab[i]
        return self._inv_big(i)

    def pow_idx(self, i, e):
        if e < 0:
            return self.pow_idx(self.inv_idx(i), -e)
        r, b = self.index([1] + [0] * (self.m - 1)), i
        while e:
            if e & 1:
                r = self.mul_idx(r, b)
            b = self.mul_idx(b, b)
            e >>= 1
        return r

    def log_idx(self, i: int) -> int | None:
        """Discrete log of a nonzero element base the generator (small fields)."""
        if self.q > _TABLE_ARITH_LIMIT or i == 0:
            return None
        if self._log_tab is None:
            tab = [0] * self.q
            g = self.gen.idx
            acc = self.one.idx
            for k in range(self.q - 1):
                tab[acc] = k
                acc = self.mul_idx(acc, g)
            self._log_tab = tab
        return self._log_tab[i]

    def frob_idx(self, i, jpow):
        """i -> i^(p^jpow) with jpow taken mod m."""
        jpow %= self.m
        if jpow == 0:
            return i
        tab = self._frob_cache.get(jpow)
        if tab is None and self.q <= _TABLE_ARITH_LIMIT:
            e = self.p ** jpow
            tab = [self.pow_idx(k, e) for k in range(self.q)]
            self._frob_cache[jpow] = tab
        if tab is not None:
            return tab[i]
        return self.pow_idx(i, self.p ** jpow)

    # -- ring interface

    @property
    def zero(self):
        return FFElem(self, 0)

    @property
    def one(self):
        return FFElem(self, self.index([1] + [0] * (self.m - 1)))

    @property
    def gen(self):
        """The canonical generator bound to the name ``w``."""
        if self.m == 1:
            return FFElem(self, (-self.modulus[0]) % self.p)
        return FFElem(self, self.index([0, 1] + [0] * (self.m - 2)))

    def from_int(self, n: int):
        return FFElem(self, self.index([n % self.p] + [0] * (self.m - 1)))

    def elem(self, idx: int):
        return FFElem(self, idx % self.q)

    def elements(self):
        return (FFElem(self, i) for i in range(self.q))

    def random_element(self, rng: random.Random):
        return FFElem(self, rng.randrange(self.q))

    @property
    def size(self):
        return self.q

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash(("FF", self.p, self.m))

    def __repr__(self):
        return f"GF({self.q})"


def finite_field(p: int, m: int) -> FiniteField:
    key = (p, m)
    ff = FiniteField._cache.get(key)
    if ff is None:
        ff = FiniteField(p, m)
        FiniteField._cache[key] = ff
    return ff


class FFElem:
    __slots__ = ("field", "idx")

    def __init__(self, field: FiniteField, idx: int):
        self.field = field
        self.idx = idx

    @property
    def ring(self):
        return self.field

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field is not self.field and other.field != self.field:
                raise CtxMismatch("elements from different finite fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.add_idx(self.idx, o.idx))

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.field, self.field.neg_idx(self.idx))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElem(self.field, self.field.mul_idx(self.idx, o.idx))

    __rmul__ = __mul__

    def inv(self):
        return FFElem(self.field, self.field.inv_idx(self.idx))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return FFElem(self.field, self.field.pow_idx(self.field.inv_idx(self.idx), -e))
        return FFElem(self.field, self.field.pow_idx(self.idx, e))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return isinstance(other, FFElem) and self.field == other.field and self.idx == other.idx

    def __hash__(self):
        return hash((self.field, self.idx))

    def __bool__(self):
        return self.idx != 0

    def __str__(self):
        # canonical form: prime-field values as plain integers, everything
        # else as a power of the generator (small fields), vector form beyond
        f = self.field
        if f.m == 1 or self.idx < f.p:
            return str(self.idx)
        k = f.log_idx(self.idx)
        if k is not None:
            return "w" if k == 1 else f"w^{k}"
        digits = f.digits(self.idx)
        terms = []
        for k in range(f.m - 1, -1, -1):
            c = digits[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append("w" if k == 1 else f"w^{k}")
            else:
                terms.append(f"{c}*w" if k == 1 else f"{c}*w^{k}")
        return "+".join(terms)

    def __repr__(self):
        return f"{self.field!r}({self})"


# ---------------------------------------------------------------------------
# Rational function fields F_p(t)
# ---------------------------------------------------------------------------


class RationalFunctionField:
    """F_p(t): reduced fractions of F_p[t] with monic denominator."""

    _cache: dict[tuple[int, str], "RationalFunctionField"] = {}

    def __init__(self, p: int, var: str = "t"):
        if not is_prime(p):
            raise IncompatibleSpec(f"{p} is not prime")
        self.p = p
        self.var = var
        self.commutative = True
        self.char = p
        self.size = None

    @property
    def zero(self):
        return FuncFieldElem(self, (), (1,))

    @property
    def one(self):
        return FuncFieldElem(self, (1,), (1,))

    @property
    def gen(self):
        return FuncFieldElem(self, (0, 1), (1,))

    def from_int(self, n: int):
        return FuncFieldElem(self, pp_trim([n % self.p]), (1,))

    def make(self, num, den=(1,)):
        return FuncFieldElem._reduced(self, tuple(num), tuple(den))

    def random_element(self, rng: random.Random, max_deg: int = 2):
        num = [rng.randrange(self.p) for _ in range(rng.randint(1, max_deg + 1))]
        den = []
        while not pp_trim(den):
            den = [rng.randrange(self.p) for _ in range(rng.randint(1, max_deg + 1))]
        return self.make(num, den)

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and (self.p, self.var) == (other.p, other.var)

    def __hash__(self):
        return hash(("RF", self.p, self.var))

    def __repr__(self):
        return f"FF({self.p},{self.var})"


def func_field(p: int, var: str = "t") -> RationalFunctionField:
    key = (p, var)
    f = RationalFunctionField._cache.get(key)
    if f is None:
        f = RationalFunctionField(p, var)
        RationalFunctionField._cache[key] = f
    return f


class FuncFieldElem:
    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den

    @classmethod
    def _reduced(cls, field, num, den):
        p = field.p
        num, den = pp_trim(num), pp_trim(den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return cls(field, (), (1,))
        g = pp_gcd(num, den, p)
        if g != (1,):
            num = pp_divmod(num, g, p)[0]
            den = pp_divmod(den, g, p)[0]
        if den[-1] != 1:
            lead_inv = pow(den[-1], p - 2, p)
            num = pp_mul(num, (lead_inv,), p)
            den = pp_mul(den, (lead_inv,), p)
        return cls(field, num, den)

    @property
    def ring(self):
        return self.field

    def _coerce(self, other):
        if isinstance(other, FuncFieldElem):
            if other.field != self.field:
                raise CtxMismatch("elements from different function fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        num = pp_add(pp_mul(self.num, o.den, p), pp_mul(o.num, self.den, p), p)
        return FuncFieldElem._reduced(self.field, num, pp_mul(self.den, o.den, p))

    __radd__ = __add__

    def __neg__(self):
        return FuncFieldElem(self.field, pp_neg(self.num, self.field.p), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FuncFieldElem._reduced(
            self.field, pp_mul(self.num, o.num, p), pp_mul(self.den, o.den, p)
        )

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise DivisionByZero("inverse of zero rational function")
        return FuncFieldElem._reduced(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        p = self.field.p
        return FuncFieldElem._reduced(self.field, pp_pow(self.num, e, p), pp_pow(self.den, e, p))

    def deriv(self):
        """Formal d/dt via the quotient rule, returned reduced."""
        p = self.field.p
        num = pp_sub(
            pp_mul(pp_deriv(self.num, p), self.den, p),
            pp_mul(self.num, pp_deriv(self.den, p), p),
            p,
        )
        return FuncFieldElem._reduced(self.field, num, pp_mul(self.den, self.den, p))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        return (
            isinstance(other, FuncFieldElem)
            and self.field == other.field
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.field, self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def _poly_str(self, c):
        var = self.field.var
        terms = []
        for k in range(len(c) - 1, -1, -1):
            a = c[k]
            if a == 0:
                continue
            if k == 0:
                terms.append(str(a))
            elif a == 1:
                terms.append(var if k == 1 else f"{var}^{k}")
            else:
                terms.append(f"{a}*{var}" if k == 1 else f"{a}*{var}^{k}")
        return "+".join(terms) if terms else "0"

    def __str__(self):
        if not self.num:
            return "0"
        ns = self._poly_str(self.num)
        if self.den == (1,):
            return ns
        ds = self._poly_str(self.den)
        if len([c for c in self.num if c]) > 1:
            ns = f"({ns})"
        if len([c for c in self.den if c]) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"{self.field!r}({self})"


# ---------------------------------------------------------------------------
# Gaussian rationals Q(i)
# ---------------------------------------------------------------------------


class GaussianRationalField:
    commutative = True
    char = 0
    size = None

    @property
    def zero(self):
        return GaussianRational(0, 0)

    @property
    def one(self):
        return GaussianRational(1, 0)

    @property
    def i(self):
        return GaussianRational(0, 1)

    def from_int(self, n: int):
        return GaussianRational(n, 0)

    def random_element(self, rng: random.Random):
        f = lambda: Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        return GaussianRational(f(), f())

    def __eq__(self, other):
        return isinstance(other, GaussianRationalField)

    def __hash__(self):
        return hash("gauss")

    def __repr__(self):
        return "Q(i)"


GAUSS = GaussianRationalField()


def _frac_str(fr: Fraction, with_parens: bool = False) -> str:
    s = str(fr)
    if with_parens and fr.denominator != 1:
        return f"({s})"
    return s


class GaussianRational:
    __slots__ = ("re", "im")
    field = GAUSS

    def __init__(self, re, im):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @property
    def ring(self):
        return GAUSS

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def inv(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        r = GaussianRational(1, 0)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, GaussianRational) else other
        return isinstance(o, GaussianRational) and self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(("gauss", self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __str__(self):
        return _format_components([(self.re, ""), (self.im, "i")])

    def __repr__(self):
        return f"Q(i)({self})"


def _format_components(parts) -> str:
    """Join (Fraction, symbol) components into the canonical sum form."""
    out = []
    for coef, sym in parts:
        if coef == 0:
            continue
        sign = "-" if coef < 0 else "+"
        mag = -coef if coef < 0 else coef
        if not sym:
            body = _frac_str(mag)
        elif mag == 1:
            body = sym
        else:
            body = f"{_frac_str(mag, with_parens=True)}*{sym}"
        out.append((sign, body))
    if not out:
        return "0"
    first_sign, first_body = out[0]
    s = ("-" if first_sign == "-" else "") + first_body
    for sign, body in out[1:]:
        s += sign + body
    return s


# ---------------------------------------------------------------------------
# Rational quaternions
# ---------------------------------------------------------------------------


class RationalQuaternionRing:
    commutative = False
    char = 0
    size = None

    @property
    def zero(self):
        return Quaternion(0, 0, 0, 0)

    @property
    def one(self):
        return Quaternion(1, 0, 0, 0)

    @property
    def i(self):
        return Quaternion(0, 1, 0, 0)

    @property
    def j(self):
        return Quaternion(0, 0, 1, 0)

    @property
    def k(self):
        return Quaternion(0, 0, 0, 1)

    def from_int(self, n: int):
        return Quaternion(n, 0, 0, 0)

    def random_element(self, rng: random.Random):
        f = lambda: Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        return Quaternion(f(), f(), f(), f())

    def __eq__(self, other):
        return isinstance(other, RationalQuaternionRing)

    def __hash__(self):
        return hash("quat")

    def __repr__(self):
        return "H(Q)"


QUAT = RationalQuaternionRing()


class Quaternion:
    __slots__ = ("a", "b", "c", "d")
    field = QUAT

    def __init__(self, a, b, c, d):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.d = Fraction(d)

    @property
    def ring(self):
        return QUAT

    def _coerce(self, other):
        if isinstance(other, Quaternion):
            return other
        if isinstance(other, (int, Fraction)):
            return Quaternion(other, 0, 0, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def conjugate(self):
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def reduced_norm(self) -> Fraction:
        return self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2

    def inv(self):
        n = self.reduced_norm()
        if n == 0:
            raise DivisionByZero("inverse of zero quaternion")
        cj = self.conjugate()
        return Quaternion(cj.a / n, cj.b / n, cj.c / n, cj.d / n)

    def __truediv__(self, other):
        # right division: self * other^-1
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        r = Quaternion(1, 0, 0, 0)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Quaternion) else other
        return (
            isinstance(o, Quaternion)
            and (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)
        )

    def __hash__(self):
        return hash(("quat", self.a, self.b, self.c, self.d))

    def __bool__(self):
        return any((self.a, self.b, self.c, self.d))

    def __str__(self):
        return _format_components(
            [(self.a, ""), (self.b, "i"), (self.c, "j"), (self.d, "k")]
        )

    def __repr__(self):
        return f"H(Q)({self})"


Elem = Union[FFElem, FuncFieldElem, GaussianRational, Quaternion]
Ring = Union[FiniteField, RationalFunctionField, GaussianRationalField, RationalQuaternionRing]


# ---------------------------------------------------------------------------
# Sigma / delta specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Frobenius:
    power: int = 1


@dataclass(frozen=True)
class ComplexConj:
    pass


@dataclass(frozen=True)
class Inner:
    u: object  # nonzero element; sigma(a) = u a u^-1


SigmaSpec = Union[Identity, Frobenius, ComplexConj, Inner]


@dataclass(frozen=True)
class ZeroDelta:
    pass


@dataclass(frozen=True)
class InnerL:
    beta: object  # delta(a) = sigma(a) beta - beta a


@dataclass(frozen=True)
class FormalDeriv:
    pass


DeltaSpec = Union[ZeroDelta, InnerL, FormalDeriv]


class RingCtx:
    """A division ring plus its (sigma, delta) pair.

    Immutable after construction; every polynomial and matrix in this package
    references exactly one context, and mixed-context operations are rejected.
    """

    __slots__ = ("ring", "sigma_spec", "delta_spec", "checked")

    def __init__(self, ring, sigma_spec, delta_spec, checked):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "sigma_spec", sigma_spec)
        object.__setattr__(self, "delta_spec", delta_spec)
        object.__setattr__(self, "checked", checked)

    def __setattr__(self, *a):
        raise AttributeError("RingCtx is immutable")

    # -- capabilities

    @property
    def has_sigma_inverse(self) -> bool:
        s = self.sigma_spec
        if isinstance(s, Frobenius):
            return isinstance(self.ring, FiniteField)
        return True

    @property
    def is_delta_zero(self) -> bool:
        return isinstance(self.delta_spec, ZeroDelta)

    # -- map application

    def sigma(self, a):
        s = self.sigma_spec
        if isinstance(s, Identity):
            return a
        if isinstance(s, Frobenius):
            if isinstance(self.ring, FiniteField):
                return FFElem(self.ring, self.ring.frob_idx(a.idx, s.power))
            return a ** (self.ring.p ** s.power)
        if isinstance(s, ComplexConj):
            return a.conjugate()
        return s.u * a * s.u.inv()

    def sigma_inv(self, a):
        s = self.sigma_spec
        if isinstance(s, Identity):
            return a
        if isinstance(s, Frobenius):
            if isinstance(self.ring, FiniteField):
                return FFElem(self.ring, self.ring.frob_idx(a.idx, -s.power))
            raise NoInverse("Frobenius on a rational function field is not surjective")
        if isinstance(s, ComplexConj):
            return a.conjugate()
        return s.u.inv() * a * s.u

    def sigma_pow(self, a, k: int):
        """Apply sigma k times; negative k uses the inverse."""
        if k == 0:
            return a
        s = self.sigma_spec
        if isinstance(s, Identity):
            return a
        if isinstance(s, Frobenius) and isinstance(self.ring, FiniteField):
            return FFElem(self.ring, self.ring.frob_idx(a.idx, s.power * k))
        if k < 0 and not self.has_sigma_inverse:
            raise NoInverse("sigma is not an automorphism here")
        step = self.sigma if k > 0 else self.sigma_inv
        for _ in range(abs(k)):
            a = step(a)
        return a

    def delta(self, a):
        d = self.delta_spec
        if isinstance(d, ZeroDelta):
            return self.ring.zero
        if isinstance(d, InnerL):
            return self.sigma(a) * d.beta - d.beta * a
        return a.deriv()

    # -- plumbing

    @property
    def zero(self):
        return self.ring.zero

    @property
    def one(self):
        return self.ring.one

    def from_int(self, n: int):
        return self.ring.from_int(n)

    def __eq__(self, other):
        return (
            isinstance(other, RingCtx)
            and self.ring == other.ring
            and self.sigma_spec == other.sigma_spec
            and self.delta_spec == other.delta_spec
        )

    def __hash__(self):
        return hash((self.ring, self.sigma_spec, self.delta_spec))

    def __repr__(self):
        return f"RingCtx({self.ring!r}, {self.sigma_spec}, {self.delta_spec})"


def _check_applicable(ring, sigma_spec, delta_spec):
    if isinstance(sigma_spec, Frobenius):
        if not isinstance(ring, (FiniteField, RationalFunctionField)):
            raise IncompatibleSpec("Frobenius needs positive characteristic")
        if sigma_spec.power < 0:
            raise IncompatibleSpec("Frobenius power must be non-negative")
    elif isinstance(sigma_spec, ComplexConj):
        if not isinstance(ring, GaussianRationalField):
            raise IncompatibleSpec("conjugation sigma only applies to Q(i)")
    elif isinstance(sigma_spec, Inner):
        u = sigma_spec.u
        if getattr(u, "ring", None) != ring:
            raise IncompatibleSpec("inner sigma element from the wrong ring")
        if not u:
            raise IncompatibleSpec("inner sigma needs a nonzero element")
    elif not isinstance(sigma_spec, Identity):
        raise IncompatibleSpec(f"unknown sigma spec {sigma_spec!r}")

    if isinstance(delta_spec, FormalDeriv):
        if not isinstance(ring, RationalFunctionField):
            raise IncompatibleSpec("d/dt only applies to rational function fields")
    elif isinstance(delta_spec, InnerL):
        if getattr(delta_spec.beta, "ring", None) != ring:
            raise IncompatibleSpec("inner delta element from the wrong ring")
    elif not isinstance(delta_spec, ZeroDelta):
        raise IncompatibleSpec(f"unknown delta spec {delta_spec!r}")


def _sample_elements(ring, seed: int):
    """Deterministic validation sample: whole ring when small, else a battery
    of canonical elements topped up with seeded pseudo-random ones."""
    if isinstance(ring, FiniteField) and ring.q <= 64:
        return list(ring.elements()), True
    battery = [ring.zero, ring.one, -ring.one]
    if isinstance(ring, FiniteField):
        battery += [ring.gen, ring.gen + ring.one]
    elif isinstance(ring, RationalFunctionField):
        t = ring.gen
        battery += [t, t + ring.one, t.inv(), t * t, (t * t + ring.one) / t]
    elif isinstance(ring, GaussianRationalField):
        battery += [ring.i, ring.one + ring.i, GaussianRational(Fraction(3, 2), 1)]
    else:
        battery += [ring.i, ring.j, ring.k, ring.i + ring.j - ring.one]
    rng = random.Random(seed)
    sample = list(battery)
    while len(sample) < 24:
        sample.append(ring.random_element(rng))
    return sample, False


def _validate_ctx(ctx: RingCtx, seed: int):
    ring = ctx.ring
    sample, exhaustive = _sample_elements(ring, seed)
    one = ring.one

    if ctx.sigma(one) != one:
        raise AxiomViolation("sigma", (one,), "sigma(1) != 1")
    dz = ctx.delta(one)
    if dz:
        raise AxiomViolation("delta", (one,), f"delta(1) = {dz} != 0")

    # injectivity on the sample
    seen = {}
    for a in sample:
        img = ctx.sigma(a)
        if img in seen and seen[img] != a:
            raise AxiomViolation("sigma", (seen[img], a), "sigma not injective")
        seen[img] = a

    if exhaustive:
        pairs = list(itertools.product(sample, repeat=2))
    else:
        rng = random.Random(seed ^ 0x5EED)
        pairs = list(itertools.product(sample[:8], repeat=2))
        while len(pairs) < 200:
            pairs.append((ring.random_element(rng), ring.random_element(rng)))

    for a, b in pairs:
        if ctx.sigma(a * b) != ctx.sigma(a) * ctx.sigma(b):
            raise AxiomViolation("sigma", (a, b), "sigma(ab) != sigma(a)sigma(b)")
        if ctx.sigma(a + b) != ctx.sigma(a) + ctx.sigma(b):
            raise AxiomViolation("sigma", (a, b), "sigma(a+b) != sigma(a)+sigma(b)")
        lhs = ctx.delta(a * b)
        rhs = ctx.sigma(a) * ctx.delta(b) + ctx.delta(a) * b
        if lhs != rhs:
            raise AxiomViolation(
                "delta", (a, b), f"delta(ab)={lhs} but sigma(a)delta(b)+delta(a)b={rhs}"
            )


def make_ctx(ring, sigma_spec, delta_spec, unchecked: bool = False, seed: int = 0) -> RingCtx:
    """Build a validated RingCtx.

    ``unchecked=True`` skips axiom validation so that formally-defined pairs
    that violate the twisted Leibniz rule can still be driven through the
    matrix constructions.
    """
    _check_applicable(ring, sigma_spec, delta_spec)
    ctx = RingCtx(ring, sigma_spec, delta_spec, checked=not unchecked)
    if not unchecked:
        _validate_ctx(ctx, seed)
    return ctx
