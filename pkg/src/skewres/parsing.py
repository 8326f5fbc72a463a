"""Recursive-descent parsers for elements, polynomials, matrices and ring specs.

One expression grammar serves both element and polynomial literals:

    expr  := ['-'] term (('+'|'-') term)*
    term  := power (('*'|'/') power)*
    power := atom ['^' number]
    atom  := number | name | '(' expr ')'

with precedence ``^`` > ``*``/``/`` > unary ``-`` > ``+``/``-``.  Names are
ring-specific (``w`` for finite fields, the variable for function fields,
``i``/``j``/``k`` for the division rings over Q) plus ``x`` in polynomial
mode, where products are evaluated in the skew ring (so ``x*a`` expands via
the twist).  Division is only defined by ring constants.  Errors carry exact
byte positions.
"""

from __future__ import annotations

import json

from .dlinalg import DMatrix
from .errors import ParseError
from .rings import (
    ComplexConj,
    FiniteField,
    FormalDeriv,
    Frobenius,
    GaussianRationalField,
    Identity,
    Inner,
    InnerL,
    RationalFunctionField,
    RationalQuaternionRing,
    RingCtx,
    GAUSS,
    QUAT,
    ZeroDelta,
    finite_field,
    func_field,
    is_prime,
    make_ctx,
)
from .skewpoly import SkewPoly

_MAX_EXPONENT = 512


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text: str):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^(),;":
            toks.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(_Token("end", "", n))
    return toks


class _ElemDomain:
    """Combine values as ring elements."""

    def __init__(self, ring):
        self.ring = ring
        self.symbols = _ring_symbols(ring)

    def from_int(self, n):
        return self.ring.from_int(n)

    def symbol(self, name):
        return self.symbols.get(name)

    def neg(self, a):
        return -a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos):
        if not b:
            raise ParseError("division by zero", pos)
        return a * b.inv()

    def pow(self, a, e, pos):
        if e < 0:
            raise ParseError("negative exponent", pos)
        return a ** e


class _PolyDomain:
    """Combine values as skew polynomials over a context."""

    def __init__(self, ctx: RingCtx):
        self.ctx = ctx
        self.symbols = {
            name: SkewPoly(ctx, [val]) for name, val in _ring_symbols(ctx.ring).items()
        }
        self.symbols["x"] = SkewPoly.gen(ctx)

    def from_int(self, n):
        return SkewPoly(self.ctx, [self.ctx.from_int(n)])

    def symbol(self, name):
        return self.symbols.get(name)

    def neg(self, a):
        return -a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos):
        if b.is_zero:
            raise ParseError("division by zero", pos)
        if b.degree > 0:
            raise ParseError("division by a non-constant polynomial", pos)
        return a * SkewPoly(self.ctx, [b.coeff(0).inv()])

    def pow(self, a, e, pos):
        if e < 0:
            raise ParseError("negative exponent", pos)
        return a ** e


def _ring_symbols(ring):
    if isinstance(ring, FiniteField):
        return {"w": ring.gen}
    if isinstance(ring, RationalFunctionField):
        return {ring.var: ring.gen}
    if isinstance(ring, GaussianRationalField):
        return {"i": ring.i}
    if isinstance(ring, RationalQuaternionRing):
        return {"i": ring.i, "j": ring.j, "k": ring.k}
    raise ParseError(f"unknown ring {ring!r}", 0)


class _ExprParser:
    def __init__(self, text: str, domain):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0
        self.domain = domain

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def advance(self) -> _Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str) -> _Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos, kind)
        return self.advance()

    def parse_full(self):
        v = self.parse_expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"trailing input {t.text!r}", t.pos, "end of input")
        return v

    def parse_expr(self):
        d = self.domain
        if self.peek().kind == "-":
            self.advance()
            v = d.neg(self.parse_term())
        else:
            v = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            rhs = self.parse_term()
            v = d.add(v, rhs) if op.kind == "+" else d.sub(v, rhs)
        return v

    def parse_term(self):
        d = self.domain
        v = self.parse_power()
        while self.peek().kind in ("*", "/"):
            op = self.advance()
            rhs = self.parse_power()
            v = d.mul(v, rhs) if op.kind == "*" else d.div(v, rhs, op.pos)
        return v

    def parse_power(self):
        v = self.parse_atom()
        if self.peek().kind == "^":
            op = self.advance()
            t = self.expect("num")
            e = int(t.text)
            if e > _MAX_EXPONENT:
                raise ParseError(f"exponent {e} too large", t.pos)
            v = self.domain.pow(v, e, op.pos)
        return v

    def parse_atom(self):
        t = self.peek()
        if t.kind == "num":
            self.advance()
            return self.domain.from_int(int(t.text))
        if t.kind == "name":
            self.advance()
            v = self.domain.symbol(t.text)
            if v is None:
                raise ParseError(f"unknown symbol {t.text!r}", t.pos)
            return v
        if t.kind == "(":
            self.advance()
            v = self.parse_expr()
            self.expect(")")
            return v
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos, "a value")


def parse_elem(ring, text: str):
    """Parse an element literal in the given ring (RingCtx also accepted)."""
    if isinstance(ring, RingCtx):
        ring = ring.ring
    return _ExprParser(text, _ElemDomain(ring)).parse_full()


def parse_poly(ctx: RingCtx, text: str) -> SkewPoly:
    """Parse a polynomial literal; the result is in left-coefficient form."""
    return _ExprParser(text, _PolyDomain(ctx)).parse_full()


def parse_matrix(ctx: RingCtx, text: str) -> DMatrix:
    """Rows separated by ';', entries by ','; or a JSON array of arrays."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"bad JSON matrix: {e.msg}", e.pos) from None
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ParseError("JSON matrix must be an array of arrays", 0)
        rows = [[parse_elem(ctx.ring, str(e)) for e in row] for row in data]
        return DMatrix(ctx, rows)
    parser = _ExprParser(text, _ElemDomain(ctx.ring))
    rows, current = [], []
    while True:
        current.append(parser.parse_expr())
        t = parser.peek()
        if t.kind == ",":
            parser.advance()
            continue
        if t.kind == ";":
            parser.advance()
            rows.append(current)
            current = []
            continue
        if t.kind == "end":
            rows.append(current)
            break
        raise ParseError(f"unexpected {t.text!r}", t.pos, "',' ';' or end of input")
    return DMatrix(ctx, rows)


# ---------------------------------------------------------------------------
# Ring / sigma / delta specs
# ---------------------------------------------------------------------------


def _split_prime_power(q: int, pos: int):
    if q < 2:
        raise ParseError(f"field size {q} is not a prime power", pos)
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    m = 0
    t = q
    while t % p == 0:
        t //= p
        m += 1
    if t != 1:
        raise ParseError(f"field size {q} is not a prime power", pos)
    return p, m


def parse_ring_kind(text: str):
    """gf(q) | gf(p^m) | ff(p,var) | gauss | quat"""
    toks = _tokenize(text)
    head = toks[0]
    if head.kind != "name":
        raise ParseError("expected a ring spec", head.pos, "gf/ff/gauss/quat")
    name = head.text.lower()
    if name == "gauss":
        if toks[1].kind != "end":
            raise ParseError("trailing input after 'gauss'", toks[1].pos)
        return GAUSS
    if name == "quat":
        if toks[1].kind != "end":
            raise ParseError("trailing input after 'quat'", toks[1].pos)
        return QUAT
    if name == "gf":
        if toks[1].kind != "(" or toks[2].kind != "num":
            raise ParseError("expected gf(<q>) or gf(<p>^<m>)", head.pos)
        base = int(toks[2].text)
        if toks[3].kind == "^" and toks[4].kind == "num":
            if not is_prime(base):
                raise ParseError(f"{base} is not prime", toks[2].pos)
            p, m = base, int(toks[4].text)
            close = 5
        else:
            p, m = _split_prime_power(base, toks[2].pos)
            close = 3
        if toks[close].kind != ")" or toks[close + 1].kind != "end":
            raise ParseError("malformed gf(...) spec", toks[close].pos, ")")
        return finite_field(p, m)
    if name == "ff":
        if (
            toks[1].kind != "("
            or toks[2].kind != "num"
            or toks[3].kind != ","
            or toks[4].kind != "name"
            or toks[5].kind != ")"
            or toks[6].kind != "end"
        ):
            raise ParseError("expected ff(<p>,<var>)", head.pos)
        p = int(toks[2].text)
        if not is_prime(p):
            raise ParseError(f"{p} is not prime", toks[2].pos)
        return func_field(p, toks[4].text)
    raise ParseError(f"unknown ring {name!r}", head.pos, "gf/ff/gauss/quat")


def parse_sigma(ring, text: str):
    """id | frob | frob^j | conj | inner(<elem>)"""
    toks = _tokenize(text)
    head = toks[0]
    if head.kind != "name":
        raise ParseError("expected a sigma spec", head.pos, "id/frob/conj/inner")
    name = head.text.lower()
    if name == "id" and toks[1].kind == "end":
        return Identity()
    if name == "frob":
        if toks[1].kind == "end":
            return Frobenius(1)
        if toks[1].kind == "^" and toks[2].kind == "num" and toks[3].kind == "end":
            return Frobenius(int(toks[2].text))
        raise ParseError("expected frob or frob^<j>", toks[1].pos)
    if name == "conj" and toks[1].kind == "end":
        return ComplexConj()
    if name == "inner":
        return Inner(_parse_inner_arg(ring, text, head.pos))
    raise ParseError(f"unknown sigma {name!r}", head.pos, "id/frob/conj/inner")


def parse_delta(ring, text: str):
    """zero | inner(<elem>) | ddt"""
    toks = _tokenize(text)
    head = toks[0]
    if head.kind != "name":
        raise ParseError("expected a delta spec", head.pos, "zero/inner/ddt")
    name = head.text.lower()
    if name == "zero" and toks[1].kind == "end":
        return ZeroDelta()
    if name == "ddt" and toks[1].kind == "end":
        return FormalDeriv()
    if name == "inner":
        return InnerL(_parse_inner_arg(ring, text, head.pos))
    raise ParseError(f"unknown delta {name!r}", head.pos, "zero/inner/ddt")


def _parse_inner_arg(ring, text: str, pos: int):
    lp = text.find("(")
    rp = text.rfind(")")
    if lp < 0 or rp < lp or text[rp + 1 :].strip():
        raise ParseError("expected inner(<elem>)", pos, "(")
    return parse_elem(ring, text[lp + 1 : rp])


def parse_ctx(
    ring_text: str,
    sigma_text: str = "id",
    delta_text: str = "zero",
    unchecked: bool = False,
    seed: int = 0,
) -> RingCtx:
    ring = parse_ring_kind(ring_text)
    sigma = parse_sigma(ring, sigma_text)
    delta = parse_delta(ring, delta_text)
    return make_ctx(ring, sigma, delta, unchecked=unchecked, seed=seed)
