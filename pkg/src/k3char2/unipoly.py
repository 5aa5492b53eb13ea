"""Univariate polynomials over F4 in the parameter lambda.

A polynomial ``sum c_k lambda^k`` is stored as two F2[lambda] bitmasks
``(lo, hi)`` with ``c_k = lo_k + hi_k * omega``.  That is still a dense
representation (one bit per degree and plane) but lets addition be two XORs
and multiplication three carry-less products (Karatsuba over F4).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DivisionByZero, ZeroInput
from .gf import F4, GF2m, GFElement


# --------------------------------------------------------------------------
# F2[x] on ints
# --------------------------------------------------------------------------
def clmul(a: int, b: int) -> int:
    """Carry-less product of two F2[x] bitmasks."""
    if a.bit_count() < b.bit_count():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def f2_divmod(a: int, b: int) -> tuple[int, int]:
    if not b:
        raise DivisionByZero("F2[x] division by zero")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        s = a.bit_length() - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def f2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, f2_divmod(a, b)[1]
    return a


def f2_square(a: int) -> int:
    """Spread bits: the Frobenius image of ``a``."""
    r = 0
    k = 0
    while a:
        if a & 1:
            r |= 1 << (2 * k)
        a >>= 1
        k += 1
    return r


def f2_unsquare(a: int) -> int:
    """Inverse of :func:`f2_square`; ``a`` must have only even exponents."""
    r = 0
    k = 0
    while a:
        if a & 1:
            r |= 1 << k
        if a & 2:
            raise ValueError("not a square")
        a >>= 2
        k += 1
    return r


# --------------------------------------------------------------------------
# F4 scalars acting on (lo, hi) planes
# --------------------------------------------------------------------------
def _scale(c: int, lo: int, hi: int) -> tuple[int, int]:
    if c == 1:
        return lo, hi
    if c == 2:  # omega * (lo + omega hi) = hi + omega (lo + hi)
        return hi, lo ^ hi
    if c == 3:  # omega_bar * (lo + omega hi) = (lo + hi) + omega lo
        return lo ^ hi, lo
    return 0, 0


_F4_INV = (0, 1, 3, 2)
_F4_MUL = [[F4.mul(a, b) for b in range(4)] for a in range(4)]


class UniPoly:
    """Element of F4[lambda].  Immutable."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: int = 0, hi: int = 0) -> None:
        self.lo = lo
        self.hi = hi

    # -- construction ---------------------------------------------------
    @classmethod
    def const(cls, c: int | GFElement) -> "UniPoly":
        if isinstance(c, GFElement):
            c = c.value
        return cls(c & 1, (c >> 1) & 1)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int | GFElement]) -> "UniPoly":
        lo = hi = 0
        for k, c in enumerate(coeffs):
            if isinstance(c, GFElement):
                c = c.value
            if c & 1:
                lo |= 1 << k
            if c & 2:
                hi |= 1 << k
        return cls(lo, hi)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "UniPoly":
        return cls((c & 1) << k, ((c >> 1) & 1) << k)

    # -- inspection -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return max(self.lo.bit_length(), self.hi.bit_length()) - 1

    def coeff(self, k: int) -> int:
        return ((self.lo >> k) & 1) | (((self.hi >> k) & 1) << 1)

    @property
    def coeffs(self) -> list[int]:
        return [self.coeff(k) for k in range(self.degree + 1)]

    @property
    def lc(self) -> int:
        d = self.degree
        return self.coeff(d) if d >= 0 else 0

    def is_zero(self) -> bool:
        return not (self.lo or self.hi)

    def __bool__(self) -> bool:
        return bool(self.lo or self.hi)

    def is_one(self) -> bool:
        return self.lo == 1 and self.hi == 0

    def is_constant(self) -> bool:
        return self.degree <= 0

    def is_f2(self) -> bool:
        return self.hi == 0

    # -- ring operations --------------------------------------------------
    def __add__(self, other: "UniPoly") -> "UniPoly":
        return UniPoly(self.lo ^ other.lo, self.hi ^ other.hi)

    __sub__ = __add__

    def __neg__(self) -> "UniPoly":
        return self

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.lo, self.hi
        c, d = other.lo, other.hi
        if not b and not d:
            return UniPoly(clmul(a, c), 0)
        p1 = clmul(a, c)
        p2 = clmul(b, d)
        p3 = clmul(a ^ b, c ^ d)
        return UniPoly(p1 ^ p2, p3 ^ p1)

    def scale(self, c: int) -> "UniPoly":
        return UniPoly(*_scale(c, self.lo, self.hi))

    def shift(self, k: int) -> "UniPoly":
        return UniPoly(self.lo << k, self.hi << k)

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.square()
        return result

    def square(self) -> "UniPoly":
        # (lo + w hi)^2 = lo^2 + w^2 hi^2 = (lo^2 + hi^2) + w hi^2
        s_lo, s_hi = f2_square(self.lo), f2_square(self.hi)
        return UniPoly(s_lo ^ s_hi, s_hi)

    def sqrt(self) -> "UniPoly":
        """Inverse Frobenius; requires only even exponents."""
        # c = lo + w hi with c = s^2, s = u + w v: lo = u^2 + v^2, hi = v^2
        v = f2_unsquare(self.hi)
        u = f2_unsquare(self.lo ^ self.hi)
        return UniPoly(u, v)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        dd = other.degree
        inv = _F4_INV[other.lc]
        qlo = qhi = 0
        rlo, rhi = self.lo, self.hi
        olo, ohi = other.lo, other.hi
        while True:
            dr = max(rlo.bit_length(), rhi.bit_length()) - 1
            if dr < dd:
                break
            s = dr - dd
            c = ((rlo >> dr) & 1) | (((rhi >> dr) & 1) << 1)
            c = _F4_MUL[c][inv]
            qlo |= (c & 1) << s
            qhi |= ((c >> 1) & 1) << s
            slo, shi = _scale(c, olo, ohi)
            rlo ^= slo << s
            rhi ^= shi << s
        return UniPoly(qlo, qhi), UniPoly(rlo, rhi)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exquo(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "UniPoly":
        c = self.lc
        if c in (0, 1):
            return self
        return self.scale(_F4_INV[c])

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        if not a.hi and not b.hi:
            return UniPoly(f2_gcd(a.lo, b.lo), 0)
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def derivative(self) -> "UniPoly":
        odd = 0xAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA
        mask = odd
        while mask.bit_length() < max(self.lo.bit_length(), self.hi.bit_length()):
            mask = (mask << 256) | odd
        return UniPoly((self.lo & mask) >> 1, (self.hi & mask) >> 1)

    # -- evaluation -----------------------------------------------------
    def eval_raw(self, fld: GF2m, alpha: int) -> int:
        """Value at ``alpha`` (raw int of ``fld``, which must contain F4)."""
        acc = 0
        w = fld.omega if self.hi else 0
        for k in range(self.degree, -1, -1):
            acc = fld.mul(acc, alpha)
            c = ((self.lo >> k) & 1) | (((self.hi >> k) & 1) << 1)
            if c:
                acc ^= 1 if c == 1 else (w if c == 2 else w ^ 1)
        return acc

    def __call__(self, alpha: GFElement) -> GFElement:
        return GFElement(alpha.field, self.eval_raw(alpha.field, alpha.value))

    def compose(self, other: "UniPoly") -> "UniPoly":
        """``self(other(lambda))``."""
        acc = ZERO
        for k in range(self.degree, -1, -1):
            acc = acc * other + UniPoly.const(self.coeff(k))
        return acc

    # -- protocol -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"UniPoly({format_unipoly(self)!r})"

    def __str__(self) -> str:
        return format_unipoly(self)

    def to_pairs(self) -> list[tuple[int, str]]:
        """(exponent, coefficient) pairs, coefficient as ``1``/``w``/``W``."""
        return [(k, F4_NAMES[c]) for k, c in enumerate(self.coeffs) if c]

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence]) -> "UniPoly":
        acc = ZERO
        for k, c in pairs:
            acc = acc + cls.monomial(int(k), F4_CODES[str(c)])
        return acc


F4_NAMES = {1: "1", 2: "w", 3: "W"}
F4_CODES = {"1": 1, "w": 2, "W": 3}

ZERO = UniPoly(0, 0)
ONE = UniPoly(1, 0)
LAM = UniPoly(2, 0)
W = UniPoly(0, 1)
WB = UniPoly(1, 1)


def format_unipoly(p: UniPoly, var: str = "L") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if not c:
            continue
        cs = F4_NAMES[c]
        if k == 0:
            terms.append(cs)
            continue
        mono = var if k == 1 else f"{var}^{k}"
        terms.append(mono if c == 1 else f"{cs}*{mono}")
    return "+".join(terms)


def poly_gcd_many(polys: Iterable[UniPoly]) -> UniPoly:
    g = ZERO
    for p in polys:
        if p:
            g = p.monic() if g.is_zero() else g.gcd(p)
            if g.is_one():
                break
    return g


def squarefree_part(f: UniPoly) -> UniPoly:
    """Product of the distinct irreducible factors of ``f`` (monic)."""
    if f.is_zero():
        raise ZeroInput("squarefree part of zero")
    if f.degree == 0:
        return ONE
    d = f.derivative()
    if d.is_zero():
        return squarefree_part(f.sqrt())
    g = f.gcd(d)
    u = f.exquo(g)
    w = g
    while True:
        c = w.gcd(u)
        if c.degree <= 0:
            break
        w = w.exquo(c)
    return (u * squarefree_part(w)).monic()


def resultant(f: UniPoly, g: UniPoly) -> int:
    """Res_lambda(f, g) as an F4 value (sign-free in characteristic 2)."""
    if f.is_zero() or g.is_zero():
        raise ZeroInput("resultant with a zero polynomial")
    res = 1
    a, b = f, g
    while True:
        m, n = a.degree, b.degree
        if n == 0:
            return _F4_MUL[res][_f4_pow(b.lc, m)]
        if m == 0:
            return _F4_MUL[res][_f4_pow(a.lc, n)]
        if m < n:
            a, b = b, a
            continue
        r = a % b
        if r.is_zero():
            return 0
        res = _F4_MUL[res][_f4_pow(b.lc, m - r.degree)]
        a, b = b, r


def _f4_pow(c: int, e: int) -> int:
    return F4.pow(c, e)
