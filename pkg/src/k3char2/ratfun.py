"""Rational functions in F4(lambda), kept reduced with a monic denominator."""

from __future__ import annotations

from .errors import DivisionByZero, Pole
from .gf import GFElement
from .unipoly import ONE, ZERO, UniPoly, format_unipoly


class RatFun:
    """``num / den`` with ``gcd(num, den) = 1`` and ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly = ONE, *, reduced: bool = False) -> None:
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        elif not reduced:
            g = num.gcd(den)
            if not g.is_one():
                num, den = num.exquo(g), den.exquo(g)
            c = den.lc
            if c != 1:
                inv = {2: 3, 3: 2}[c]
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: UniPoly) -> "RatFun":
        return cls(p, ONE, reduced=True)

    def __add__(self, other: "RatFun | UniPoly") -> "RatFun":
        other = _lift(other)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __sub__ = __add__
    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return self

    def __mul__(self, other: "RatFun | UniPoly") -> "RatFun":
        other = _lift(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.num.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other: "RatFun | UniPoly") -> "RatFun":
        return self * _lift(other).inverse()

    def __pow__(self, e: int) -> "RatFun":
        if e < 0:
            return self.inverse() ** (-e)
        return RatFun(self.num**e, self.den**e, reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def substitute(self, r: "RatFun") -> "RatFun":
        """``self(r(lambda))``."""
        return _subst_poly(self.num, r) / _subst_poly(self.den, r)

    def eval_raw(self, fld, alpha: int) -> int:
        d = self.den.eval_raw(fld, alpha)
        if not d:
            raise Pole(f"pole at {alpha:#x}")
        return fld.div(self.num.eval_raw(fld, alpha), d)

    def __call__(self, alpha: GFElement) -> GFElement:
        return GFElement(alpha.field, self.eval_raw(alpha.field, alpha.value))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            other = RatFun.from_poly(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.den.is_one():
            return format_unipoly(self.num)
        return f"({format_unipoly(self.num)})/({format_unipoly(self.den)})"

    def __repr__(self) -> str:
        return f"RatFun({str(self)!r})"


def _lift(x: "RatFun | UniPoly") -> RatFun:
    return x if isinstance(x, RatFun) else RatFun.from_poly(x)


def _subst_poly(p: UniPoly, r: RatFun) -> RatFun:
    # Homogenized Horner: p(a/b) = sum c_k a^k b^(n-k) / b^n.
    n = p.degree
    if n < 0:
        return RatFun(ZERO)
    a, b = r.num, r.den
    bpows = [ONE]
    for _ in range(n):
        bpows.append(bpows[-1] * b)
    acc = ZERO
    apow = ONE
    for k in range(0, n + 1):
        c = p.coeff(k)
        if c:
            acc = acc + (apow * bpows[n - k]).scale(c)
        apow = apow * a
    return RatFun(acc, bpows[n])


def ratfun_eval(r: RatFun, alpha: GFElement) -> GFElement:
    """Value of ``r`` at ``lambda = alpha``; raises :class:`Pole`."""
    return r(alpha)
