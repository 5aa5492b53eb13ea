"""Sparse multivariate polynomials over F4 with named variables.

Terms are kept in a ``dict`` from exponent tuples to F4 values (ints 1..3).
This one class serves three roles: ternary forms with a parameter
(variables ``L, X, Y, Z``), bivariate correspondence polynomials over F2
(``J, K``), and scratch space for gcd computations.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import BadInput, ZeroInput
from .gf import F4

_MUL = [[F4.mul(a, b) for b in range(4)] for a in range(4)]
_INV = (0, 1, 3, 2)
_SQRT = (0, 1, 3, 2)  # sqrt(w) = W because W^2 = w


class MPoly:
    """Polynomial in ``names`` over F4; immutable by convention."""

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[tuple, int] | None = None) -> None:
        self.names = tuple(names)
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    # -- construction ---------------------------------------------------
    @classmethod
    def const(cls, names: Sequence[str], c: int = 1) -> "MPoly":
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def var(cls, names: Sequence[str], name: str) -> "MPoly":
        e = [0] * len(names)
        e[list(names).index(name)] = 1
        return cls(names, {tuple(e): 1})

    def _new(self, terms: dict) -> "MPoly":
        p = MPoly.__new__(MPoly)
        p.names = self.names
        p.terms = terms
        return p

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> int:
        return self.terms.get((0,) * len(self.names), 0)

    def degree(self, i: int | str) -> int:
        i = self._idx(i)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self, i: int | str) -> int:
        i = self._idx(i)
        return min((e[i] for e in self.terms), default=0)

    def is_f2(self) -> bool:
        return all(c == 1 for c in self.terms.values())

    def _idx(self, i: int | str) -> int:
        return self.names.index(i) if isinstance(i, str) else i

    def leading(self) -> tuple[tuple, int]:
        e = max(self.terms)
        return e, self.terms[e]

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "MPoly") -> "MPoly":
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) ^ c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return self._new(t)

    __sub__ = __add__

    def __neg__(self) -> "MPoly":
        return self

    def __mul__(self, other: "MPoly | int") -> "MPoly":
        if isinstance(other, int):
            return self.scale(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) ^ _MUL[c1][c2]
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return self._new(t)

    def scale(self, c: int) -> "MPoly":
        if c == 1:
            return self
        if not c:
            return self._new({})
        return self._new({e: _MUL[v][c] for e, v in self.terms.items()})

    def mul_monomial(self, mono: tuple, c: int = 1) -> "MPoly":
        return self._new({tuple(a + b for a, b in zip(e, mono)): _MUL[v][c] for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "MPoly":
        result = MPoly.const(self.names)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def derivative(self, i: int | str) -> "MPoly":
        i = self._idx(i)
        t = {}
        for e, c in self.terms.items():
            if e[i] & 1:
                f = list(e)
                f[i] -= 1
                t[tuple(f)] = c
        return self._new(t)

    def sqrt(self) -> "MPoly":
        """Square root of a polynomial whose exponents are all even."""
        t = {}
        for e, c in self.terms.items():
            if any(x & 1 for x in e):
                raise ValueError("not a perfect square")
            t[tuple(x >> 1 for x in e)] = _SQRT[c]
        return self._new(t)

    def monic(self) -> "MPoly":
        if not self.terms:
            return self
        return self.scale(_INV[self.leading()[1]])

    def strip_monomial(self) -> "MPoly":
        """Divide by the largest monomial dividing every term."""
        if not self.terms:
            return self
        n = len(self.names)
        low = [min(e[i] for e in self.terms) for i in range(n)]
        if not any(low):
            return self
        return self._new({tuple(a - b for a, b in zip(e, low)): c for e, c in self.terms.items()})

    def divmod_exact(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Lex-order division; returns (quotient, remainder)."""
        if not other.terms:
            raise ZeroInput("division by the zero polynomial")
        le, lc = other.leading()
        inv = _INV[lc]
        r = dict(self.terms)
        q: dict = {}
        rem: dict = {}
        oterms = list(other.terms.items())
        while r:
            e = max(r)
            c = r.pop(e)
            if all(a >= b for a, b in zip(e, le)):
                m = tuple(a - b for a, b in zip(e, le))
                qc = _MUL[c][inv]
                q[m] = q.get(m, 0) ^ qc
                for oe, oc in oterms:
                    if oe == le:
                        continue
                    te = tuple(a + b for a, b in zip(oe, m))
                    v = r.get(te, 0) ^ _MUL[oc][qc]
                    if v:
                        r[te] = v
                    else:
                        r.pop(te, None)
            else:
                rem[e] = c
        return self._new({k: v for k, v in q.items() if v}), self._new(rem)

    def exquo(self, other: "MPoly") -> "MPoly":
        q, r = self.divmod_exact(other)
        if r:
            raise ArithmeticError("inexact multivariate division")
        return q

    def divides(self, other: "MPoly") -> bool:
        """True iff ``self`` divides ``other``."""
        return not other.divmod_exact(self)[1]

    # -- substitution ---------------------------------------------------
    def coeffs_in(self, i: int | str) -> dict[int, "MPoly"]:
        """Coefficients with respect to variable ``i`` (kept in the same ring)."""
        i = self._idx(i)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            f = list(e)
            d = f[i]
            f[i] = 0
            out.setdefault(d, {})[tuple(f)] = c
        return {d: self._new(t) for d, t in out.items()}

    def eval_raw(self, fld, values: Sequence[int]) -> int:
        """Evaluate at raw ``fld`` values, one per variable."""
        pows = [dict() for _ in values]
        acc = 0
        for e, c in self.terms.items():
            v = fld.from_f4(c) if c > 1 else 1
            for i, k in enumerate(e):
                if k:
                    p = pows[i].get(k)
                    if p is None:
                        p = fld.pow(values[i], k)
                        pows[i][k] = p
                    v = fld.mul(v, p)
                    if not v:
                        break
            acc ^= v
        return acc

    def rename(self, names: Sequence[str], mapping: Sequence[int] | None = None) -> "MPoly":
        """Move to another variable list; ``mapping[i]`` is the new index of var i."""
        n = len(names)
        if mapping is None:
            mapping = [list(names).index(x) for x in self.names]
        t = {}
        for e, c in self.terms.items():
            f = [0] * n
            for i, k in enumerate(e):
                if k:
                    f[mapping[i]] += k
            t[tuple(f)] = c
        out = MPoly.__new__(MPoly)
        out.names = tuple(names)
        out.terms = t
        return out

    # -- protocol -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.names, frozenset(self.terms.items())))

    def __iter__(self) -> Iterator[tuple[tuple, int]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def __repr__(self) -> str:
        return f"MPoly({format_mpoly(self)!r})"

    def __str__(self) -> str:
        return format_mpoly(self)


_COEF_NAMES = {1: "", 2: "w*", 3: "W*"}


def format_mpoly(p: MPoly, order: str = "lex") -> str:
    if not p.terms:
        return "0"
    if order == "grlex":
        keys = sorted(p.terms, key=lambda e: (sum(e), e), reverse=True)
    else:
        keys = sorted(p.terms, reverse=True)
    parts = []
    for e in keys:
        c = p.terms[e]
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(p.names, e) if k
        )
        if not mono:
            parts.append({1: "1", 2: "w", 3: "W"}[c])
        else:
            parts.append(_COEF_NAMES[c] + mono)
    return "+".join(parts)


# --------------------------------------------------------------------------
# gcd, radical
# --------------------------------------------------------------------------
def _main_var(f: MPoly, g: MPoly) -> int | None:
    for i in range(len(f.names)):
        if f.degree(i) > 0 or g.degree(i) > 0:
            return i
    return None


def content(f: MPoly, i: int) -> MPoly:
    """gcd of the coefficients of ``f`` viewed as a polynomial in var ``i``."""
    g = MPoly(f.names)
    for c in f.coeffs_in(i).values():
        g = gcd(g, c)
        if g.is_constant() and g:
            return MPoly.const(f.names)
    return g


def _prem(a: MPoly, b: MPoly, i: int) -> MPoly:
    db = b.degree(i)
    cb = b.coeffs_in(i)
    lcb = cb[db]
    r = a
    while r and r.degree(i) >= db:
        dr = r.degree(i)
        lcr = r.coeffs_in(i)[dr]
        mono = [0] * len(a.names)
        mono[i] = dr - db
        r = lcb * r + (lcr * b).mul_monomial(tuple(mono))
    return r


def gcd(f: MPoly, g: MPoly) -> MPoly:
    """A gcd in F4[vars], normalized to leading coefficient 1."""
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    i = _main_var(f, g)
    if i is None:
        return MPoly.const(f.names)
    cf, cg = content(f, i), content(g, i)
    c = gcd(cf, cg)
    a, b = f.exquo(cf), g.exquo(cg)
    if a.degree(i) < b.degree(i):
        a, b = b, a
    while b and b.degree(i) > 0:
        r = _prem(a, b, i)
        if r:
            r = r.exquo(content(r, i))
        a, b = b, r
    h = a if not b else MPoly.const(f.names)
    if h.degree(i) > 0:
        h = h.exquo(content(h, i))
    else:
        h = MPoly.const(f.names)
    return (c * h).monic()


def lcm(f: MPoly, g: MPoly) -> MPoly:
    return (f * g).exquo(gcd(f, g)).monic()


def radical(f: MPoly) -> MPoly:
    """Squarefree part: the product of the distinct irreducible factors.

    In characteristic 2, ``g = gcd(f, all partials)`` keeps exactly the
    even part of every multiplicity, so ``g`` is a perfect square and
    ``rad(f) = lcm(f/g, rad(sqrt(g)))``.
    """
    if not f:
        raise ZeroInput("squarefree part of zero")
    if f.is_constant():
        return MPoly.const(f.names)
    partials = [f.derivative(i) for i in range(len(f.names))]
    if not any(partials):
        return radical(f.sqrt())
    g = f
    for d in partials:
        if d:
            g = gcd(g, d)
    u = f.exquo(g).monic()
    if g.is_constant():
        return u
    return lcm(u, radical(g.sqrt()))


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------
_ALIASES = {"λ": "L", "ω̄": "W", "ω": "w"}
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\^)|([+\-*()]))")


def parse(text: str, names: Sequence[str]) -> MPoly:
    """Parse ``text`` into an :class:`MPoly` over ``names``.

    Grammar: sums of products with ``^`` powers, parentheses, integer
    literals (reduced mod 2), the constants ``w`` (omega) and ``W``
    (omega bar), and juxtaposition as multiplication.  The Unicode
    spellings ``λ``, ``ω`` and ``ω̄`` are accepted too.
    """
    for k, v in _ALIASES.items():
        text = text.replace(k, v)
    tokens: list[tuple[str, str]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise BadInput(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        num, name, caret, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        elif caret:
            tokens.append(("op", "^"))
        else:
            tokens.append(("op", op))
    return _Parser(tokens, tuple(names)).parse()


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], names: tuple[str, ...]) -> None:
        self.toks = tokens
        self.i = 0
        self.names = names

    def peek(self) -> tuple[str, str] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> tuple[str, str]:
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self) -> MPoly:
        p = self.expr()
        if self.peek() is not None:
            raise BadInput(f"trailing input at token {self.peek()}")
        return p

    def expr(self) -> MPoly:
        acc = MPoly(self.names)
        while True:
            while self.peek() in (("op", "+"), ("op", "-")):
                self.take()
            if self.peek() is None or self.peek() == ("op", ")"):
                return acc
            acc = acc + self.term()

    def term(self) -> MPoly:
        acc = self.factor()
        while True:
            t = self.peek()
            if t == ("op", "*"):
                self.take()
                acc = acc * self.factor()
            elif t is not None and (t[0] in ("num", "name") or t == ("op", "(")):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> MPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise BadInput("exponent must be an integer")
            base = base ** int(val)
        return base

    def atom(self) -> MPoly:
        kind, val = self.take()
        if kind == "num":
            return MPoly.const(self.names, int(val) & 1)
        if kind == "name":
            if val == "w":
                return MPoly.const(self.names, 2)
            if val == "W":
                return MPoly.const(self.names, 3)
            if val not in self.names:
                raise BadInput(f"unknown variable {val!r}")
            return MPoly.var(self.names, val)
        if val == "(":
            p = self.expr()
            if self.peek() != ("op", ")"):
                raise BadInput("unbalanced parenthesis")
            self.take()
            return p
        raise BadInput(f"unexpected token {val!r}")


def polys_from(texts: Iterable[str], names: Sequence[str]) -> list[MPoly]:
    return [parse(t, names) for t in texts]
