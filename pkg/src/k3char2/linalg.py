"""Exact linear algebra over F4[lambda] and over GF(2^m).

Both coefficient domains expose the same small interface so elimination,
null spaces and 3x3 helpers are written once.  Over F4[lambda] elimination
is fraction-free: rows are combined with cross multiplication and then
divided by their content, which keeps degrees in check without ever
leaving the polynomial ring.
"""

from __future__ import annotations

from typing import Sequence

from .gf import GF2m, field
from .unipoly import ONE, ZERO, UniPoly, poly_gcd_many

_F4_INV = (0, 1, 3, 2)


class PolyDomain:
    """F4[lambda], standing in for the fraction field F4(lambda)."""

    symbolic = True
    zero = ZERO
    one = ONE

    @staticmethod
    def add(a: UniPoly, b: UniPoly) -> UniPoly:
        return a + b

    @staticmethod
    def mul(a: UniPoly, b: UniPoly) -> UniPoly:
        return a * b

    @staticmethod
    def is_zero(a: UniPoly) -> bool:
        return a.is_zero()

    @staticmethod
    def from_f4(c: int) -> UniPoly:
        return UniPoly.const(c)

    @staticmethod
    def lcm(a: UniPoly, b: UniPoly) -> UniPoly:
        return (a * b).exquo(a.gcd(b))

    @staticmethod
    def exquo(a: UniPoly, b: UniPoly) -> UniPoly:
        return a.exquo(b)

    @staticmethod
    def normalize(vec: Sequence[UniPoly]) -> list[UniPoly]:
        """Divide by the content and make the first nonzero entry monic."""
        g = poly_gcd_many(vec)
        if g.is_zero():
            return list(vec)
        out = [v.exquo(g) if not g.is_one() else v for v in vec]
        for v in out:
            if v:
                c = v.lc
                if c != 1:
                    out = [w.scale(_F4_INV[c]) for w in out]
                break
        return out

    def __repr__(self) -> str:
        return "PolyDomain()"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyDomain)

    def __hash__(self) -> int:
        return hash("PolyDomain")


class FieldDomain:
    """GF(2^m) on raw ints."""

    symbolic = False
    zero = 0
    one = 1

    def __init__(self, m: int) -> None:
        self.fld: GF2m = field(m)
        self.degree = m

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return self.fld.mul(a, b)

    @staticmethod
    def is_zero(a: int) -> bool:
        return a == 0

    def from_f4(self, c: int) -> int:
        return self.fld.from_f4(c)

    @staticmethod
    def lcm(a: int, b: int) -> int:
        return 1

    def exquo(self, a: int, b: int) -> int:
        return self.fld.div(a, b)

    def normalize(self, vec: Sequence[int]) -> list[int]:
        for v in vec:
            if v:
                if v == 1:
                    return list(vec)
                inv = self.fld.inv(v)
                return [self.fld.mul(w, inv) for w in vec]
        return list(vec)

    def __repr__(self) -> str:
        return f"FieldDomain({self.degree})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldDomain) and other.degree == self.degree

    def __hash__(self) -> int:
        return hash(("FieldDomain", self.degree))


POLY = PolyDomain()


def gauss_jordan(dom, rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced echelon form (fraction-free) and the pivot column list."""
    m = [dom.normalize(list(r)) for r in rows if any(not dom.is_zero(x) for x in r)]
    pivots: list[int] = []
    cur = 0
    for col in range(ncols):
        if cur >= len(m):
            break
        best = None
        for i in range(cur, len(m)):
            x = m[i][col]
            if not dom.is_zero(x):
                if not dom.symbolic:
                    best = i
                    break
                if best is None or x.degree < m[best][col].degree:
                    best = i
        if best is None:
            continue
        m[cur], m[best] = m[best], m[cur]
        prow = m[cur]
        p = prow[col]
        for i in range(len(m)):
            if i == cur:
                continue
            a = m[i][col]
            if dom.is_zero(a):
                continue
            row = m[i]
            m[i] = dom.normalize([dom.add(dom.mul(p, row[k]), dom.mul(a, prow[k])) for k in range(ncols)])
        pivots.append(col)
        cur += 1
    m = [r for r in m if any(not dom.is_zero(x) for x in r)]
    return m, pivots


def rank(dom, rows: Sequence[Sequence], ncols: int) -> int:
    return len(gauss_jordan(dom, rows, ncols)[1])


def nullspace(dom, rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of ``{v : rows . v = 0}``, each vector normalized."""
    red, pivots = gauss_jordan(dom, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        involved = [(i, c) for i, c in enumerate(pivots) if not dom.is_zero(red[i][f])]
        mult = dom.one
        for i, c in involved:
            mult = dom.lcm(mult, red[i][c])
        v = [dom.zero] * ncols
        v[f] = mult
        for i, c in involved:
            v[c] = dom.mul(dom.exquo(mult, red[i][c]), red[i][f])
        basis.append(dom.normalize(v))
    return basis


def det3(dom, m: Sequence[Sequence]) -> object:
    a, b, c = m
    t1 = dom.mul(a[0], dom.add(dom.mul(b[1], c[2]), dom.mul(b[2], c[1])))
    t2 = dom.mul(a[1], dom.add(dom.mul(b[0], c[2]), dom.mul(b[2], c[0])))
    t3 = dom.mul(a[2], dom.add(dom.mul(b[0], c[1]), dom.mul(b[1], c[0])))
    return dom.add(dom.add(t1, t2), t3)


def cross(dom, u: Sequence, v: Sequence) -> list:
    """Cross product; in characteristic 2 no signs are needed."""
    return [
        dom.add(dom.mul(u[1], v[2]), dom.mul(u[2], v[1])),
        dom.add(dom.mul(u[2], v[0]), dom.mul(u[0], v[2])),
        dom.add(dom.mul(u[0], v[1]), dom.mul(u[1], v[0])),
    ]


def adjugate3(dom, m: Sequence[Sequence]) -> list[list]:
    """Adjugate; ``m * adj(m) = det(m) * I``."""
    cols = [[m[r][c] for r in range(3)] for c in range(3)]
    # Rows of adj are the cross products of pairs of columns.
    return [cross(dom, cols[1], cols[2]), cross(dom, cols[2], cols[0]), cross(dom, cols[0], cols[1])]


def matmul(dom, a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n, k, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = dom.zero
            for t in range(k):
                acc = dom.add(acc, dom.mul(a[i][t], b[t][j]))
            row.append(acc)
        out.append(row)
    return out


def matvec(dom, a: Sequence[Sequence], v: Sequence) -> list:
    return [
        dom.add(dom.add(dom.mul(r[0], v[0]), dom.mul(r[1], v[1])), dom.mul(r[2], v[2]))
        for r in a
    ]
