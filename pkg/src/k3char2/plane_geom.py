"""Points, lines and conics in the projective plane, characteristic 2.

Coordinates live in one of the two domains of :mod:`k3char2.linalg`:
polynomials in F4[lambda] (representing F4(lambda) projectively, since
any homogeneous vector can be cleared of denominators) or a finite field
GF(2^m) on raw ints.  Every object is stored in a canonical scaling, so
equality of objects is equality of their coordinate tuples.

Over F4[lambda] the canonical scaling is "primitive, first nonzero entry
monic", which is the polynomial analogue of "first nonzero entry is 1".
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .errors import BadInput, LineInConic, NoSolution, NotUnique
from .gf import field
from .linalg import POLY, FieldDomain, adjugate3, cross, det3, matmul, matvec, nullspace
from .unipoly import UniPoly, format_unipoly

_F4_NAMES = {0: "0", 1: "1", 2: "w", 3: "W"}


def domain_for(m: int | None):
    """``None`` selects F4[lambda]; an int selects GF(2^m)."""
    return POLY if m is None else FieldDomain(m)


class _ProjVector:
    """Nonzero vector up to scaling, stored canonically."""

    __slots__ = ("dom", "coords", "_hash")
    size = 3

    def __init__(self, coords: Sequence, dom=POLY) -> None:
        coords = list(coords)
        if len(coords) != self.size:
            raise BadInput(f"{type(self).__name__} needs {self.size} coordinates")
        if all(dom.is_zero(c) for c in coords):
            raise BadInput(f"{type(self).__name__} with all coordinates zero")
        self.dom = dom
        self.coords = tuple(dom.normalize(coords))
        self._hash = hash((type(self).__name__, self.coords))

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and other.coords == self.coords and other.dom == self.dom

    def __hash__(self) -> int:
        return self._hash

    def __getitem__(self, i: int):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def specialize(self, m: int, alpha: int) -> "_ProjVector":
        """Substitute ``lambda = alpha`` in GF(2^m); raises if all entries vanish."""
        if not self.dom.symbolic:
            raise BadInput("already specialized")
        fld = field(m)
        return type(self)([c.eval_raw(fld, alpha) for c in self.coords], FieldDomain(m))

    def to_json(self) -> list:
        if self.dom.symbolic:
            return [format_unipoly(c) for c in self.coords]
        fld = self.dom.fld
        out = []
        for c in self.coords:
            f4 = _as_f4(fld, c)
            out.append(_F4_NAMES[f4] if f4 is not None else c)
        return out

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_json()})"


def _as_f4(fld, c: int) -> int | None:
    if fld.degree % 2:
        return c if c in (0, 1) else None
    for k in range(4):
        if fld.from_f4(k) == c:
            return k
    return None


class ProjPoint(_ProjVector):
    """A point ``[x, y, z]``."""

    __slots__ = ()


class Line(_ProjVector):
    """The line ``xi X + eta Y + zeta Z = 0``."""

    __slots__ = ()

    def contains(self, p: ProjPoint) -> bool:
        d = self.dom
        acc = d.zero
        for a, b in zip(self.coords, p.coords):
            acc = d.add(acc, d.mul(a, b))
        return d.is_zero(acc)


CONIC_MONOMIALS = ("X^2", "Y^2", "Z^2", "XY", "YZ", "ZX")


def conic_row(dom, p: Sequence) -> list:
    """Evaluation of the six conic monomials at ``p``."""
    x, y, z = p
    m = dom.mul
    return [m(x, x), m(y, y), m(z, z), m(x, y), m(y, z), m(z, x)]


class Conic(_ProjVector):
    """``A X^2 + B Y^2 + C Z^2 + D XY + E YZ + F ZX``."""

    __slots__ = ()
    size = 6

    def value(self, p: Sequence):
        d = self.dom
        acc = d.zero
        for a, b in zip(self.coords, conic_row(d, p)):
            acc = d.add(acc, d.mul(a, b))
        return acc

    def contains(self, p: ProjPoint) -> bool:
        return self.dom.is_zero(self.value(p.coords))

    def polar(self, u: Sequence, v: Sequence):
        """``Q(u + v) - Q(u) - Q(v)``, the bilinear form attached to ``Q``."""
        d = self.dom
        A, B, C, D, E, F = self.coords
        m = d.mul
        terms = [
            m(D, d.add(m(u[0], v[1]), m(u[1], v[0]))),
            m(E, d.add(m(u[1], v[2]), m(u[2], v[1]))),
            m(F, d.add(m(u[2], v[0]), m(u[0], v[2]))),
        ]
        acc = d.zero
        for t in terms:
            acc = d.add(acc, t)
        return acc

    def to_string(self) -> str:
        parts = []
        for c, mono in zip(self.coords, CONIC_MONOMIALS):
            if self.dom.is_zero(c):
                continue
            if self.dom.symbolic:
                s = format_unipoly(c)
                coef = "" if s == "1" else (s if c.degree <= 0 or "+" not in s else f"({s})")
            else:
                coef = "" if c == 1 else str(self.to_json()[CONIC_MONOMIALS.index(mono)])
            parts.append(coef + mono)
        return "+".join(parts)


def point(coords: Sequence, dom=POLY) -> ProjPoint:
    return ProjPoint(coords, dom)


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    """True iff the coordinate determinant vanishes."""
    d = p.dom
    return d.is_zero(det3(d, [p.coords, q.coords, r.coords]))


def line_through(p: ProjPoint, q: ProjPoint) -> Line:
    if p == q:
        raise BadInput("a line needs two distinct points")
    return Line(cross(p.dom, p.coords, q.coords), p.dom)


def meet(l1: Line, l2: Line) -> ProjPoint:
    if l1 == l2:
        raise BadInput("identical lines do not meet in a point")
    return ProjPoint(cross(l1.dom, l1.coords, l2.coords), l1.dom)


def distinct(p: ProjPoint, q: ProjPoint) -> bool:
    """Some 2x2 minor is nonzero."""
    return p != q


def conic_space(points: Sequence[ProjPoint]) -> list[Conic]:
    """Basis of the conics through all given points."""
    if not points:
        dom = POLY
        rows: list = []
    else:
        dom = points[0].dom
        rows = [conic_row(dom, p.coords) for p in points]
    return [Conic(v, dom) for v in nullspace(dom, rows, 6)]


def singularity_value(c: Conic):
    """``AE^2 + BF^2 + CD^2 + DEF``; zero exactly for singular conics."""
    d = c.dom
    A, B, C, D, E, F = c.coords
    m = d.mul
    return d.add(d.add(m(A, m(E, E)), m(B, m(F, F))), d.add(m(C, m(D, D)), m(D, m(E, F))))


def conic_is_singular(c: Conic) -> bool:
    return c.dom.is_zero(singularity_value(c))


def _line_basis(l: Line) -> tuple[list, list]:
    """Two independent points spanning the line."""
    basis = nullspace(l.dom, [list(l.coords)], 3)
    return basis[0], basis[1]


def line_conic_tangent(l: Line, c: Conic) -> bool:
    """True iff the conic restricted to the line is a nonzero perfect square."""
    if l.dom != c.dom:
        raise BadInput("line and conic over different domains")
    u, v = _line_basis(l)
    d = c.dom
    a, cc, b = c.value(u), c.value(v), c.polar(u, v)
    if d.is_zero(a) and d.is_zero(b) and d.is_zero(cc):
        raise LineInConic("the line is a component of the conic")
    return d.is_zero(b)


class Pgl3:
    """An invertible 3x3 matrix up to scaling; acts on column vectors."""

    __slots__ = ("dom", "rows", "_hash")

    def __init__(self, rows: Sequence[Sequence], dom=POLY) -> None:
        flat = [x for r in rows for x in r]
        if len(flat) != 9:
            raise BadInput("Pgl3 needs a 3x3 matrix")
        self.dom = dom
        if dom.is_zero(det3(dom, rows)):
            raise BadInput("singular matrix")
        flat = dom.normalize(flat)
        self.rows = (tuple(flat[0:3]), tuple(flat[3:6]), tuple(flat[6:9]))
        self._hash = hash(self.rows)

    @classmethod
    def identity(cls, dom=POLY) -> "Pgl3":
        o, z = dom.one, dom.zero
        return cls([[o, z, z], [z, o, z], [z, z, o]], dom)

    def __call__(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(matvec(self.dom, self.rows, p.coords), self.dom)

    def __matmul__(self, other: "Pgl3") -> "Pgl3":
        return Pgl3(matmul(self.dom, self.rows, other.rows), self.dom)

    def inverse(self) -> "Pgl3":
        return Pgl3(adjugate3(self.dom, self.rows), self.dom)

    def det(self):
        return det3(self.dom, self.rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Pgl3) and other.rows == self.rows and other.dom == self.dom

    def __hash__(self) -> int:
        return self._hash

    def to_json(self) -> list:
        out = []
        for r in self.rows:
            out.append(ProjPoint.to_json(_RowView(r, self.dom)))
        return out

    def __repr__(self) -> str:
        return f"Pgl3({self.to_json()})"


class _RowView:
    """Lets :meth:`_ProjVector.to_json` format a matrix row."""

    def __init__(self, coords, dom) -> None:
        self.coords = coords
        self.dom = dom


def _standard_map(dom, pts: Sequence[Sequence]) -> list[list]:
    """Matrix sending e1, e2, e3, (1,1,1) to the four given points."""
    m = [[pts[c][r] for c in range(3)] for r in range(3)]
    coef = matvec(dom, adjugate3(dom, m), pts[3])
    return [[dom.mul(m[r][c], coef[c]) for c in range(3)] for r in range(3)]


def general_position(pts: Sequence[ProjPoint]) -> bool:
    return all(not collinear(a, b, c) for a, b, c in combinations(pts, 3))


def pgl3_from_frame(src: Sequence[ProjPoint], dst: Sequence[ProjPoint]) -> Pgl3:
    """The unique projective map with ``g(src[i]) = dst[i]`` for all i.

    Needs four points of ``src`` in general position; with five points the
    fifth is checked rather than used to build the map.
    """
    if len(src) != len(dst) or not 4 <= len(src) <= 5:
        raise BadInput("frames need 4 or 5 matching points")
    if len(set(src)) != len(src) or len(set(dst)) != len(dst):
        raise BadInput("repeated points in a frame")
    dom = src[0].dom
    chosen = None
    for idx in combinations(range(len(src)), 4):
        if general_position([src[i] for i in idx]):
            chosen = idx
            break
    if chosen is None:
        raise NotUnique("no four source points in general position")
    s4 = [src[i] for i in chosen]
    d4 = [dst[i] for i in chosen]
    if not general_position(d4):
        raise NoSolution("collinearity pattern differs between frames")
    a = _standard_map(dom, [p.coords for p in s4])
    b = _standard_map(dom, [p.coords for p in d4])
    g = Pgl3(matmul(dom, b, adjugate3(dom, a)), dom)
    for p, q in zip(src, dst):
        if g(p) != q:
            raise NoSolution("frames are not projectively equivalent")
    return g


def points_from_json(rows: Iterable[Sequence], dom=POLY) -> list[ProjPoint]:
    out = []
    for r in rows:
        if dom.symbolic:
            out.append(ProjPoint([unipoly_from_str(c) for c in r], dom))
        else:
            out.append(ProjPoint([_field_coord(dom, c) for c in r], dom))
    return out


def _field_coord(dom, c) -> int:
    if isinstance(c, int):
        return c
    return dom.from_f4({"0": 0, "1": 1, "w": 2, "W": 3}[c])


def unipoly_from_str(text: str) -> UniPoly:
    """Parse a polynomial in ``L`` (lambda) with F4 coefficients."""
    from .mpoly import parse

    p = parse(str(text), ("L",))
    deg = max((e[0] for e, _ in p), default=-1)
    coeffs = [0] * (deg + 1)
    for e, c in p:
        coeffs[e[0]] = c
    return UniPoly.from_coeffs(coeffs)
