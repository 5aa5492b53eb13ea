"""Projective automorphism groups of the configurations and the groups Gamma_T.

``Aut(X, L)`` is realized as the group of projective transformations that
permute the 21 points of a specialized configuration.  ``Gamma_T`` is the
group of fractional linear substitutions of lambda under which the family
is invariant up to relabeling; it acts freely on the punctured lambda-line
and its invariant ring is generated by ``J_T``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import data, families
from .codes21 import Code21, code_automorphisms, preserves_classes
from .errors import BadInput, Explosion, FieldMismatch, NoSolution, NotInStratum, NotUnique
from .families import DEFAULT_DEGREE, FamilyType, PointConfiguration, family_type
from .gf import F4, field
from .gfvec import vec_field
from .linalg import FieldDomain
from .permgroup import Perm, PermGroup, from_cycles
from .plane_geom import Pgl3, ProjPoint, pgl3_from_frame, unipoly_from_str
from .ratfun import RatFun
from .unipoly import LAM, UniPoly

CLOSURE_BOUND = 10**6
_F4 = {"0": 0, "1": 1, "w": 2, "W": 3}


# ---------------------------------------------------------------------------
# matrix groups


class Pgl3Group:
    """A finite group of projective transformations, fully materialized."""

    def __init__(self, elements: Iterable[Pgl3], generators: Sequence[Pgl3] = ()) -> None:
        self.elements = list(dict.fromkeys(elements))
        self.generators = list(generators)
        self.dom = self.elements[0].dom if self.elements else None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Pgl3) -> bool:
        return g in set(self.elements)

    def is_closed(self) -> bool:
        s = set(self.elements)
        gens = self.generators or self.elements
        return all(g @ h in s for g in gens for h in self.elements) and all(g.inverse() in s for g in gens)

    def to_json(self) -> dict:
        return {"order": self.order, "generators": [g.to_json() for g in self.generators]}


def pgl_closure(gens: Sequence[Pgl3], bound: int = CLOSURE_BOUND) -> Pgl3Group:
    if not gens:
        raise BadInput("closure of an empty generating set")
    dom = gens[0].dom
    e = Pgl3.identity(dom)
    seen = {e}
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = s @ g
            if h not in seen:
                seen.add(h)
                if len(seen) > bound:
                    raise Explosion(f"matrix group exceeds {bound} elements")
                queue.append(h)
    return Pgl3Group(seen, gens)


def f4_matrix(rows: Sequence[Sequence[str]], dom) -> Pgl3:
    return Pgl3([[dom.from_f4(_F4[c]) for c in r] for r in rows], dom)


def stabilizer_A(alpha: int, m: int = DEFAULT_DEGREE) -> Pgl3Group:
    """Affine maps with linear part in GL(2, F2) and translation in {0, 1, a, a+1}^2."""
    dom = FieldDomain(m)
    trans = [0, 1, alpha, alpha ^ 1]
    out = []
    for a, b, c, d in product((0, 1), repeat=4):
        if (a * d) ^ (b * c) == 0:
            continue
        for s, t in product(trans, repeat=2):
            out.append(Pgl3([[a, b, s], [c, d, t], [0, 0, 1]], dom))
    return Pgl3Group(out)


def stabilizer_B(m: int = DEFAULT_DEGREE) -> Pgl3Group:
    dom = FieldDomain(m)
    gens = [f4_matrix(g, dom) for g in data.groups()["B"]["stabilizer_generators"]]
    return pgl_closure(gens)


def stabilizer_C(alpha: int, m: int = DEFAULT_DEGREE) -> Pgl3Group:
    """``[[a, b, 0], [c, d, 0], [a^2 c^2 alpha + e, b^2 d^2 alpha + f, 1]]`` with ``ad + bc = 1``."""
    dom = FieldDomain(m)
    fld = dom.fld
    mul = fld.mul
    out = []
    for a, b, c, d in product(range(4), repeat=4):
        if F4.mul(a, d) ^ F4.mul(b, c) != 1:
            continue
        fa, fb, fc, fd = (fld.from_f4(x) for x in (a, b, c, d))
        r0 = mul(mul(mul(fa, fa), mul(fc, fc)), alpha)
        r1 = mul(mul(mul(fb, fb), mul(fd, fd)), alpha)
        for e, f in product(range(4), repeat=2):
            out.append(Pgl3([[fa, fb, 0], [fc, fd, 0], [r0 ^ fld.from_f4(e), r1 ^ fld.from_f4(f), 1]], dom))
    return Pgl3Group(out)


def stated_stabilizer(t: "FamilyType | str", alpha: int, m: int = DEFAULT_DEGREE) -> Pgl3Group:
    t = family_type(t)
    if t is FamilyType.A:
        return stabilizer_A(alpha, m)
    if t is FamilyType.B:
        return stabilizer_B(m)
    if t is FamilyType.C:
        return stabilizer_C(alpha, m)
    raise BadInput("no stated stabilizer for this type")


def stabilizes_configuration(g: Pgl3Group, cfg: PointConfiguration) -> bool:
    if cfg.dom.symbolic or g.dom != cfg.dom:
        raise FieldMismatch("group and configuration live over different fields")
    pts = cfg.point_set()
    return all(h(p) in pts for h in g.elements for p in cfg)


def full_stabilizer(cfg: PointConfiguration, aut: PermGroup, t: "FamilyType | str") -> tuple[Pgl3Group, list[Perm]]:
    """Matrices ``g`` with ``g(cfg[i]) = cfg[sigma(i)]`` for some code automorphism ``sigma``.

    Returns the matrix group and the permutations it induces.
    """
    if cfg.dom.symbolic:
        raise FieldMismatch("specialize the configuration first")
    t = family_type(t)
    frame = families.FRAMES[t]["labels"]
    src = [cfg[i] for i in frame]
    mats, perms = [], []
    for sigma in aut.elements():
        moved = cfg.relabel(sigma)
        try:
            g = pgl3_from_frame(src, [moved[i] for i in frame])
        except (NoSolution, NotUnique, BadInput):
            continue
        if all(g(p) == q for p, q in zip(cfg.points, moved.points)):
            mats.append(g)
            perms.append(sigma)
    if not mats:
        raise NotInStratum("configuration is not stabilized by any labeled map")
    return Pgl3Group(mats), perms


# ---------------------------------------------------------------------------
# fractional linear maps of the lambda-line


@dataclass(frozen=True)
class FracLinear:
    """``lambda -> (a lambda + b) / (c lambda + d)`` over F4, normalized."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if F4.mul(self.a, self.d) ^ F4.mul(self.b, self.c) == 0:
            raise BadInput("degenerate fractional linear map")

    @classmethod
    def make(cls, a: int, b: int, c: int, d: int) -> "FracLinear":
        lead = next(x for x in (c, d, a, b) if x)
        inv = F4.inv(lead)
        return cls(*(F4.mul(inv, x) for x in (a, b, c, d)))

    @classmethod
    def from_strings(cls, num: str, den: str) -> "FracLinear":
        n, d = unipoly_from_str(num), unipoly_from_str(den)
        if n.degree > 1 or d.degree > 1:
            raise BadInput(f"{num}/{den} is not fractional linear")
        return cls.make(n.coeff(1), n.coeff(0), d.coeff(1), d.coeff(0))

    def __matmul__(self, other: "FracLinear") -> "FracLinear":
        """``self o other``."""
        m = F4.mul
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return FracLinear.make(m(a, e) ^ m(b, g), m(a, f) ^ m(b, h), m(c, e) ^ m(d, g), m(c, f) ^ m(d, h))

    def is_identity(self) -> bool:
        return self == FracLinear(1, 0, 0, 1)

    def as_ratfun(self) -> RatFun:
        return RatFun(UniPoly.from_coeffs([self.b, self.a]), UniPoly.from_coeffs([self.d, self.c]))

    def fixed_polynomial(self) -> UniPoly:
        """Numerator of ``phi(lambda) - lambda``: ``c L^2 + (a + d) L + b``."""
        return UniPoly.from_coeffs([self.b, self.a ^ self.d, self.c])

    def __str__(self) -> str:
        return str(self.as_ratfun())


class GammaGroup:
    def __init__(self, elements: Sequence[FracLinear]) -> None:
        self.elements = list(dict.fromkeys(elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_closed(self) -> bool:
        s = set(self.elements)
        return all(g @ h in s for g in self.elements for h in self.elements)

    def element_order(self, g: FracLinear) -> int:
        k, h = 1, g
        while not h.is_identity():
            h = g @ h
            k += 1
        return k

    def order_statistics(self) -> dict[int, int]:
        return dict(sorted(Counter(self.element_order(g) for g in self.elements).items()))

    def is_abelian(self) -> bool:
        return all(g @ h == h @ g for g in self.elements for h in self.elements)

    def structure_tag(self) -> str:
        n = self.order
        stats = self.order_statistics()
        if n == 6 and not self.is_abelian():
            return "S3"
        if n == 12 and 6 not in stats and not self.is_abelian():
            if all(g.c == 0 for g in self.elements):
                return "AGL(1,4)"
            return "A4"
        return f"order-{n}"


@lru_cache(maxsize=None)
def gamma_group(t: "FamilyType | str") -> GammaGroup:
    t = family_type(t)
    raw = data.groups()[t.value]["gamma"]
    return GammaGroup([FracLinear.from_strings(n, d) for n, d in raw])


def _roots_in(poly: UniPoly, m: int) -> set[int]:
    if poly.is_zero():
        raise BadInput("zero polynomial has every root")
    vf = vec_field(m)
    fld = field(m)
    xs = np.arange(fld.size, dtype=np.int64)
    acc = np.zeros_like(xs)
    for c in reversed(poly.coeffs):
        acc = vf.mul(acc, xs) ^ fld.from_f4(c)
    return {int(x) for x in xs[acc == 0]}


def is_free(g: GammaGroup, m: int = 12) -> bool:
    """Non-identity elements fix no point of the line outside F4 (roots over GF(2^m))."""
    fld = field(m)
    allowed = {fld.from_f4(c) for c in range(4)}
    for phi in g.elements:
        if phi.is_identity():
            continue
        if not _roots_in(phi.fixed_polynomial(), m) <= allowed:
            return False
    return True


def j_invariant_fixed(t: "FamilyType | str", g: GammaGroup | None = None) -> bool:
    j = families.j_function(t)
    g = g or gamma_group(t)
    return all(j.substitute(phi.as_ratfun()) == j for phi in g.elements)


@dataclass
class GammaReport:
    type: str
    order: int
    closed: bool
    j_invariant_fixed: bool
    free: bool
    structure_tag: str
    element_orders: dict

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "order": self.order,
            "closed": self.closed,
            "j_invariant_fixed": self.j_invariant_fixed,
            "free": self.free,
            "structure_tag": self.structure_tag,
            "element_orders": {str(k): v for k, v in self.element_orders.items()},
        }


EXPECTED_TAGS = {FamilyType.A: "S3", FamilyType.B: "A4", FamilyType.C: "AGL(1,4)"}


def gamma_group_action(t: "FamilyType | str") -> GammaReport:
    t = family_type(t)
    g = gamma_group(t)
    return GammaReport(t.value, g.order, g.is_closed(), j_invariant_fixed(t, g), is_free(g),
                       g.structure_tag(), g.order_statistics())


# ---------------------------------------------------------------------------
# permutations induced by PGL(3, F4)


def _f4_points_array(labeling: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array(labeling, dtype=np.int64)


@lru_cache(maxsize=None)
def pgl3_f4_permutations(labeling: tuple[tuple[int, int, int], ...]) -> list[Perm]:
    """All 60480 permutations of the 21 labels induced by PGL(3, F4)."""
    pts = _f4_points_array(labeling)
    mul = np.array([[F4.mul(a, b) for b in range(4)] for a in range(4)], dtype=np.int64)
    inv = np.array([0, 1, 3, 2], dtype=np.int64)
    # index of a normalized point
    key = {tuple(p): i for i, p in enumerate(labeling)}
    lookup = np.full(64, -1, dtype=np.int64)
    for p, i in key.items():
        lookup[p[0] * 16 + p[1] * 4 + p[2]] = i
    digits = np.array(list(product(range(4), repeat=9)), dtype=np.int64)
    first = np.argmax(digits != 0, axis=1)
    mats = digits[(digits[np.arange(len(digits)), first] == 1)]
    mats = mats.reshape(-1, 3, 3)
    images = np.zeros((len(mats), 21), dtype=np.int64)
    ok = np.ones(len(mats), dtype=bool)
    for j, p in enumerate(pts):
        v = np.zeros((len(mats), 3), dtype=np.int64)
        for r in range(3):
            v[:, r] = mul[mats[:, r, 0], p[0]] ^ mul[mats[:, r, 1], p[1]] ^ mul[mats[:, r, 2], p[2]]
        nz = v != 0
        ok &= nz.any(axis=1)
        lead = v[np.arange(len(v)), np.argmax(nz, axis=1)]
        s = inv[lead]
        w = mul[s[:, None], v]
        images[:, j] = lookup[w[:, 0] * 16 + w[:, 1] * 4 + w[:, 2]]
    images = images[ok]
    bij = np.array([len(set(r)) == 21 for r in images.tolist()])
    perms = sorted({tuple(r) for r in images[bij].tolist()})
    return perms


def _labels_as_f4(rows: Sequence[Sequence[str]]) -> tuple[tuple[int, int, int], ...]:
    return tuple(tuple(_F4[c] for c in r) for r in rows)


def stated_code_generators(t: "FamilyType | str") -> dict[str, list[Perm]]:
    """The explicit generators of ``Aut(C_T)`` named in the construction of each code."""
    t = family_type(t)
    info = data.groups()[t.value]
    out: dict[str, list[Perm]] = {}
    for name, cycles in info.get("code_generators", {}).items():
        out[name] = [from_cycles(21, cycles)]
    if t is FamilyType.A:
        labeling = _labels_as_f4(data.gamma_table("DK"))
        fixed = {i - 1 for i in info["plane_subgroup_fixes"]}
        out["PG"] = [p for p in pgl3_f4_permutations(labeling) if {p[i] for i in fixed} == fixed]
    elif t is FamilyType.C:
        at_zero = families.gamma("C", m=2, alpha=0)
        labeling = tuple(tuple(c) for c in (p.coords for p in at_zero))
        target = at_zero.label_of(ProjPoint([_F4[c] for c in info["plane_subgroup_fixes_point"]], at_zero.dom)) - 1
        out["LG"] = [p for p in pgl3_f4_permutations(labeling) if p[target] == target]
    elif t is FamilyType.B:
        out["Psi"] = hesse_psi_image()
    return out


def hesse_psi_image() -> list[Perm]:
    """The 432 permutations induced by the affine group of the Hesse plane."""
    from .codes21 import HESSE_POINTS, hesse_lines, _line_key

    lab = data.hesse()
    lines = list(hesse_lines())
    out = []
    for a, b, c, d in product(range(3), repeat=4):
        if (a * d - b * c) % 3 == 0:
            continue
        for s, u in product(range(3), repeat=2):
            def g(p: str) -> str:
                x, y = int(p[0]), int(p[1])
                return f"{(a * x + b * y + s) % 3}{(c * x + d * y + u) % 3}"

            perm = [0] * 21
            for p in HESSE_POINTS:
                perm[lab["C"][p] - 1] = lab["C"][g(p)] - 1
            for ln in lines:
                perm[lab["T"][_line_key(ln)] - 1] = lab["T"][_line_key(g(p) for p in ln)] - 1
            out.append(tuple(perm))
    return out


def is_code_automorphism(code: Code21, p: Perm) -> bool:
    return code.preserved_by(p) and preserves_classes(code, p)


@dataclass
class StabilizerReport:
    type: str
    alpha: int
    order: int
    stated_order: int
    stated_stabilizes: bool
    equal_to_stated: bool
    code_order: int
    gamma_order: int
    factorization: bool
    within_kernel: bool

    @property
    def passed(self) -> bool:
        return (self.order == self.stated_order and self.stated_stabilizes and self.equal_to_stated
                and self.factorization and self.within_kernel)

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["passed"] = self.passed
        return d


def verify_stabilizer(t: "FamilyType | str", alpha: int, m: int = DEFAULT_DEGREE) -> StabilizerReport:
    from .cremona_engine import n_subgroup

    t = family_type(t)
    cfg = families.gamma(t, m=m, alpha=alpha)
    aut = code_automorphisms(families.code_of_type(t))
    found, perms = full_stabilizer(cfg, aut, t)
    stated = stated_stabilizer(t, alpha, m)
    kernel = set(n_subgroup(t).elements())
    gamma_order = gamma_group(t).order
    return StabilizerReport(
        type=t.value,
        alpha=alpha,
        order=found.order,
        stated_order=data.groups()[t.value]["stabilizer_order"],
        stated_stabilizes=stabilizes_configuration(stated, cfg),
        equal_to_stated=set(found.elements) == set(stated.elements),
        code_order=aut.order,
        gamma_order=gamma_order,
        factorization=aut.order == 2 * gamma_order * found.order,
        within_kernel=all(p in kernel for p in perms),
    )
