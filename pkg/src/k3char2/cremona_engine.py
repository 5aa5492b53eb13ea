"""Centers of Cremona transformations and the correspondences they induce.

A center is a 6-subset of the 21 points with no three collinear whose six
complementary conics contain no further point.  The quintics singular at
the six points form a net; the map they define sends the configuration to
another 21-point configuration, whose type and lambda give a point of a
(possibly different) moduli curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from . import families
from .codes21 import N, Code21, classify_words, code_isomorphism, labels, weight, word
from .corr_algebra import BIVARS, canonicalize
from .errors import BadWeight, DegenerateCenter, MapUndefined, NotInStratum
from .families import DEFAULT_DEGREE, FamilyType, PointConfiguration, family_type, gamma, recover_lambda
from .forms import Form, monomials
from .linalg import cross, nullspace
from .mpoly import MPoly
from .permgroup import PermGroup, compose, identity, inverse
from .plane_geom import ProjPoint, collinear, conic_space
from .ratfun import RatFun
from .resultant import poly_resultant
from .unipoly import LAM

QUINTIC_MONOMIALS = monomials(5)
CUBIC_MONOMIALS = monomials(3)
_QINDEX = {e: i for i, e in enumerate(QUINTIC_MONOMIALS)}
_CONIC_EXPONENTS = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (0, 1, 1), (1, 0, 1))

# (|LW|, |QW|) of the image decides the target type
TYPE_BY_COUNTS = {(13, 28): FamilyType.A, (9, 66): FamilyType.B, (5, 120): FamilyType.C}


# ---------------------------------------------------------------------------
# centers


def _check_weight(c: int) -> None:
    if weight(c) != 6:
        raise BadWeight(f"a center has six points, got {weight(c)}")


def is_center(code: Code21, c: int) -> bool:
    """``|c & l| <= 2`` for linear words and ``|c & q| <= 4`` for quadratic ones."""
    _check_weight(c)
    cls = classify_words(code)
    return all(weight(c & w) <= 2 for w in cls.linear) and all(weight(c & w) <= 4 for w in cls.quadratic)


@lru_cache(maxsize=None)
def _all_six_subsets() -> np.ndarray:
    masks = [sum(1 << i for i in s) for s in combinations(range(N), 6)]
    return np.array(masks, dtype=np.int64)


def enumerate_centers(code: Code21) -> list[int]:
    """Every weight-6 word (not necessarily in the code) that is a center."""
    cls = classify_words(code)
    masks = _all_six_subsets()
    ok = np.ones(len(masks), dtype=bool)
    for w in cls.linear:
        ok &= np.bitwise_count(masks & w) <= 2
    for w in cls.quadratic:
        ok &= np.bitwise_count(masks & w) <= 4
    return sorted(int(x) for x in masks[ok])


# ---------------------------------------------------------------------------
# the net of quintics


@dataclass
class QuinticSystem:
    """Three quintics spanning the forms singular at the six center points.

    ``vectors`` hold coefficients in the configuration's domain, indexed by
    :data:`QUINTIC_MONOMIALS`.
    """

    dom: object
    vectors: list[list]
    alpha: int | None = None

    def forms(self) -> list[Form]:
        if not self.dom.symbolic:
            raise ValueError("forms() is only available over F4[lambda]")
        return [Form.from_vector(5, v) for v in self.vectors]

    def __call__(self, p: Sequence) -> list:
        return [_eval_vector(self.dom, v, p, QUINTIC_MONOMIALS) for v in self.vectors]


def _powers(dom, x, d: int) -> list:
    out = [dom.one]
    for _ in range(d):
        out.append(dom.mul(out[-1], x))
    return out


def _monomial_values(dom, p: Sequence, monos) -> list:
    d = max(sum(e) for e in monos)
    pw = [_powers(dom, x, d) for x in p]
    return [dom.mul(dom.mul(pw[0][a], pw[1][b]), pw[2][c]) for a, b, c in monos]


def _eval_vector(dom, vec, p, monos):
    acc = dom.zero
    for c, m in zip(vec, _monomial_values(dom, p, monos)):
        if not dom.is_zero(c):
            acc = dom.add(acc, dom.mul(c, m))
    return acc


def singular_rows(dom, p: Sequence) -> list[list]:
    """Linear conditions on quintic coefficients for singularity at ``p``.

    Vanishing of the three partials implies vanishing of the form (Euler).
    """
    rows = []
    pw = [_powers(dom, x, 5) for x in p]
    for v in range(3):
        row = []
        for e in QUINTIC_MONOMIALS:
            if e[v] % 2 == 0:
                row.append(dom.zero)
                continue
            f = list(e)
            f[v] -= 1
            row.append(dom.mul(dom.mul(pw[0][f[0]], pw[1][f[1]]), pw[2][f[2]]))
        rows.append(row)
    return rows


def center_points(cfg: PointConfiguration, c: int) -> list[ProjPoint]:
    return [cfg[i] for i in labels(c)]


def quintic_system(cfg: PointConfiguration, c: int) -> QuinticSystem:
    _check_weight(c)
    pts = center_points(cfg, c)
    for a, b, d in combinations(pts, 3):
        if collinear(a, b, d):
            raise DegenerateCenter("three center points are collinear")
    dom = cfg.dom
    rows = [r for p in pts for r in singular_rows(dom, p.coords)]
    ns = nullspace(dom, rows, len(QUINTIC_MONOMIALS))
    if len(ns) != 3:
        raise DegenerateCenter(f"quintic system has dimension {len(ns)}, expected 3")
    return QuinticSystem(dom, ns, cfg.alpha)


def _conic_times_cubic_columns(dom, conic: Sequence) -> list[list]:
    """Columns (one per cubic monomial) of multiplication by a conic."""
    cols = []
    for cm in CUBIC_MONOMIALS:
        col = [dom.zero] * len(QUINTIC_MONOMIALS)
        for coef, ce in zip(conic, _CONIC_EXPONENTS):
            if dom.is_zero(coef):
                continue
            k = _QINDEX[(cm[0] + ce[0], cm[1] + ce[1], cm[2] + ce[2])]
            col[k] = dom.add(col[k], coef)
        cols.append(col)
    return cols


def exceptional_point(system: QuinticSystem, others: Sequence[ProjPoint]) -> ProjPoint:
    """Image of the conic through five of the center points.

    The members of the net containing that conic form a pencil ``a . F``;
    the image point is the common point of the lines ``a . (X, Y, Z) = 0``.
    """
    dom = system.dom
    basis = conic_space(list(others))
    if len(basis) != 1:
        raise DegenerateCenter("five center points do not determine a unique conic")
    cols = [list(v) for v in system.vectors] + _conic_times_cubic_columns(dom, basis[0].coords)
    ncols = len(cols)
    rows = [[cols[j][i] for j in range(ncols)] for i in range(len(QUINTIC_MONOMIALS))]
    ns = nullspace(dom, rows, ncols)
    if len(ns) != 2:
        raise DegenerateCenter(f"pencil through the conic has dimension {len(ns)}")
    a, b = (v[:3] for v in ns)
    q = cross(dom, a, b)
    if all(dom.is_zero(x) for x in q):
        raise DegenerateCenter("pencil does not determine a point")
    return ProjPoint(q, dom)


@dataclass
class CremonaImage:
    """Image points: 15 images of non-center points, then six exceptional points.

    ``sources[k]`` is the label of the point mapped to ``points[k]`` (for
    ``k < 15``) or the label of the omitted center point (for ``k >= 15``).
    """

    points: PointConfiguration
    sources: list[int]
    system: QuinticSystem

    @property
    def new_center(self) -> int:
        return word(range(16, 22))


def apply_cremona(cfg: PointConfiguration, c: int, system: QuinticSystem | None = None) -> CremonaImage:
    system = system or quintic_system(cfg, c)
    dom = cfg.dom
    center = labels(c)
    rest = [i for i in range(1, 22) if i not in center]
    pts = []
    for i in rest:
        v = system(cfg[i].coords)
        if all(dom.is_zero(x) for x in v):
            raise MapUndefined(f"P{i} lies on the base locus")
        pts.append(ProjPoint(v, dom))
    cpts = center_points(cfg, c)
    for k in range(6):
        pts.append(exceptional_point(system, cpts[:k] + cpts[k + 1 :]))
    return CremonaImage(PointConfiguration(pts, cfg.alpha), rest + center, system)


# ---------------------------------------------------------------------------
# classification and the correspondence


@dataclass
class CenterResult:
    source: FamilyType
    center: int
    target: FamilyType
    lam: RatFun
    sign: str
    relation: MPoly
    diagonal: bool
    counts: tuple[int, int]
    image: CremonaImage | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        from .corr_algebra import bipoly_to_pairs, format_bipoly

        return {
            "source": self.source.value,
            "center": labels(self.center),
            "target": self.target.value,
            "lambda_prime": str(self.lam),
            "component": self.sign,
            "line_conic_counts": list(self.counts),
            "relation": format_bipoly(self.relation),
            "relation_pairs": bipoly_to_pairs(self.relation),
            "diagonal": self.diagonal,
        }


def classify_image(image: PointConfiguration, m: int = DEFAULT_DEGREE) -> tuple[FamilyType, Code21, tuple[int, int]]:
    code = families.configuration_code(image, m=m)
    lw, qw, _ = classify_words(code).counts()
    t = TYPE_BY_COUNTS.get((lw, qw))
    if t is None:
        raise NotInStratum(f"image has {lw} lines and {qw} conics, not a known type")
    return t, code, (lw, qw)


def relabel_to_type(image: PointConfiguration, code: Code21, t: FamilyType) -> PointConfiguration:
    """``image o sigma`` whose configuration code is the canonical code of ``t``."""
    p = code_isomorphism(code, families.code_of_type(t))
    if p is None:
        raise NotInStratum("image code is not isomorphic to the expected type")
    return image.relabel(inverse(p))


def _j_pair(t: FamilyType, lam: RatFun) -> tuple:
    j = families.j_function(t).substitute(lam)
    return j.num, j.den


def relation_polynomial(t: FamilyType, t2: FamilyType, lam2: RatFun) -> MPoly:
    """Canonical equation of ``{(J_t(lambda), J_t2(lam2(lambda)))}`` in ``(J, K)``."""
    p, q = _j_pair(t, RatFun.from_poly(LAM))
    p2, q2 = _j_pair(t2, lam2)
    names = ("L", "J", "K")

    def lift(poly):
        return MPoly(names, {(k, 0, 0): c for k, c in enumerate(poly.coeffs) if c})

    f = MPoly.var(names, "J") * lift(q) + lift(p)
    g = MPoly.var(names, "K") * lift(q2) + lift(p2)
    r = poly_resultant(f, g, "L")
    r = MPoly(BIVARS, {(e[1], e[2]): c for e, c in r.terms.items()})
    return canonicalize(r)


def correspondence_of_center(t: "FamilyType | str", c: int, *, keep_image: bool = False,
                             m: int = DEFAULT_DEGREE) -> CenterResult:
    t = family_type(t)
    cfg = gamma(t)
    image = apply_cremona(cfg, c)
    t2, code, counts = classify_image(image.points, m)
    labeled = relabel_to_type(image.points, code, t2)
    _, lam2, sign = recover_lambda(labeled, t2)
    lam2 = lam2 if isinstance(lam2, RatFun) else RatFun.from_poly(lam2)
    rel = relation_polynomial(t, t2, lam2)
    diag = t == t2 and rel == canonicalize(MPoly(BIVARS, {(1, 0): 1, (0, 1): 1}))
    return CenterResult(t, c, t2, lam2, sign, rel, diag, counts, image if keep_image else None)


# ---------------------------------------------------------------------------
# the subgroup N_T and center orbits


def component_sign(t: "FamilyType | str", sigma, *, m: int = DEFAULT_DEGREE, alpha: int | None = None) -> int:
    """0 if relabeling by ``sigma`` keeps the component of the lambda-line, else 1."""
    t = family_type(t)
    if alpha is None:
        alpha = families.sample_alphas(m, 1, seed=3)[0]
    cfg = gamma(t, m=m, alpha=alpha)
    _, _, sign = recover_lambda(cfg.relabel(sigma), t)
    return 0 if sign == "+" else 1


def kernel_subgroup(g: PermGroup, signs: Sequence[int]) -> PermGroup:
    """Kernel of the homomorphism to Z/2 given by its values on generators (Schreier)."""
    n = g.n
    gens = g.generators
    odd = next((s for s, v in zip(gens, signs) if v), None)
    if odd is None:
        return PermGroup(n, gens, g.order)
    reps = {0: identity(n), 1: odd}
    kgens = []
    for r, rp in reps.items():
        for s, v in zip(gens, signs):
            target = reps[(r + v) % 2]
            kgens.append(compose(inverse(target), compose(s, rp)))
    return PermGroup(n, kgens, g.order // 2)


@lru_cache(maxsize=None)
def n_subgroup(t: "FamilyType | str") -> PermGroup:
    """``N_T``: automorphisms of the code that preserve the component."""
    from .codes21 import code_automorphisms

    t = family_type(t)
    aut = code_automorphisms(families.code_of_type(t))
    signs = [component_sign(t, s) for s in aut.generators]
    return kernel_subgroup(aut, signs)


def center_orbits(t: "FamilyType | str") -> list[list[int]]:
    from .codes21 import orbit_decomposition

    t = family_type(t)
    centers = enumerate_centers(families.code_of_type(t))
    return orbit_decomposition(n_subgroup(t), centers)


# ---------------------------------------------------------------------------
# Neron-Severi action


def ns_action(c: int) -> np.ndarray:
    """Pull-back on ``(e1..e21, h)``; column ``j`` is the image of basis vector ``j``.

    Center labels keep their positions: ``e'_i -> 2h - sum_c e_j + e_i`` for
    ``i`` in the center, ``e'_i -> e_i`` otherwise, and
    ``h' -> 5h - 2 sum_c e_j``.
    """
    _check_weight(c)
    cl = [i - 1 for i in labels(c)]
    m = np.zeros((22, 22), dtype=np.int64)
    for i in range(21):
        if i in cl:
            m[21, i] = 2
            for j in cl:
                m[j, i] = -1
            m[i, i] += 1
        else:
            m[i, i] = 1
    m[21, 21] = 5
    for j in cl:
        m[j, 21] = -2
    return m


def gram_matrix() -> np.ndarray:
    g = -2 * np.eye(22, dtype=np.int64)
    g[21, 21] = 2
    return g


def preserves_gram(m: np.ndarray) -> bool:
    g = gram_matrix()
    return bool(np.array_equal(m.T @ g @ m, g))
