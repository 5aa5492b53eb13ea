"""The parametric 21-point configurations and their sextic families.

``gamma(t)`` is the tabulated configuration over F4(lambda) for the types
A, B, C; type DK is the set of F4-rational points labeled by the standard
bijection.  A configuration is a :class:`PointConfiguration`: 21 projective
points indexed by the labels P1..P21 (0-based internally).
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from enum import Enum
from itertools import combinations
from typing import Sequence

import numpy as np

from . import data
from .codes21 import FULL, Code21, word
from .errors import BadInput, NoSolution, NotInStratum, NotUnique, Pole
from .forms import Form, forms_span_rank
from .gf import field
from .gfvec import batched_rank, eval_forms, projective_points, vec_field
from .linalg import POLY, FieldDomain
from .mpoly import gcd as mgcd
from .permgroup import Perm
from .plane_geom import (
    Conic,
    ProjPoint,
    collinear,
    conic_is_singular,
    conic_row,
    conic_space,
    pgl3_from_frame,
    points_from_json,
    unipoly_from_str,
)
from .ratfun import RatFun
from .unipoly import LAM, ONE, UniPoly

DEFAULT_DEGREE = 8


class FamilyType(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    DK = "DK"

    def __str__(self) -> str:
        return self.value


def family_type(t: "FamilyType | str") -> FamilyType:
    try:
        return FamilyType(str(t).upper())
    except ValueError as exc:
        raise BadInput(f"unknown family type {t!r}") from exc


class PointConfiguration:
    """Map from labels P1..P21 to points over one coefficient domain."""

    __slots__ = ("points", "dom", "alpha")

    def __init__(self, points: Sequence[ProjPoint], alpha: int | None = None) -> None:
        if len(points) != 21:
            raise BadInput("a configuration has exactly 21 points")
        self.points = tuple(points)
        self.dom = self.points[0].dom
        #: the value of lambda used when this configuration was specialized
        self.alpha = alpha

    def __getitem__(self, label: int) -> ProjPoint:
        """1-based access: ``cfg[10]`` is the image of P10."""
        return self.points[label - 1]

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PointConfiguration) and other.points == self.points

    def __hash__(self) -> int:
        return hash(self.points)

    def distinct(self) -> bool:
        return len(set(self.points)) == 21

    def relabel(self, p: Perm) -> "PointConfiguration":
        """``gamma o p``: label ``i`` goes to the old image of ``p(i)``."""
        return PointConfiguration([self.points[p[i]] for i in range(21)], self.alpha)

    def transform(self, g) -> "PointConfiguration":
        return PointConfiguration([g(p) for p in self.points], self.alpha)

    def specialize(self, m: int, alpha: int) -> "PointConfiguration":
        return PointConfiguration([p.specialize(m, alpha) for p in self.points], alpha)

    def point_set(self) -> frozenset:
        return frozenset(self.points)

    def label_of(self, p: ProjPoint) -> int:
        return self.points.index(p) + 1

    def subset(self, w: int) -> list[ProjPoint]:
        return [self.points[i] for i in range(21) if w >> i & 1]

    def to_json(self) -> dict:
        return {f"P{i + 1}": p.to_json() for i, p in enumerate(self.points)}

    def __repr__(self) -> str:
        return f"PointConfiguration({self.dom!r})"


# ---------------------------------------------------------------------------
# tables


def _rows_to_points(rows, dom=POLY) -> list[ProjPoint]:
    return points_from_json(rows, dom)


def gamma(t: "FamilyType | str", lam: "RatFun | UniPoly | None" = None, *, m: int | None = None,
          alpha: int | None = None) -> PointConfiguration:
    """The tabulated configuration.

    With no arguments the result is symbolic in lambda.  ``lam`` substitutes
    a rational function for lambda; ``m`` and ``alpha`` specialize to
    ``lambda = alpha`` in GF(2^m).
    """
    t = family_type(t)
    cfg = PointConfiguration(_rows_to_points(data.gamma_table(t.value)))
    if lam is not None:
        cfg = substitute_lambda(cfg, lam)
    if alpha is not None:
        if m is None:
            m = DEFAULT_DEGREE
        cfg = cfg.specialize(m, alpha)
    return cfg


def substitute_lambda(cfg: PointConfiguration, r: "RatFun | UniPoly") -> PointConfiguration:
    """Replace lambda by ``r`` in every coordinate, clearing denominators."""
    if isinstance(r, UniPoly):
        r = RatFun.from_poly(r)
    pts = []
    for p in cfg.points:
        vals = [RatFun.from_poly(c).substitute(r) for c in p.coords]
        den = ONE
        for v in vals:
            den = (den * v.den).exquo(den.gcd(v.den))
        pts.append(ProjPoint([v.num * den.exquo(v.den) for v in vals]))
    return PointConfiguration(pts)


def dk_phi() -> list[tuple[int, int, int]]:
    """The labeling of P^2(F4) as F4 triples (0, 1, w=2, W=3)."""
    names = {"0": 0, "1": 1, "w": 2, "W": 3}
    return [tuple(names[c] for c in row) for row in data.gamma_table("DK")]


_SEXTICS = {
    FamilyType.A: "XYZ(X+Y+Z)(X^2+Y^2+(L^2+L)Z^2+XY+YZ+ZX)",
    FamilyType.B: "XYZ(X+Y+Z)((WL+w)X^2+WY^2+wLZ^2+(L+1)XY+(WL+w)YZ+(L+1)ZX)",
    FamilyType.C: "XYZ(X^3+Y^3+Z^3)+(L^4+L)X^3Y^3",
    FamilyType.DK: "XYZ(X^3+Y^3+Z^3)",
}


def sextic(t: "FamilyType | str", lam: "UniPoly | int | None" = None) -> Form:
    """The sextic form of the family, optionally with lambda replaced."""
    f = Form.parse(_SEXTICS[family_type(t)])
    if lam is None:
        return f
    if isinstance(lam, int):
        lam = UniPoly.const(lam)
    return f.substitute_lambda(lam)


_J = {
    FamilyType.A: ("(L^2+L+1)^3", "L^2(L+1)^2"),
    FamilyType.B: ("(L+w)^12", "L^3(L+1)^3(L+W)^3"),
    FamilyType.C: ("(L^4+L)^3", "1"),
}


def j_function(t: "FamilyType | str") -> RatFun:
    t = family_type(t)
    if t not in _J:
        raise BadInput("the DK point has no J-invariant")
    num, den = _J[t]
    return RatFun(unipoly_from_str(num), unipoly_from_str(den))


def j_invariant(t: "FamilyType | str", lam=None, *, m: int = DEFAULT_DEGREE):
    """``J_t`` symbolically, composed with a rational function, or at an int ``lam`` in GF(2^m)."""
    j = j_function(t)
    if lam is None:
        return j
    if isinstance(lam, RatFun):
        return j.substitute(lam)
    if isinstance(lam, UniPoly):
        return j.substitute(RatFun.from_poly(lam))
    return j.eval_raw(field(m), lam)


# ---------------------------------------------------------------------------
# zero scheme


@dataclass
class ZeroSchemeReport:
    partials_vanish: bool
    points_distinct: bool
    dimension_zero: bool
    quintic_span_dim: int
    gcd_certificate: bool = False
    oracle_zero_count: int | None = None
    oracle_alpha: int | None = None

    @property
    def verified(self) -> bool:
        return self.partials_vanish and self.points_distinct and self.dimension_zero and self.quintic_span_dim == 3

    def to_json(self) -> dict:
        d = asdict(self)
        d["verified"] = self.verified
        return d


def _gcd_certificate(partials: Sequence[Form]) -> bool:
    """gcd of the three partials over F4(lambda) is 1."""
    ps = [p.to_mpoly() for p in partials]
    if any(not p for p in ps):
        return False
    g = mgcd(mgcd(ps[0], ps[1]), ps[2])
    return all(g.degree(v) <= 0 for v in ("X", "Y", "Z"))


def sample_alphas(m: int, count: int, seed: int = 0, avoid: Sequence[int] = ()) -> list[int]:
    """Distinct elements of GF(2^m) outside F4, drawn reproducibly."""
    fld = field(m)
    sub = {fld.from_f4(c) for c in range(4)} if fld.has_f4 else {0, 1}
    pool = [a for a in range(2, fld.size) if a not in sub and a not in avoid]
    rng = random.Random(seed)
    return rng.sample(pool, count)


def zero_count(partials: Sequence[Form], m: int, alpha: int) -> tuple[int, np.ndarray]:
    """Common zeros of the partials over P^2(GF(2^m)) at lambda = alpha."""
    vf = vec_field(m)
    pts = projective_points(m)
    spec = [p.specialized_terms(m, alpha) for p in partials]
    vals = eval_forms(vf, spec, pts)
    mask = ~vals.any(axis=0)
    return int(mask.sum()), pts[mask]


def verify_zero_scheme(g: Form, cfg: PointConfiguration, *, m: int = DEFAULT_DEGREE,
                       alpha: int | None = None) -> ZeroSchemeReport:
    partials = g.partials()
    identically_zero = all(p.is_zero() for p in partials)
    if cfg.dom.symbolic:
        vanish = all(p.eval_at(pt).is_zero() for p in partials for pt in cfg)
    else:
        vanish = all(p.eval_at(pt, cfg.alpha) == 0 for p in partials for pt in cfg)
    distinct = cfg.distinct()
    span = forms_span_rank(partials) if not identically_zero else 0
    if identically_zero:
        return ZeroSchemeReport(vanish, distinct, False, span)
    cert = _gcd_certificate(partials)
    if alpha is None:
        alpha = _good_alpha(cfg, m)
    count, zeros = zero_count(partials, m, alpha)
    oracle_ok = count == 21
    if oracle_ok and cfg.dom.symbolic:
        spec = {tuple(p.specialize(m, alpha).coords) for p in cfg}
        oracle_ok = spec == {tuple(int(x) for x in z) for z in zeros}
    return ZeroSchemeReport(vanish, distinct, cert and oracle_ok, span, cert, count, alpha)


def _good_alpha(cfg: PointConfiguration, m: int) -> int:
    """An alpha outside F4 at which the configuration stays 21 distinct points."""
    if not cfg.dom.symbolic:
        return cfg.alpha or 0
    for a in sample_alphas(m, 16, seed=1):
        try:
            if cfg.specialize(m, a).distinct():
                return a
        except BadInput:
            continue
    raise BadInput("no usable specialization found")


# ---------------------------------------------------------------------------
# configuration code


def _subset_masks(n: int, k: int) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    combos = list(combinations(range(n), k))
    return np.array(combos, dtype=np.int64), combos


def _screen(cfg_spec: PointConfiguration, k: int, rows_fn, ncols: int, bound: int) -> list[tuple[int, ...]]:
    """k-subsets whose evaluation matrix has rank < bound at the specialization."""
    dom = cfg_spec.dom
    vf = vec_field(dom.degree)
    evals = np.array([rows_fn(dom, p.coords) for p in cfg_spec], dtype=np.int64)
    idx, combos = _subset_masks(21, k)
    out = []
    chunk = 40000
    for s in range(0, len(combos), chunk):
        sel = idx[s : s + chunk]
        mats = evals[sel]
        r = batched_rank(vf, mats)
        for j in np.nonzero(r < bound)[0]:
            out.append(combos[s + j])
    return out


def _pencil_has_nonsingular(basis: list[Conic]) -> bool:
    if len(basis) == 1:
        return not conic_is_singular(basis[0])
    dom = basis[0].dom
    c1, c2 = basis[0], basis[1]
    mults = [dom.one, dom.from_f4(2), dom.from_f4(3)]
    if dom.symbolic:
        mults += [LAM, LAM * LAM]
    trial = [c1, c2] + [Conic([dom.add(a, dom.mul(t, b)) for a, b in zip(c1.coords, c2.coords)], dom)
                        for t in mults if any(not dom.is_zero(dom.add(a, dom.mul(t, b)))
                                              for a, b in zip(c1.coords, c2.coords))]
    return any(not conic_is_singular(c) for c in trial)


def configuration_code(cfg: PointConfiguration, *, m: int = DEFAULT_DEGREE, alpha: int | None = None,
                       return_words: bool = False):
    """Code generated by the full word, collinear 5-words and conic 8-words.

    Screening happens at a specialization (rank can only drop there), and
    every surviving candidate is confirmed in the configuration's own domain.
    """
    if cfg.dom.symbolic:
        if alpha is None:
            alpha = _good_alpha(cfg, m)
        spec = cfg.specialize(m, alpha)
    else:
        spec = cfg
    pts = cfg.points
    lin_rows = lambda dom, p: list(p)  # noqa: E731
    lines = []
    for s in _screen(spec, 5, lin_rows, 3, 3):
        if all(collinear(pts[s[0]], pts[s[1]], pts[i]) for i in s[2:]):
            lines.append(word(i + 1 for i in s))
    triples = set()
    for s in _screen(spec, 3, lin_rows, 3, 3):
        if collinear(*(pts[i] for i in s)):
            triples.add(s)
    conics = []
    for s in _screen(spec, 8, conic_row, 6, 6):
        if any(t in triples for t in combinations(s, 3)):
            continue
        basis = conic_space([pts[i] for i in s])
        if basis and _pencil_has_nonsingular(basis):
            conics.append(word(i + 1 for i in s))
    code = Code21([FULL] + lines + conics)
    if return_words:
        return code, lines, conics
    return code


# ---------------------------------------------------------------------------
# frames and lambda recovery


_F = {"0": 0, "1": 1, "w": 2, "W": 3}

# labels of the frame points, their normalized images, the marker point and
# its image on the + component, the relabeling T for the other component,
# and the point whose coordinates carry lambda.
FRAMES = {
    FamilyType.A: dict(labels=(18, 12, 13, 20, 19),
                       images=(("1", "0", "0"), ("0", "1", "0"), ("1", "1", "0"), ("0", "0", "1"), ("1", "0", "1")),
                       marker=(1, ("1", "w", "0")), swap=((1, 2),), lam_point=10),
    FamilyType.B: dict(labels=(16, 12, 20, 15, 21),
                       images=(("1", "0", "0"), ("1", "1", "0"), ("0", "1", "0"), ("1", "0", "1"), ("0", "0", "1")),
                       marker=(18, ("0", "1", "w")),
                       swap=((2, 5), (3, 6), (4, 7), (10, 13), (11, 14), (12, 15), (20, 21)), lam_point=17),
    FamilyType.C: dict(labels=(21, 17, 18, 13, 14),
                       images=(("0", "0", "1"), ("0", "1", "1"), ("0", "1", "0"), ("1", "0", "1"), ("1", "0", "0")),
                       marker=(19, ("0", "1", "W")),
                       swap=((3, 4), (5, 9), (6, 10), (7, 12), (8, 11), (15, 16), (19, 20)), lam_point=1),
}


def component_swap(t: "FamilyType | str") -> Perm:
    from .permgroup import from_cycles

    return from_cycles(21, FRAMES[family_type(t)]["swap"])


def _const_point(coords, dom) -> ProjPoint:
    return ProjPoint([dom.from_f4(_F[c]) for c in coords], dom)


def frame_map(cfg: PointConfiguration, t: "FamilyType | str"):
    """The projective map putting the frame points of ``cfg`` in normal position."""
    fr = FRAMES[family_type(t)]
    dom = cfg.dom
    src = [cfg[lab] for lab in fr["labels"]]
    dst = [_const_point(c, dom) for c in fr["images"]]
    return pgl3_from_frame(src, dst)


def _read_lambda(t: FamilyType, p: ProjPoint):
    x, y, z = p.coords
    dom = p.dom
    if t in (FamilyType.A, FamilyType.B):
        if not dom.is_zero(x) or dom.is_zero(z):
            return None
        num, den = y, z
    else:
        if dom.is_zero(x) or x != y:
            return None
        num, den = z, x
    if dom.symbolic:
        return RatFun(num, den)
    return dom.fld.div(num, den)


def recover_lambda(cfg: PointConfiguration, t: "FamilyType | str"):
    """``(type, lambda, component)`` for a configuration labeled like ``C_t``.

    ``lambda`` is a :class:`RatFun` for symbolic input and an int otherwise.
    """
    t = family_type(t)
    if t is FamilyType.DK:
        raise BadInput("the DK configuration has no lambda")
    fr = FRAMES[t]
    dom = cfg.dom
    for sign, work in (("+", cfg), ("-", cfg.relabel(component_swap(t)))):
        try:
            g = frame_map(work, t)
        except (BadInput, NoSolution, NotUnique):
            continue
        normal = work.transform(g)
        mlabel, mimage = fr["marker"]
        if normal[mlabel] != _const_point(mimage, dom):
            continue
        lam = _read_lambda(t, normal[fr["lam_point"]])
        if lam is None:
            continue
        try:
            expected = gamma(t, lam) if dom.symbolic else gamma(t, m=dom.degree, alpha=lam)
        except (Pole, BadInput):
            continue
        if expected == normal:
            return t, lam, sign
    raise NotInStratum(f"configuration does not match the type {t} normal form")


def code_of_type(t: "FamilyType | str") -> Code21:
    return Code21.from_rows(data.code_rows(family_type(t).value))


def parse_at(value: str, m: int = DEFAULT_DEGREE) -> int:
    """Parse a specialization value: ``omega``, ``omegabar``, an int or a hex literal."""
    fld = field(m)
    v = value.strip().lower()
    if v in ("omega", "w", "ω"):
        return fld.omega
    if v in ("omegabar", "ω̄"):
        return fld.omega ^ 1
    n = int(v, 0)
    if not 0 <= n < fld.size:
        raise BadInput(f"{value} is not an element of GF(2^{m})")
    return n



# ---------------------------------------------------------------------------
# line and conic tables


_CONIC_EXP = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (0, 1, 1), (1, 0, 1))
_F4_ROOTS = UniPoly.from_coeffs([0, 1, 0, 0, 1])  # lambda^4 + lambda


def conic_from_string(text: str) -> Conic:
    f = Form.parse(text)
    if f.degree != 2:
        raise BadInput(f"{text!r} is not a conic")
    return Conic([f.terms.get(e, UniPoly()) for e in _CONIC_EXP])


def roots_in_f4(p: UniPoly) -> bool:
    """Every root of ``p`` in an algebraic closure lies in F4."""
    from .unipoly import squarefree_part

    if p.is_zero():
        return False
    return (_F4_ROOTS % squarefree_part(p)).is_zero()


@dataclass
class TableReport:
    checked: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"checked": self.checked, "failures": self.failures, "passed": self.passed}


def _check_line(cfg, code, name, entry, fails) -> None:
    from .plane_geom import Line, line_through

    w = word(entry["word"])
    pts = cfg.subset(w)
    if w not in code or not all(collinear(pts[0], pts[1], p) for p in pts[2:]):
        fails.append({"entry": name, "problem": "points not collinear or word not in code"})
        return
    if "line" in entry and line_through(pts[0], pts[1]) != Line(points_from_json([entry["line"]])[0].coords):
        fails.append({"entry": name, "problem": "line equation differs"})


def _check_conic(cfg, code, name, entry, fails) -> None:
    w = word(entry["word"])
    basis = conic_space(cfg.subset(w))
    if w not in code or len(basis) != 1:
        fails.append({"entry": name, "problem": "no unique conic through the points"})
        return
    c = basis[0]
    if "conic" in entry and c != conic_from_string(entry["conic"]):
        fails.append({"entry": name, "problem": "conic equation differs"})
    from .plane_geom import singularity_value

    if not roots_in_f4(singularity_value(c)):
        fails.append({"entry": name, "problem": "conic degenerates outside the excluded values"})


def verify_tables(t: "FamilyType | str") -> TableReport:
    """Recompute every tabulated line and conic of a family and compare."""
    t = family_type(t)
    cfg = gamma(t)
    code = code_of_type(t)
    tables = data.family_tables(t.value)
    fails: list = []
    n = 0
    for name, entry in tables.get("linear", {}).items():
        _check_line(cfg, code, name, entry, fails)
        n += 1
    for key in ("quadratic", "quadratic_I", "quadratic_II"):
        for name, entry in tables.get(key, {}).items():
            _check_conic(cfg, code, name, entry, fails)
            n += 1
    lin = tables.get("linear", {})
    for key, label in tables.get("triple_points", {}).items():
        a, b, c = key
        ws = [word(lin[f"l12,{a}"]["word"]), word(lin[f"l13,{b}"]["word"]), word(lin[f"l18,{c}"]["word"])]
        if ws[0] & ws[1] & ws[2] != word([label]):
            fails.append({"entry": f"triple {key}", "problem": "lines do not meet in the stated point"})
        n += 1
    for key, c in tables.get("concurrent", {}).items():
        a, b = key.split(",")
        triple = tables.get("triple_points", {}).get(f"{a}{b}{c}")
        if triple is None:
            fails.append({"entry": f"concurrent {key}", "problem": "no matching triple point"})
        n += 1
    return TableReport(n, fails)


def degeneration_check(t: "FamilyType | str", alpha: int, m: int = DEFAULT_DEGREE) -> dict:
    """Specialize at an excluded value: the points should become P^2(F4)."""
    from .codes21 import code_isomorphism, dk_code

    t = family_type(t)
    cfg = gamma(t, m=m, alpha=alpha)
    fld = field(m)
    f4 = {fld.from_f4(c) for c in range(4)}
    rational = all(c in f4 for p in cfg for c in p.coords)
    out = {"alpha": alpha, "distinct": cfg.distinct(), "f4_rational": rational}
    if cfg.distinct():
        code = configuration_code(cfg, m=m)
        out["code_dim"] = code.dim
        out["isomorphic_to_dk"] = code_isomorphism(code, dk_code(dk_phi())) is not None
    out["degenerates_to_dk"] = bool(out.get("isomorphic_to_dk")) and rational
    return out
