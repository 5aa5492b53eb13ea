"""Homogeneous forms in X, Y, Z with coefficients in F4[lambda]."""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import BadInput
from .gf import field
from .linalg import POLY
from .mpoly import MPoly, parse
from .unipoly import ZERO, UniPoly, format_unipoly

FORM_VARS = ("L", "X", "Y", "Z")


def monomials(d: int) -> list[tuple[int, int, int]]:
    """Exponent triples of degree ``d`` in graded-lex order (X > Y > Z)."""
    out = []
    for a in range(d, -1, -1):
        for b in range(d - a, -1, -1):
            out.append((a, b, d - a - b))
    return out


class Form:
    """``sum c_(a,b,c)(lambda) X^a Y^b Z^c``, all monomials of one degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[tuple[int, int, int], UniPoly]) -> None:
        clean = {}
        for e, c in terms.items():
            if sum(e) != degree:
                raise BadInput("form is not homogeneous")
            if c:
                clean[tuple(e)] = c
        self.degree = degree
        self.terms = clean

    @classmethod
    def from_mpoly(cls, p: MPoly) -> "Form":
        if p.names != FORM_VARS:
            p = p.rename(FORM_VARS)
        terms: dict[tuple, list] = {}
        degs = {sum(e[1:]) for e, _ in p}
        if len(degs) > 1:
            raise BadInput("form is not homogeneous")
        d = degs.pop() if degs else 0
        for e, c in p:
            key = e[1:]
            terms.setdefault(key, [0] * 1)
            lst = terms[key]
            if len(lst) <= e[0]:
                lst.extend([0] * (e[0] + 1 - len(lst)))
            lst[e[0]] = c
        return cls(d, {k: UniPoly.from_coeffs(v) for k, v in terms.items()})

    @classmethod
    def parse(cls, text: str) -> "Form":
        return cls.from_mpoly(parse(text, FORM_VARS))

    @classmethod
    def from_vector(cls, degree: int, vec: Sequence[UniPoly]) -> "Form":
        return cls(degree, dict(zip(monomials(degree), vec)))

    def to_vector(self) -> list[UniPoly]:
        return [self.terms.get(m, ZERO) for m in monomials(self.degree)]

    def to_mpoly(self) -> MPoly:
        terms = {}
        for (a, b, c), poly in self.terms.items():
            for k, v in enumerate(poly.coeffs):
                if v:
                    terms[(k, a, b, c)] = v
        return MPoly(FORM_VARS, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Form) and other.degree == self.degree and other.terms == self.terms

    def __hash__(self) -> int:
        return hash((self.degree, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def __add__(self, other: "Form") -> "Form":
        if other.degree != self.degree:
            raise BadInput("adding forms of different degree")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, ZERO) + c
        return Form(self.degree, terms)

    def scale(self, c: UniPoly) -> "Form":
        return Form(self.degree, {e: v * c for e, v in self.terms.items()})

    def partial(self, var: int) -> "Form":
        """Derivative by X (0), Y (1) or Z (2); only odd exponents survive."""
        if self.degree == 0:
            return Form(0, {})
        terms = {}
        for e, c in self.terms.items():
            if e[var] % 2:
                f = list(e)
                f[var] -= 1
                terms[tuple(f)] = c
        return Form(self.degree - 1, terms)

    def partials(self) -> list["Form"]:
        return [self.partial(v) for v in range(3)]

    def substitute_lambda(self, value: UniPoly) -> "Form":
        """Replace lambda by a polynomial (for instance an F4 constant)."""
        return Form(self.degree, {e: c.compose(value) for e, c in self.terms.items()})

    def evaluate(self, dom, pt: Sequence):
        """Value at a point given in the coordinates of ``dom``.

        Over a finite-field domain the coefficients must already be ints
        (use :meth:`specialized_terms`).
        """
        x, y, z = pt
        pw = [_powers(dom, x, self.degree), _powers(dom, y, self.degree), _powers(dom, z, self.degree)]
        acc = dom.zero
        for (a, b, c), coef in self.terms.items():
            t = dom.mul(dom.mul(pw[0][a], pw[1][b]), pw[2][c])
            acc = dom.add(acc, dom.mul(coef, t))
        return acc

    def specialized_terms(self, m: int, alpha: int) -> dict[tuple, int]:
        fld = field(m)
        out = {}
        for e, c in self.terms.items():
            v = c.eval_raw(fld, alpha)
            if v:
                out[e] = v
        return out

    def eval_at(self, pt, alpha: int | None = None):
        """Evaluate at a :class:`ProjPoint`; specialized points need ``alpha``."""
        dom = pt.dom
        if dom.symbolic:
            return self.evaluate(POLY, pt.coords)
        if alpha is None:
            if any(c.degree > 0 for c in self.terms.values()):
                raise BadInput("lambda-dependent form needs alpha at a specialized point")
            alpha = 0
        spec = _SpecForm(self.degree, self.specialized_terms(dom.degree, alpha))
        return spec.evaluate(dom, pt.coords)

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"Form({format_form(self)!r})"


class _SpecForm(Form):
    __slots__ = ()

    def __init__(self, degree: int, terms: Mapping) -> None:
        self.degree = degree
        self.terms = dict(terms)


def _powers(dom, x, d: int) -> list:
    out = [dom.one]
    for _ in range(d):
        out.append(dom.mul(out[-1], x))
    return out


def _mono_str(e: tuple[int, int, int]) -> str:
    s = ""
    for name, k in zip("XYZ", e):
        if k == 1:
            s += name
        elif k > 1:
            s += f"{name}^{k}"
    return s


def format_form(f: Form) -> str:
    parts = []
    for e in monomials(f.degree):
        c = f.terms.get(e)
        if c is None:
            continue
        cs = format_unipoly(c)
        mono = _mono_str(e)
        if not mono:
            parts.append(cs if "+" not in cs else f"({cs})")
        elif cs == "1":
            parts.append(mono)
        elif "+" in cs:
            parts.append(f"({cs}){mono}")
        else:
            parts.append(cs + mono)
    return "+".join(parts) if parts else "0"


def forms_span_rank(forms: Sequence[Form]) -> int:
    from .linalg import rank

    if not forms:
        return 0
    d = forms[0].degree
    return rank(POLY, [f.to_vector() for f in forms], len(monomials(d)))

