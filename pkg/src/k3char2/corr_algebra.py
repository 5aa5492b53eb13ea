"""Correspondences between the moduli curves and their composition algebra.

A correspondence from ``M_T`` to ``M_T'`` is a reduced plane curve in the
coordinates ``(J, K) = (J_T, J_T')``.  Composites are computed by
eliminating the middle coordinate with a resultant and then splitting the
result against the catalog by exact trial division.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import EndpointMismatch, UnknownComponent, ZeroInput
from .mpoly import MPoly, format_mpoly, parse, radical
from .resultant import poly_resultant

BIVARS = ("J", "K")
TYPES = ("A", "B", "C")


def bipoly(text: str) -> MPoly:
    """Parse a polynomial in ``J`` (source) and ``K`` (target)."""
    return parse(text, BIVARS)


def bipoly_from_pairs(pairs: Iterable[Sequence]) -> MPoly:
    return MPoly(BIVARS, {tuple(e): int(c) for e, c in pairs})


def bipoly_to_pairs(p: MPoly) -> list[list]:
    return [[list(e), c] for e, c in _grlex(p)]


def _grlex(p: MPoly) -> list[tuple[tuple, int]]:
    return sorted(p.terms.items(), key=lambda t: (-sum(t[0]), [-x for x in t[0]]))


def format_bipoly(p: MPoly) -> str:
    return format_mpoly(p, order="grlex")


def canonicalize(p: MPoly) -> MPoly:
    """Squarefree, monic, with every factor ``J`` or ``K`` removed.

    Factors of ``J`` and ``K`` come from poles of the ``J`` functions once
    denominators are cleared; they are not components of a correspondence
    on ``M_T x M_T'`` (where ``J`` is invertible).
    """
    if not p:
        raise ZeroInput("cannot canonicalize the zero polynomial")
    q = p.strip_monomial()
    if q.is_constant():
        return MPoly.const(q.names)
    return radical(q).monic()


def swap(p: MPoly) -> MPoly:
    return p.rename(p.names, mapping=[1, 0])


@dataclass(frozen=True)
class Correspondence:
    source: str
    target: str
    poly: MPoly

    def __post_init__(self) -> None:
        if self.source not in TYPES or self.target not in TYPES:
            raise ValueError(f"bad endpoints {self.source}, {self.target}")

    @classmethod
    def of(cls, source: str, target: str, poly: MPoly | str) -> "Correspondence":
        if isinstance(poly, str):
            poly = bipoly(poly)
        return cls(source, target, canonicalize(poly))

    @classmethod
    def diagonal(cls, t: str) -> "Correspondence":
        return cls.of(t, t, "J+K")

    def is_diagonal(self) -> bool:
        return self.source == self.target and self.poly == bipoly("J+K")

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "poly": bipoly_to_pairs(self.poly),
            "text": format_bipoly(self.poly),
        }


def transpose(d: Correspondence) -> Correspondence:
    return Correspondence(d.target, d.source, canonicalize(swap(d.poly)))


class Catalog:
    """Named correspondences closed under transposition, plus the diagonals."""

    def __init__(self, entries: Mapping[str, Correspondence]) -> None:
        self.entries = dict(entries)
        for t in TYPES:
            self.entries.setdefault(f"Delta_{t}", Correspondence.diagonal(t))
        for name, d in list(self.entries.items()):
            if name.startswith("Delta"):
                continue
            tname = d.target + d.source + name[2:]
            if tname not in self.entries:
                self.entries[tname] = transpose(d)
        self._by_poly = {(d.source, d.target, d.poly): n for n, d in self.entries.items()}

    def __getitem__(self, name: str) -> Correspondence:
        return self.entries[name]

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def between(self, source: str, target: str) -> dict[str, Correspondence]:
        return {n: d for n, d in self.entries.items() if d.source == source and d.target == target}

    def name_of(self, d: Correspondence) -> str | None:
        return self._by_poly.get((d.source, d.target, d.poly))

    def pairwise_distinct(self) -> bool:
        return len(self._by_poly) == len(self.entries)


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    from .data import correspondences

    raw = correspondences()["entries"]
    return Catalog(
        {
            name: Correspondence(e["source"], e["target"], canonicalize(bipoly_from_pairs(e["poly"])))
            for name, e in raw.items()
        }
    )


def composite_poly(d1: Correspondence, d2: Correspondence) -> MPoly:
    """Reduced defining polynomial of ``d1 * d2`` in ``(J_source, J_target)``."""
    if d1.target != d2.source:
        raise EndpointMismatch(f"cannot compose {d1.source}->{d1.target} with {d2.source}->{d2.target}")
    names = ("J", "K", "M")
    f = d1.poly.rename(names, mapping=[0, 1])
    g = d2.poly.rename(names, mapping=[1, 2])
    r = poly_resultant(f, g, "K")
    r = MPoly(BIVARS, {(e[0], e[2]): c for e, c in r.terms.items()})
    return canonicalize(r)


def split(poly: MPoly, source: str, target: str, cat: Catalog) -> list[str]:
    """Names of the catalog components of a reduced ``poly``, by trial division."""
    rest = poly
    found = []
    for name, d in sorted(cat.between(source, target).items()):
        if d.poly.divides(rest):
            rest = rest.exquo(d.poly)
            found.append(name)
    if not rest.is_constant():
        raise UnknownComponent(f"component {format_bipoly(rest)} is not in the catalog")
    return found


def compose(d1: Correspondence, d2: Correspondence, cat: Catalog | None = None) -> list[str]:
    """Support of the composite ``d1 * d2`` as sorted catalog names."""
    cat = cat or default_catalog()
    return sorted(split(composite_poly(d1, d2), d1.source, d2.target, cat))


def compose_names(a: str, b: str, cat: Catalog | None = None) -> list[str]:
    cat = cat or default_catalog()
    return compose(cat[a], cat[b], cat)


@dataclass
class RelationReport:
    total: int
    matched: int
    mismatches: list[dict]
    unknown: list[dict]
    closed: bool | None = None

    @property
    def passed(self) -> bool:
        return self.matched == self.total and not self.unknown and self.closed is not False

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "matched": self.matched,
            "mismatches": self.mismatches,
            "unknown_components": self.unknown,
            "closed": self.closed,
            "passed": self.passed,
        }


def verify_relation_table(
    cat: Catalog | None = None,
    relations: Sequence[Mapping] | None = None,
    check_closure: bool = False,
    jobs: int = 1,
) -> RelationReport:
    """Recompute every listed composite and compare supports.

    With ``check_closure`` every composable pair in the catalog is also
    composed, and any component outside the catalog is reported.
    """
    from .data import relations as load_relations

    cat = cat or default_catalog()
    rels = list(relations if relations is not None else load_relations()["relations"])
    pairs = [(r["left"], r["right"]) for r in rels]
    if check_closure:
        extra = [
            (a, b)
            for a, b in product(sorted(cat), repeat=2)
            if cat[a].target == cat[b].source and (a, b) not in pairs
        ]
    else:
        extra = []
    results = _run_pairs(pairs + extra, cat, jobs)
    mismatches, unknown = [], []
    matched = 0
    for r in rels:
        got = results[(r["left"], r["right"])]
        if isinstance(got, str):
            unknown.append({"left": r["left"], "right": r["right"], "error": got})
        elif got == sorted(r["result"]):
            matched += 1
        else:
            mismatches.append({"left": r["left"], "right": r["right"], "expected": sorted(r["result"]), "got": got})
    closed = None
    if check_closure:
        closed = True
        for key in extra:
            if isinstance(results[key], str):
                closed = False
                unknown.append({"left": key[0], "right": key[1], "error": results[key]})
    return RelationReport(len(rels), matched, mismatches, unknown, closed)


def _one(args):
    a, b = args
    cat = default_catalog()
    try:
        return compose_names(a, b, cat)
    except UnknownComponent as exc:
        return str(exc)


def _run_pairs(pairs, cat: Catalog, jobs: int) -> dict:
    if jobs > 1 and cat is default_catalog():
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as ex:
            return dict(zip(pairs, ex.map(_one, pairs)))
    out = {}
    for a, b in pairs:
        try:
            out[(a, b)] = compose_names(a, b, cat)
        except UnknownComponent as exc:
            out[(a, b)] = str(exc)
    return out
