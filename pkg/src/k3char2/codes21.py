"""Binary codes on the 21-point set P1..P21.

A word is an int whose bit ``i - 1`` marks the point ``P_i``.  Labels in
the public functions are 1-based to match the point names.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BadInput, NotAdmissible, TooLarge
from .permgroup import (
    PermGroup,
    Perm,
    Structure,
    apply_mask,
    automorphism_group,
    find_morphism,
)

N = 21
FULL = (1 << N) - 1
ADMISSIBLE_WEIGHTS = frozenset({0, 5, 8, 9, 12, 13, 16, 21})
COLOR_LINEAR = 1
COLOR_QUADRATIC = 2


def word(labels: Iterable[int]) -> int:
    """Word from 1-based point labels."""
    m = 0
    for lab in labels:
        if not 1 <= lab <= N:
            raise BadInput(f"label {lab} outside 1..{N}")
        m |= 1 << (lab - 1)
    return m


def labels(w: int) -> list[int]:
    return [i + 1 for i in range(N) if w >> i & 1]


def weight(w: int) -> int:
    return bin(w).count("1")


def word_from_row(row: str) -> int:
    row = row.strip()
    if len(row) != N or set(row) - {"0", "1"}:
        raise BadInput(f"bad code row {row!r}")
    return sum(1 << i for i, ch in enumerate(row) if ch == "1")


def word_to_row(w: int) -> str:
    return "".join("1" if w >> i & 1 else "0" for i in range(N))


def _rref(gens: Iterable[int]) -> list[int]:
    """Reduced echelon basis, pivot = lowest set bit, sorted by pivot."""
    basis: dict[int, int] = {}
    for g in gens:
        for p, b in basis.items():
            if g >> p & 1:
                g ^= b
        if not g:
            continue
        p = (g & -g).bit_length() - 1
        for q in list(basis):
            if basis[q] >> p & 1:
                basis[q] ^= g
        basis[p] = g
    return [basis[p] for p in sorted(basis)]


class Code21:
    """Linear code in Pow(P), stored by its reduced echelon basis."""

    def __init__(self, generators: Iterable[int] = ()) -> None:
        self.basis = tuple(_rref(generators))
        self._pivots = tuple((b & -b).bit_length() - 1 for b in self.basis)

    @classmethod
    def from_rows(cls, rows: Iterable[str]) -> "Code21":
        return cls(word_from_row(r) for r in rows if r.strip() and not r.lstrip().startswith("#"))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, w: int) -> int:
        for p, b in zip(self._pivots, self.basis):
            if w >> p & 1:
                w ^= b
        return w

    def __contains__(self, w: int) -> bool:
        return self.reduce(w) == 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Code21) and other.basis == self.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"Code21(dim={self.dim})"

    def rows(self) -> list[str]:
        return [word_to_row(b) for b in self.basis]

    @cached_property
    def words(self) -> list[int]:
        if self.dim > 12:
            raise TooLarge(f"dimension {self.dim} is too large to enumerate")
        out = [0]
        for b in self.basis:
            out += [w ^ b for w in out]
        return sorted(out)

    def permuted(self, p: Perm) -> "Code21":
        """The code ``p(C)`` where ``p`` is 0-based."""
        return Code21(apply_mask(p, b) for b in self.basis)

    def preserved_by(self, p: Perm) -> bool:
        return all(apply_mask(p, b) in self for b in self.basis)

    def words_of_weight(self, k: int) -> list[int]:
        return [w for w in self.words if weight(w) == k]

    @cached_property
    def fingerprint(self) -> str:
        """Stable hex digest of the basis, used as a cache key."""
        import hashlib

        return hashlib.sha256("".join(self.rows()).encode()).hexdigest()[:16]


def span_code(generators: Iterable[int]) -> Code21:
    return Code21(generators)


def weight_enumerator(c: Code21) -> list[int]:
    out = [0] * (N + 1)
    for w in c.words:
        out[weight(w)] += 1
    return out


def format_enumerator(coeffs: Sequence[int]) -> str:
    parts = []
    for k, a in enumerate(coeffs):
        if not a:
            continue
        if k == 0:
            parts.append(str(a))
        else:
            zk = "z" if k == 1 else f"z^{k}"
            parts.append(zk if a == 1 else f"{a}{zk}")
    return "+".join(parts) if parts else "0"


def check_k3_code_conditions(c: Code21) -> bool:
    """dim <= 10, the full word is a member, and every weight is admissible."""
    if c.dim > 10 or FULL not in c:
        return False
    return all(weight(w) in ADMISSIBLE_WEIGHTS for w in c.words)


def _require_admissible(c: Code21) -> None:
    if not check_k3_code_conditions(c):
        raise NotAdmissible("code violates the K3 code conditions")


def artin_invariant(c: Code21) -> int:
    _require_admissible(c)
    return 11 - c.dim


class WordClasses:
    """Linear, quadratic and cubic words of an admissible code."""

    def __init__(self, linear: frozenset, quadratic: frozenset, cubic: frozenset) -> None:
        self.linear = linear
        self.quadratic = quadratic
        self.cubic = cubic

    def counts(self) -> tuple[int, int, int]:
        return len(self.linear), len(self.quadratic), len(self.cubic)

    def __iter__(self):
        return iter((self.linear, self.quadratic, self.cubic))


_CLASS_CACHE: dict[Code21, WordClasses] = {}


def classify_words(c: Code21) -> WordClasses:
    if c in _CLASS_CACHE:
        return _CLASS_CACHE[c]
    _require_admissible(c)
    lin = frozenset(c.words_of_weight(5))
    two = {a ^ b for a, b in combinations(lin, 2)}
    quad = frozenset(w for w in c.words_of_weight(8) if w not in two)
    three = {a ^ b ^ d for a, b, d in combinations(lin, 3)}
    lq = {a ^ q for a in lin for q in quad}
    cubic = frozenset(w for w in c.words_of_weight(9) if w not in three and w not in lq)
    out = WordClasses(lin, quad, cubic)
    _CLASS_CACHE[c] = out
    return out


def _structure(c: Code21) -> Structure:
    cls = classify_words(c)
    blocks = [(COLOR_LINEAR, w) for w in sorted(cls.linear)]
    blocks += [(COLOR_QUADRATIC, w) for w in sorted(cls.quadratic)]
    return Structure(N, blocks)


def preserves_classes(c: Code21, p: Perm) -> bool:
    """Membership test: ``p`` maps linear words and quadratic words onto themselves."""
    cls = classify_words(c)
    return all(apply_mask(p, w) in cls.linear for w in cls.linear) and all(
        apply_mask(p, w) in cls.quadratic for w in cls.quadratic
    )


_AUT_CACHE: dict[Code21, PermGroup] = {}


def code_automorphisms(c: Code21) -> PermGroup:
    """Full automorphism group of an admissible code (0-based permutations)."""
    if c in _AUT_CACHE:
        return _AUT_CACHE[c]
    s = _structure(c)
    g = automorphism_group(s, accept=lambda p: c.preserved_by(p) and preserves_classes(c, p))
    _AUT_CACHE[c] = g
    return g


def code_isomorphism(c1: Code21, c2: Code21) -> Perm | None:
    """A permutation ``p`` with ``p(c1) = c2``, or None."""
    if c1.dim != c2.dim:
        return None
    if weight_enumerator(c1) != weight_enumerator(c2):
        return None
    return find_morphism(_structure(c1), _structure(c2), accept=lambda p: c1.permuted(p) == c2)


def orbit_decomposition(g: PermGroup, elements: Iterable[int]) -> list[list[int]]:
    """Orbits of ``g`` on a set of words, each sorted, in order of first element."""
    return g.orbits(elements, act=apply_mask)


def perm_from_cycles(cycles: Iterable[Sequence[int]]) -> Perm:
    from .permgroup import from_cycles

    return from_cycles(N, cycles)


# ---------------------------------------------------------------------------
# the Dolgachev-Kondo code and its C_F subcodes


def f4_plane_points() -> list[tuple[int, int, int]]:
    """The 21 points of P^2(F4), first nonzero coordinate 1, F4 coded 0,1,w=2,W=3."""
    pts = []
    for x in range(4):
        for y in range(4):
            for z in range(4):
                v = (x, y, z)
                first = next((t for t in v if t), None)
                if first == 1:
                    pts.append(v)
    return pts


def f4_lines_through(points: Sequence[tuple[int, int, int]]) -> list[int]:
    """Words (over the given labeling of the 21 points) cut by F4-rational lines."""
    from .gf import F4

    mul = F4.mul
    out = []
    for line in f4_plane_points():
        m = 0
        for i, p in enumerate(points):
            if mul(line[0], p[0]) ^ mul(line[1], p[1]) ^ mul(line[2], p[2]) == 0:
                m |= 1 << i
        out.append(m)
    return out


def dk_code(phi: Sequence[tuple[int, int, int]]) -> Code21:
    """``phi^{-1}(C_DK)`` for a labeling ``phi`` of P^2(F4) by P1..P21."""
    return Code21(f4_lines_through(phi))


def subcode_dk_f(phi: Sequence[tuple[int, int, int]], f_labels: Sequence[int]) -> Code21:
    """``{w in C_DK : |w & F| even}`` pulled back along ``phi``."""
    if len(f_labels) != 4 or len(set(f_labels)) != 4:
        raise BadInput("F must consist of four distinct points")
    fmask = word(f_labels)
    dk = dk_code(phi)
    return Code21(w for w in dk.words if weight(w & fmask) % 2 == 0)


def collinear_f4(p, q, r) -> bool:
    from .gf import F4

    mul = F4.mul

    def det(a, b, c):
        return (
            mul(a[0], mul(b[1], c[2]) ^ mul(b[2], c[1]))
            ^ mul(a[1], mul(b[0], c[2]) ^ mul(b[2], c[0]))
            ^ mul(a[2], mul(b[0], c[1]) ^ mul(b[1], c[0]))
        )

    return det(p, q, r) == 0


# ---------------------------------------------------------------------------
# the Hesse configuration and the code of type B

HESSE_POINTS = tuple(f"{a}{b}" for a in range(3) for b in range(3))
_HESSE_DIRS = ((0, 1), (1, 0), (1, 1), (1, 2))


def _af_add(p: str, d: tuple[int, int], k: int) -> str:
    return f"{(int(p[0]) + k * d[0]) % 3}{(int(p[1]) + k * d[1]) % 3}"


def hesse_lines() -> dict[frozenset, tuple[int, int]]:
    """The 12 lines of the affine plane over F3, mapped to their direction."""
    out = {}
    for d in _HESSE_DIRS:
        for p in HESSE_POINTS:
            out[frozenset(_af_add(p, d, k) for k in range(3))] = d
    return out


def _line_key(line: Iterable[str]) -> str:
    return ",".join(sorted(line))


class HesseWords:
    """Linear and quadratic words of the type-B code built from the Hesse labeling."""

    def __init__(self, c_label: dict[str, int], t_label: dict[str, int]) -> None:
        lines = hesse_lines()
        tl = {ln: t_label[_line_key(ln)] for ln in lines}
        self.linear = {
            p: word([c_label[p]] + [tl[ln] for ln in lines if p in ln]) for p in HESSE_POINTS
        }
        self.type_i = {}
        for ln in lines:
            union = 0
            for p in ln:
                union |= self.linear[p]
            self.type_i[_line_key(ln)] = FULL & ~union
        self.type_ii = {}
        for l1, l2 in combinations(lines, 2):
            d1, d2 = lines[l1], lines[l2]
            if d1 == d2:
                continue
            (a,) = l1 & l2
            d, e = (x for x in _HESSE_DIRS if x not in (d1, d2))
            m, n = (ln for ln, dd in lines.items() if dd == d and a not in ln)
            lp = next(ln for ln, dd in lines.items() if dd == e and a in ln)
            m1, m2, n1, n2 = (next(iter(x & y)) for x, y in ((l1, m), (l2, m), (l1, n), (l2, n)))
            mp, np_ = next(iter(lp & m)), next(iter(lp & n))

            def through(x: str, y: str) -> int:
                return tl[next(ln for ln in lines if x in ln and y in ln)]

            w = word(
                [c_label[m1], c_label[m2], c_label[n1], c_label[n2]]
                + [through(m1, np_), through(m2, np_), through(n1, mp), through(n2, mp)]
            )
            key = ",".join(str(v) for v in sorted((tl[l1], tl[l2])))
            self.type_ii[key] = w


def hesse_words(labeling: dict | None = None) -> HesseWords:
    from .data import hesse

    lab = labeling or hesse()
    return HesseWords(lab["C"], lab["T"])


def build_code_B_hesse(labeling: dict | None = None) -> Code21:
    """The type-B code spanned by the full word, the nine linear words and both quadratic families."""
    hw = hesse_words(labeling)
    gens = [FULL, *hw.linear.values(), *hw.type_i.values(), *hw.type_ii.values()]
    return Code21(gens)
