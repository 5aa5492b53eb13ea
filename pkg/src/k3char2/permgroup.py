"""Permutation groups on a small point set and a refinement backtracker.

A permutation of ``{0..n-1}`` is a tuple ``p`` with ``p[i]`` the image of
``i``.  Composition follows function notation: ``compose(p, q)`` is
"first ``q``, then ``p``".

The backtracker works on *colored block structures*: a point set together
with a list of ``(color, block_mask)`` pairs.  A morphism between two
structures is a bijection of points that carries blocks of each color onto
blocks of the same color.  Colors of points are refined in parallel on both
structures with one shared signature table, so equal colors on the two sides
always mean "indistinguishable so far".
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Sequence

from .errors import Explosion

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[q[i]] for i in range(len(q)))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def from_cycles(n: int, cycles: Iterable[Sequence[int]], one_based: bool = True) -> Perm:
    p = list(range(n))
    off = 1 if one_based else 0
    for cyc in cycles:
        cyc = [c - off for c in cyc]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a] = b
    return tuple(p)


def to_cycles(p: Perm, one_based: bool = True) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    off = 1 if one_based else 0
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(j + off)
            j = p[j]
        out.append(tuple(cyc))
    return out


def apply_mask(p: Perm, mask: int) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << p[i]
        mask >>= 1
        i += 1
    return out


def order_of(p: Perm) -> int:
    e = identity(len(p))
    k, q = 1, p
    while q != e:
        q = compose(p, q)
        k += 1
    return k


class PermGroup:
    """Group generated by ``generators``; order known or computed by closure."""

    ELEMENT_LIMIT = 30000

    def __init__(self, n: int, generators: Iterable[Perm], order: int | None = None) -> None:
        self.n = n
        e = identity(n)
        self.generators = tuple(g for g in dict.fromkeys(tuple(g) for g in generators) if g != e)
        self._order = order
        self._elements: list[Perm] | None = None

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = len(self.elements())
        return self._order

    def elements(self, limit: int | None = None) -> list[Perm]:
        """All elements by breadth-first closure."""
        if self._elements is None:
            limit = limit or max(self.ELEMENT_LIMIT, self._order or 0)
            e = identity(self.n)
            seen = {e}
            queue = deque([e])
            while queue:
                g = queue.popleft()
                for s in self.generators:
                    h = compose(s, g)
                    if h not in seen:
                        seen.add(h)
                        if len(seen) > limit:
                            raise Explosion(f"group exceeds {limit} elements")
                        queue.append(h)
            self._elements = sorted(seen)
            if self._order is not None and self._order != len(seen):
                raise Explosion(f"closure has {len(seen)} elements, expected {self._order}")
            self._order = len(seen)
        return self._elements

    def __contains__(self, p: Perm) -> bool:
        return tuple(p) in set(self.elements())

    def orbit(self, x, act: Callable | None = None) -> list:
        act = act or (lambda g, y: g[y])
        seen = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in self.generators:
                z = act(g, y)
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return sorted(seen)

    def orbits(self, items: Iterable, act: Callable | None = None) -> list[list]:
        """Partition ``items`` into orbits; each orbit must stay inside ``items``."""
        remaining = list(dict.fromkeys(items))
        pool = set(remaining)
        out = []
        done: set = set()
        for x in remaining:
            if x in done:
                continue
            orb = self.orbit(x, act)
            for y in orb:
                if y not in pool:
                    raise ValueError("orbit leaves the given item set")
            done.update(orb)
            out.append(orb)
        return out

    def __repr__(self) -> str:
        return f"PermGroup(n={self.n}, gens={len(self.generators)}, order={self._order})"


def word_action(g: Perm, mask: int) -> int:
    return apply_mask(g, mask)


# ---------------------------------------------------------------------------
# refinement backtracking


class Structure:
    """Points ``0..n-1`` plus colored blocks given as bit masks."""

    def __init__(self, n: int, blocks: Iterable[tuple[int, int]], point_colors: Sequence | None = None) -> None:
        self.n = n
        self.blocks = list(blocks)
        self.point_colors = list(point_colors) if point_colors is not None else [0] * n
        self.blocks_of: list[list[int]] = [[] for _ in range(n)]
        self.members: list[list[int]] = []
        for b, (_, mask) in enumerate(self.blocks):
            pts = [i for i in range(n) if mask >> i & 1]
            self.members.append(pts)
            for i in pts:
                self.blocks_of[i].append(b)
        self.block_set = {(c, m) for c, m in self.blocks}


def _refine_pair(s1: Structure, s2: Structure, c1: list, c2: list) -> tuple[list, list] | None:
    """Equitable refinement of two colorings in lockstep; None on mismatch."""
    while True:
        ncol = len(set(c1))
        sigs = []
        for s, col in ((s1, c1), (s2, c2)):
            bsig = [(s.blocks[b][0], tuple(sorted(col[i] for i in s.members[b]))) for b in range(len(s.blocks))]
            sigs.append([(col[i], tuple(sorted(bsig[b] for b in s.blocks_of[i]))) for i in range(s.n)])
        if sorted(sigs[0]) != sorted(sigs[1]):
            return None
        table = {sig: k for k, sig in enumerate(sorted(set(sigs[0])))}
        c1 = [table[x] for x in sigs[0]]
        c2 = [table[x] for x in sigs[1]]
        if len(table) == ncol:
            return c1, c2


def _initial(s1: Structure, s2: Structure) -> tuple[list, list] | None:
    if sorted(s1.point_colors) != sorted(s2.point_colors):
        return None
    if sorted(c for c, _ in s1.blocks) != sorted(c for c, _ in s2.blocks):
        return None
    keys = sorted(set(s1.point_colors))
    table = {k: i for i, k in enumerate(keys)}
    return [table[x] for x in s1.point_colors], [table[x] for x in s2.point_colors]


def _individualize(c1: list, c2: list, x: int, y: int) -> tuple[list, list]:
    top = max(max(c1), max(c2)) + 1
    c1 = list(c1)
    c2 = list(c2)
    c1[x] = top
    c2[y] = top
    return c1, c2


def _is_morphism(s1: Structure, s2: Structure, p: Perm) -> bool:
    for c, m in s1.blocks:
        if (c, apply_mask(p, m)) not in s2.block_set:
            return False
    return True


def _search(s1, s2, c1, c2, accept: Callable[[Perm], bool]) -> Perm | None:
    r = _refine_pair(s1, s2, c1, c2)
    if r is None:
        return None
    c1, c2 = r
    cells: dict[int, list[int]] = {}
    for i, c in enumerate(c1):
        cells.setdefault(c, []).append(i)
    target = [cell for cell in cells.values() if len(cell) > 1]
    if not target:
        inv2 = {c: i for i, c in enumerate(c2)}
        p = tuple(inv2[c1[i]] for i in range(s1.n))
        if _is_morphism(s1, s2, p) and accept(p):
            return p
        return None
    cell = min(target, key=lambda c: (len(c), c[0]))
    x = cell[0]
    col = c1[x]
    for y in [i for i, c in enumerate(c2) if c == col]:
        a, b = _individualize(c1, c2, x, y)
        found = _search(s1, s2, a, b, accept)
        if found is not None:
            return found
    return None


def find_morphism(s1: Structure, s2: Structure, accept: Callable[[Perm], bool] = lambda p: True,
                  fixed: Sequence[tuple[int, int]] = ()) -> Perm | None:
    """One structure morphism ``s1 -> s2`` honoring ``fixed`` pairs, or None."""
    init = _initial(s1, s2)
    if init is None:
        return None
    c1, c2 = init
    for x, y in fixed:
        if c1[x] != c2[y]:
            return None
        c1, c2 = _individualize(c1, c2, x, y)
    return _search(s1, s2, c1, c2, accept)


def automorphism_group(s: Structure, accept: Callable[[Perm], bool] = lambda p: True) -> PermGroup:
    """Automorphism group via a stabilizer chain found by search.

    The base is the sequence of points individualized along the leftmost
    branch.  Levels are processed from the bottom up; at level ``k`` each
    candidate image of ``b_k`` not already reached by known generators costs
    one search.  The order is the product of the basic orbit lengths.
    """
    init = _initial(s, s)
    assert init is not None
    c, _ = init
    base: list[int] = []
    colorings: list[list] = []
    while True:
        r = _refine_pair(s, s, c, c)
        assert r is not None
        c = r[0]
        colorings.append(c)
        cells: dict[int, list[int]] = {}
        for i, col in enumerate(c):
            cells.setdefault(col, []).append(i)
        target = [cell for cell in cells.values() if len(cell) > 1]
        if not target:
            break
        cell = min(target, key=lambda cl: (len(cl), cl[0]))
        x = cell[0]
        base.append(x)
        c, _ = _individualize(c, c, x, x)

    gens: list[Perm] = []
    order = 1
    for k in range(len(base) - 1, -1, -1):
        b = base[k]
        col = colorings[k]
        candidates = [i for i in range(s.n) if col[i] == col[b]]
        fixed_prefix = [(base[j], base[j]) for j in range(k)]
        orbit = _orbit_under(gens, b)
        for w in candidates:
            if w in orbit:
                continue
            g = find_morphism(s, s, accept, fixed_prefix + [(b, w)])
            if g is not None:
                gens.append(g)
                orbit = _orbit_under(gens, b)
        order *= len(orbit)
    return PermGroup(s.n, gens, order=order)


def _orbit_under(gens: Sequence[Perm], x: int) -> set[int]:
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for g in gens:
            z = g[y]
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return seen
