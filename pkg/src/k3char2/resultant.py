"""Resultants by evaluation and interpolation.

``Res_x(f, g)`` for ``f, g`` in F4[x, v1, ..., vk] is a polynomial in the
``v``'s whose degree in each ``v`` is bounded by
``deg_x(g) deg_v(f) + deg_x(f) deg_v(g)``.  We evaluate the ``v``'s on a grid
inside GF(2^8) (or GF(2^16) when a bound exceeds 255), compute univariate
resultants there with the formal degrees of ``f`` and ``g`` in ``x``, and
interpolate back.  The answer is exact: every coefficient must land in F4.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .errors import FieldMismatch, ZeroInput
from .gf import GF2m, field
from .mpoly import MPoly


def _trim(c: list[int]) -> list[int]:
    while c and not c[-1]:
        c.pop()
    return c


def univariate_resultant(fld: GF2m, a: list[int], b: list[int], da: int, db: int) -> int:
    """Resultant of coefficient lists (low degree first) with formal degrees.

    The characteristic is 2, so no signs appear.
    """
    a = _trim(list(a))
    b = _trim(list(b))
    if not a or not b:
        return 0
    ra, rb = len(a) - 1, len(b) - 1
    if ra < da and rb < db:
        return 0
    scale = 1
    if ra < da:
        scale = fld.pow(b[-1], da - ra)
    elif rb < db:
        scale = fld.pow(a[-1], db - rb)
    return fld.mul(scale, _res_field(fld, a, b))


def _res_field(fld: GF2m, a: list[int], b: list[int]) -> int:
    res = 1
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return fld.mul(res, fld.pow(b[0], m))
        if m == 0:
            return fld.mul(res, fld.pow(a[0], n))
        if m < n:
            a, b = b, a
            continue
        r = _polymod(fld, a, b)
        if not r:
            return 0
        res = fld.mul(res, fld.pow(b[-1], m - (len(r) - 1)))
        a, b = b, r


def _polymod(fld: GF2m, a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    inv = fld.inv(b[-1])
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            continue
        q = fld.mul(c, inv)
        s = k - db
        for j in range(db + 1):
            if b[j]:
                a[s + j] ^= fld.mul(q, b[j])
    return _trim(a[:db])


def _newton_interp(fld: GF2m, xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    """Coefficients (low first) of the interpolating polynomial."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            num = coef[i] ^ coef[i - 1]
            den = xs[i] ^ xs[i - j]
            coef[i] = fld.div(num, den)
    poly = [0] * n
    poly[0] = coef[n - 1]
    deg = 0
    for k in range(n - 2, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        new = [0] * n
        for i in range(deg + 1):
            if poly[i]:
                new[i + 1] ^= poly[i]
                new[i] ^= fld.mul(poly[i], xs[k])
        new[0] ^= coef[k]
        poly = new
        deg += 1
    return poly


def poly_resultant(f: MPoly, g: MPoly, var: str | int) -> MPoly:
    """``Res_var(f, g)`` as a polynomial in the same variable list.

    The eliminated variable no longer occurs in the result.
    """
    if not f or not g:
        raise ZeroInput("resultant with a zero polynomial")
    if f.names != g.names:
        raise FieldMismatch("resultant operands use different variables")
    x = f._idx(var)
    others = [i for i in range(len(f.names)) if i != x]
    dfx, dgx = f.degree(x), g.degree(x)
    if dfx <= 0 and dgx <= 0:
        return MPoly.const(f.names)
    bounds = [dgx * max(f.degree(v), 0) + dfx * max(g.degree(v), 0) for v in others]
    active = [(v, b) for v, b in zip(others, bounds) if b > 0]
    need = max((b + 1 for _, b in active), default=1)
    fld = field(8) if need <= 255 else field(16)
    if need > fld.order:
        raise FieldMismatch("degree bound too large for interpolation")
    grid_pts = [list(range(1, b + 2)) for _, b in active]

    fc = f.coeffs_in(x)
    gc = g.coeffs_in(x)
    values: dict[tuple, int] = {}
    base = [0] * len(f.names)
    for point in product(*grid_pts):
        vals = list(base)
        for (v, _), p in zip(active, point):
            vals[v] = p
        a = [0] * (dfx + 1)
        for d, c in fc.items():
            a[d] = c.eval_raw(fld, vals)
        b = [0] * (dgx + 1)
        for d, c in gc.items():
            b[d] = c.eval_raw(fld, vals)
        values[point] = univariate_resultant(fld, a, b, dfx, dgx)

    # Interpolate one dimension at a time.
    coeff_grid = values
    for dim in range(len(active) - 1, -1, -1):
        xs = grid_pts[dim]
        new: dict[tuple, int] = {}
        prefixes = {k[:dim] + k[dim + 1 :] for k in coeff_grid}
        for pre in prefixes:
            ys = [coeff_grid[pre[:dim] + (p,) + pre[dim:]] for p in xs]
            cs = _newton_interp(fld, xs, ys)
            for e, c in enumerate(cs):
                new[pre[:dim] + (e,) + pre[dim:]] = c
        coeff_grid = new

    terms = {}
    for key, c in coeff_grid.items():
        if not c:
            continue
        e = [0] * len(f.names)
        for (v, _), k in zip(active, key):
            e[v] = k
        terms[tuple(e)] = fld.to_f4(c)
    return MPoly(f.names, terms)
