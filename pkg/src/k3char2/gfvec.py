"""Vectorized GF(2^m) arithmetic on numpy arrays (m <= 16).

Used for bulk screening: ranks of many small matrices at once and the
evaluation of forms over every point of P^2(GF(2^m)).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .gf import GF2m, field


class VecField:
    def __init__(self, fld: GF2m) -> None:
        self.fld = fld
        self.exp = np.array(fld._exp, dtype=np.int64)
        log = np.array(fld._log, dtype=np.int64)
        self.log = log
        self.order = fld.order

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a: np.ndarray) -> np.ndarray:
        """Inverse with ``inv(0) = 0`` (callers mask zeros themselves)."""
        a = np.asarray(a, dtype=np.int64)
        r = self.exp[(self.order - self.log[a]) % self.order]
        return np.where(a == 0, 0, r)

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        r = self.exp[(self.log[a] * e) % self.order]
        return np.where(a == 0, 0, r)


@lru_cache(maxsize=None)
def vec_field(m: int) -> VecField:
    return VecField(field(m))


def batched_rank(vf: VecField, mats: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices with shape ``(n, rows, cols)``."""
    a = np.array(mats, dtype=np.int64, copy=True)
    n, rows, cols = a.shape
    used = np.zeros((n, rows), dtype=bool)
    rank = np.zeros(n, dtype=np.int64)
    idx = np.arange(n)
    for j in range(cols):
        cand = (a[:, :, j] != 0) & ~used
        has = cand.any(axis=1)
        piv = np.argmax(cand, axis=1)
        prow = a[idx, piv, :]  # (n, cols)
        pinv = vf.inv(prow[:, j])
        for i in range(rows):
            f = vf.mul(a[:, i, j], pinv)
            f = np.where(has & (piv != i), f, 0)
            a[:, i, :] ^= vf.mul(f[:, None], prow)
        used[idx[has], piv[has]] = True
        rank += has
    return rank


def projective_points(m: int) -> np.ndarray:
    """All points of P^2(GF(2^m)) with first nonzero coordinate 1, shape (N, 3)."""
    q = 1 << m
    r = np.arange(q, dtype=np.int64)
    yy, zz = np.meshgrid(r, r, indexing="ij")
    a = np.stack([np.ones(q * q, dtype=np.int64), yy.ravel(), zz.ravel()], axis=1)
    b = np.stack([np.zeros(q, dtype=np.int64), np.ones(q, dtype=np.int64), r], axis=1)
    c = np.array([[0, 0, 1]], dtype=np.int64)
    return np.concatenate([a, b, c])


def eval_forms(vf: VecField, forms: Sequence[dict], pts: np.ndarray) -> np.ndarray:
    """Evaluate homogeneous forms ``{(a,b,c): coeff}`` at many points.

    Returns an array of shape ``(len(forms), len(pts))``.
    """
    maxdeg = max((sum(e) for f in forms for e in f), default=0)
    powers = [[np.ones(len(pts), dtype=np.int64)] for _ in range(3)]
    for v in range(3):
        for _ in range(maxdeg):
            powers[v].append(vf.mul(powers[v][-1], pts[:, v]))
    out = np.zeros((len(forms), len(pts)), dtype=np.int64)
    for k, f in enumerate(forms):
        acc = np.zeros(len(pts), dtype=np.int64)
        for (a, b, c), coef in f.items():
            if not coef:
                continue
            t = vf.mul(vf.mul(powers[0][a], powers[1][b]), powers[2][c])
            acc ^= vf.mul(np.full(len(pts), coef, dtype=np.int64), t)
        out[k] = acc
    return out
