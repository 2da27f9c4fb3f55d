"""Dense linear algebra over mpmath floats stored in object ndarrays.

Matrices here never exceed a few hundred rows, so everything is direct:
Gaussian elimination for null spaces, modified Gram-Schmidt for
orthonormalization.  All routines are deterministic (no randomized pivoting).
"""
from __future__ import annotations

import numpy as np
from mpmath import mp, mpf

from .errors import DegenerateKernelError

_ZERO = mpf(0)
_ONE = mpf(1)


def zeros(n: int, m: int | None = None) -> np.ndarray:
    if m is None:
        return np.full(n, _ZERO, dtype=object)
    return np.full((n, m), _ZERO, dtype=object)


def eye(n: int) -> np.ndarray:
    a = zeros(n, n)
    for i in range(n):
        a[i, i] = _ONE
    return a


def from_rows(rows) -> np.ndarray:
    return np.array([[mpf(x) if not isinstance(x, mpf) else x for x in r] for r in rows],
                    dtype=object)


def max_abs(a) -> mpf:
    """Largest |entry| of an array (0 for an empty one)."""
    best = _ZERO
    flat = a.flat if isinstance(a, np.ndarray) else a
    for x in flat:
        v = abs(x)
        if v > best:
            best = v
    return best


def vdot(u: np.ndarray, v: np.ndarray) -> mpf:
    s = _ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def norm(u: np.ndarray) -> mpf:
    return mp.sqrt(vdot(u, u))


def outer(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.outer(u, v)


def mgs_orthonormalize(vectors: list[np.ndarray], passes: int = 2) -> list[np.ndarray]:
    """Modified Gram-Schmidt with a re-orthogonalization pass.

    Preserves the direction (and hence sign convention) of each vector up to
    the subtraction of earlier components.
    """
    out: list[np.ndarray] = []
    for v in vectors:
        w = v.copy()
        for _ in range(passes):
            for u in out:
                w = w - vdot(u, w) * u
        nw = norm(w)
        if nw == 0:
            raise DegenerateKernelError("linearly dependent vector set")
        out.append(w / nw)
    return out


def nullspace(a: np.ndarray, rel_tol: mpf | None = None,
              scale: mpf | None = None) -> list[np.ndarray]:
    """Orthonormal basis of the kernel of a (m x n), via full row reduction.

    Pivots below rel_tol * scale are treated as zero; rel_tol defaults to
    2^(-prec/2) at the current working precision and scale to max|a|.
    Pass the scale of the operator that produced `a` when `a` itself may be
    rounding noise (e.g. images of vectors already in the kernel).
    """
    m, n = a.shape
    if rel_tol is None:
        rel_tol = mpf(2) ** (-(mp.prec // 2))
    if scale is None:
        scale = max_abs(a)
    if scale == 0:
        return [eye(n)[:, j].copy() for j in range(n)]
    tol = rel_tol * scale
    r = a.copy()
    pivot_cols: list[int] = []
    pivot_rows: list[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        best, best_i = _ZERO, -1
        for i in range(row, m):
            v = abs(r[i, col])
            if v > best:
                best, best_i = v, i
        if best <= tol:
            continue
        if best_i != row:
            r[[row, best_i], :] = r[[best_i, row], :]
        piv = r[row, col]
        r[row, col:] = r[row, col:] / piv
        for i in range(m):
            if i != row and r[i, col] != 0:
                r[i, col:] = r[i, col:] - r[i, col] * r[row, col:]
        pivot_cols.append(col)
        pivot_rows.append(row)
        row += 1
    free_cols = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        v = zeros(n)
        v[f] = _ONE
        for pc, pr in zip(pivot_cols, pivot_rows):
            v[pc] = -r[pr, f]
        basis.append(v)
    if not basis:
        return []
    return mgs_orthonormalize(basis)
