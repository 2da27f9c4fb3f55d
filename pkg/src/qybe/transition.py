"""Change-of-basis (transition) matrices between the two coupled bases of W_n.

Two independent routes to the same matrix:

* a closed form built from a single family of 6-j symbols evaluated as an
  alternating sum over q-factorials, and
* an oracle that constructs both highest-weight bases explicitly and takes
  their Gram matrix.

A^(s,n) is symmetric, involutive (A^2 = identity), invariant under
q -> 1/q, and obeys two spin-level duality relations.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf

from . import linalg
from .errors import DomainError
from .qarith import QContext, QScalar, q_factorial, q_number
from .repspace import (COUPLED_12, COUPLED_23, Spin, highest_weight_basis,
                       index_range)


@dataclass(frozen=True)
class TransitionMatrix:
    """Dense symmetric matrix indexed by k, k' in I_n (offset = min I_n)."""

    s: Spin
    n: int
    ks: tuple[int, ...]
    mat: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.ks)

    def entry(self, k: int, kp: int) -> QScalar:
        off = self.ks[0]
        return self.mat[k - off, kp - off]

    def trace(self) -> QScalar:
        return sum(self.mat[i, i] for i in range(self.dim))

    def symmetry_residual(self) -> QScalar:
        return linalg.max_abs(self.mat - self.mat.T)

    def involution_residual(self) -> QScalar:
        return linalg.max_abs(self.mat @ self.mat - linalg.eye(self.dim))


def six_j(ctx: QContext, s: Spin, n: int, k: int, kp: int) -> QScalar:
    """The 6-j symbol {s s s; 3s-n, 2s-k, 2s-k'} as an alternating q-factorial sum.

    The summation index runs over the integers for which every factorial
    argument is non-negative.
    """
    rng = index_range(s, n)
    if k not in rng or kp not in rng:
        raise DomainError(f"k={k}, k'={kp} outside index range {rng} for s={s}, n={n}")
    ts = s.twice
    s4, s6, s8 = 2 * ts, 3 * ts, 4 * ts
    with ctx.workprec():
        total = mpf(0)
        lmin = max(s4 - k, s4 - kp, s6 - n - k, s6 - n - kp)
        lmax = min(s6 - n, s6 - k - kp, s8 - n - k - kp)
        for l in range(lmin, lmax + 1):
            den = (q_factorial(ctx, l - s4 + k) * q_factorial(ctx, l - s4 + kp)
                   * q_factorial(ctx, l - s6 + n + k) * q_factorial(ctx, l - s6 + n + kp)
                   * q_factorial(ctx, s6 - n - l) * q_factorial(ctx, s6 - k - kp - l)
                   * q_factorial(ctx, s8 - n - k - kp - l))
            term = q_factorial(ctx, l + 1) / den
            total += term if l % 2 == 0 else -term
        return _f_factor(ctx, s, n, k) * _f_factor(ctx, s, n, kp) * total


def _f_factor(ctx: QContext, s: Spin, n: int, k: int) -> QScalar:
    ts = s.twice
    s4, s6 = 2 * ts, 3 * ts
    num = (q_factorial(ctx, k) * q_factorial(ctx, n - k)
           * q_factorial(ctx, ts - n + k) * q_factorial(ctx, s4 - n - k))
    den = q_factorial(ctx, s4 - k + 1) * q_factorial(ctx, s6 - n - k + 1)
    return q_factorial(ctx, ts - k) * mp.sqrt(num / den)


def transition_matrix(ctx: QContext, s: Spin, n: int) -> TransitionMatrix:
    """Closed-form A^(s,n): prefactored 6-j symbols."""
    rng = index_range(s, n)
    ks = tuple(rng)
    ts = s.twice
    with ctx.workprec():
        m = linalg.zeros(len(ks), len(ks))
        sign = mpf(1) if (ts - n) % 2 == 0 else mpf(-1)
        for i, k in enumerate(ks):
            for j, kp in enumerate(ks):
                if j < i:
                    m[i, j] = m[j, i]
                    continue
                pref = mp.sqrt(q_number(ctx, 2 * ts - 2 * k + 1)
                               * q_number(ctx, 2 * ts - 2 * kp + 1))
                m[i, j] = sign * pref * six_j(ctx, s, n, k, kp)
    return TransitionMatrix(s=s, n=n, ks=ks, mat=m)


def last_column_sign(s: Spin, n: int, k: int) -> int:
    """Predicted sign of A^(s,n)_{k, max I_n}: (-1)^(k - min I_n).

    For n <= 2s this is the single-term closed form's (-1)^k; for larger n it
    follows from the spin-level duality with shifted indices.
    """
    return 1 if (k - index_range(s, n).start) % 2 == 0 else -1


def transition_matrix_oracle(ctx: QContext, s: Spin, n: int) -> TransitionMatrix:
    """A^(s,n) as the Gram matrix of the two explicitly constructed bases.

    Basis vectors are sign-aligned so that the last column carries the signs
    the closed form fixes and the first row is positive; if the constructed
    conventions already agree (they should), the alignment is a no-op.
    """
    b23 = highest_weight_basis(ctx, s, n, COUPLED_23)
    b12 = highest_weight_basis(ctx, s, n, COUPLED_12)
    ks = b23.ks
    dim = len(ks)
    with ctx.workprec():
        g = linalg.zeros(dim, dim)
        for i in range(dim):
            for j in range(dim):
                g[i, j] = linalg.vdot(b23.vectors[i], b12.vectors[j])
        # align row signs from the last column, then column signs from row 0
        for i, k in enumerate(ks):
            want = last_column_sign(s, n, k)
            have = g[i, dim - 1]
            if have != 0 and (have > 0) != (want > 0):
                g[i, :] = -g[i, :]
        for j in range(dim):
            if g[0, j] < 0:
                g[:, j] = -g[:, j]
    return TransitionMatrix(s=s, n=n, ks=ks, mat=g)


def spin_half_duality_residual(ctx: QContext, s: Spin, n: int = 1) -> QScalar:
    """Deviation in A^(s,1)_q = A^(1/2,1)_{q^{2s}}."""
    if n != 1:
        raise DomainError("the spin-half duality applies to n = 1")
    a = transition_matrix(ctx, s, 1)
    ctx2 = ctx.power_q(s.twice)
    b = transition_matrix(ctx2, Spin(1), 1)
    with ctx.workprec():
        return linalg.max_abs(a.mat - b.mat)


def level_duality_residual(ctx: QContext, s: Spin, n: int) -> QScalar:
    """Deviation in A^(s,n) = A^(2s - n/2, 6s - 2n) with indices shifted by 2s - n."""
    ts = s.twice
    if n > ts:
        raise DomainError("the spin-level duality is stated for n <= 2s")
    a = transition_matrix(ctx, s, n)
    sd = Spin(2 * ts - n)
    nd = 3 * ts - 2 * n
    b = transition_matrix(ctx, sd, nd)
    shift = ts - n  # k -> k + 2s - n
    with ctx.workprec():
        dev = mpf(0)
        for k in a.ks:
            for kp in a.ks:
                d = abs(a.entry(k, kp) - b.entry(k + shift, kp + shift))
                if d > dev:
                    dev = d
        return dev


def check_dualities(ctx: QContext, s: Spin, n: int) -> dict:
    """Max deviations of both duality relations (the n=1 one when n == 1)."""
    report = {"level_duality": level_duality_residual(ctx, s, n)}
    if n == 1:
        report["spin_half_duality"] = spin_half_duality_residual(ctx, s, 1)
    return report
