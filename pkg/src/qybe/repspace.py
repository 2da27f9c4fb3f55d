"""Spin representations, coproduct actions, projectors and highest-weight bases.

Conventions: the spin-s module V_s has basis |m>, m = s, s-1, ..., -s stored
in that order, so index i carries twice-weight tm = 2s - 2i.  Generators obey

    [S^+, S^-] = [2 S^z],   [S^z, S^pm] = +- S^pm,
    S^pm |m> = sqrt([s -+ m][s +- m + 1]) |m +- 1>,

and the two/three-site actions come from the coproduct

    D(S^pm) = S^pm (x) q^{-S^z} + q^{S^z} (x) S^pm.

All matrices are numpy object arrays of mpmath floats; weights are kept as
exact integers (twice-weights) throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import mp, mpf

from . import linalg
from .errors import DegenerateKernelError, DomainError
from .qarith import QContext, q_number, q_power

COUPLED_23 = "coupled23"
COUPLED_12 = "coupled12"


@dataclass(frozen=True, order=True)
class Spin:
    """Half-integer spin stored exactly as twice its value."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int) or self.twice < 0:
            raise DomainError(f"twice_spin must be a non-negative integer, got {self.twice}")

    @classmethod
    def parse(cls, value) -> "Spin":
        """Accept Spin, int, Fraction, float, or strings like "3/2"."""
        if isinstance(value, Spin):
            return value
        if isinstance(value, bool):
            raise DomainError("spin must be numeric")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, Fraction):
            f = value
        elif isinstance(value, float):
            f = Fraction(value).limit_denominator(2)
        elif isinstance(value, str):
            f = Fraction(value.strip())
        else:
            raise DomainError(f"cannot parse spin from {value!r}")
        twice = f * 2
        if twice.denominator != 1:
            raise DomainError(f"spin must be integer or half-integer, got {value}")
        return cls(int(twice))

    @property
    def dim(self) -> int:
        return self.twice + 1

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def index_range(s: Spin, n: int) -> range:
    """Index set I_n of the level-n highest-weight subspace of V_s^(x)3.

    0 <= k <= n below the midpoint (n <= 2s), n-2s <= k <= 4s-n above it.
    """
    ts = s.twice
    if not 0 <= n <= (3 * ts) // 2:
        raise DomainError(f"level n={n} outside 0..floor(3s)={3 * ts // 2} for s={s}")
    return range(max(0, n - ts), min(n, 2 * ts - n) + 1)


def level_dimension(s: Spin, n: int) -> int:
    return len(index_range(s, n))


def _cache(ctx: QContext, key, builder):
    store = ctx._cache
    if key not in store:
        store[key] = builder()
    return store[key]


# ---------------------------------------------------------------------------
# single-site operators


def spin_generators(ctx: QContext, s: Spin):
    """(S^z, S^+, S^-) on V_s.  S^z is diagonal with eigenvalues s..-s."""
    def build():
        ts, d = s.twice, s.dim
        with ctx.workprec():
            sz = linalg.zeros(d, d)
            sp = linalg.zeros(d, d)
            for i in range(d):
                sz[i, i] = mpf(ts - 2 * i) / 2
            for i in range(1, d):
                # S^+ |m> with m = s - i lands on index i-1
                sp[i - 1, i] = mp.sqrt(q_number(ctx, i) * q_number(ctx, ts - i + 1))
            sm = sp.T.copy()
        return sz, sp, sm
    return _cache(ctx, ("gens", s.twice), build)


def q_sz(ctx: QContext, s: Spin, sign: int = 1) -> np.ndarray:
    """Diagonal matrix q^{sign * S^z} on V_s."""
    def build():
        d = s.dim
        with ctx.workprec():
            m = linalg.zeros(d, d)
            for i in range(d):
                m[i, i] = q_power(ctx, Fraction(sign * (s.twice - 2 * i), 2))
        return m
    return _cache(ctx, ("qsz", s.twice, sign), build)


# ---------------------------------------------------------------------------
# coproduct actions


def coproduct2(ctx: QContext, s: Spin, which: str) -> np.ndarray:
    """Action of Delta(S^z), Delta(S^+) or Delta(S^-) on V_s (x) V_s."""
    def build():
        sz, sp, sm = spin_generators(ctx, s)
        e = linalg.eye(s.dim)
        with ctx.workprec():
            if which == "z":
                return np.kron(sz, e) + np.kron(e, sz)
            g = sp if which == "plus" else sm
            return np.kron(g, q_sz(ctx, s, -1)) + np.kron(q_sz(ctx, s, +1), g)
    if which not in ("z", "plus", "minus"):
        raise DomainError(f"unknown generator {which!r}")
    return _cache(ctx, ("cop2", s.twice, which), build)


def coproduct3(ctx: QContext, s: Spin, which: str, grouping: str = "left") -> np.ndarray:
    """Three-site action of a generator on V_s^(x)3.

    grouping "left" applies (Delta (x) id) Delta, "right" applies
    (id (x) Delta) Delta; co-associativity makes them agree.
    """
    if which not in ("z", "plus", "minus"):
        raise DomainError(f"unknown generator {which!r}")
    if grouping not in ("left", "right"):
        raise DomainError(f"unknown grouping {grouping!r}")

    def build():
        sz, sp, sm = spin_generators(ctx, s)
        e = linalg.eye(s.dim)
        with ctx.workprec():
            if which == "z":
                return (np.kron(np.kron(sz, e), e) + np.kron(np.kron(e, sz), e)
                        + np.kron(np.kron(e, e), sz))
            g2 = coproduct2(ctx, s, which)
            g1 = sp if which == "plus" else sm
            qp, qm = q_sz(ctx, s, +1), q_sz(ctx, s, -1)
            if grouping == "left":
                return np.kron(g2, qm) + np.kron(np.kron(qp, qp), g1)
            return np.kron(qp, g2) + np.kron(g1, np.kron(qm, qm))
    return _cache(ctx, ("cop3", s.twice, which, grouping), build)


# ---------------------------------------------------------------------------
# weight grading

def weight_groups(s: Spin, nsites: int) -> dict[int, list[int]]:
    """Map twice-total-weight -> ordered list of product-basis indices."""
    d, ts = s.dim, s.twice
    groups: dict[int, list[int]] = {}
    for i in range(d ** nsites):
        rem, tw = i, nsites * ts
        for _ in range(nsites):
            tw -= 2 * (rem % d)
            rem //= d
        groups.setdefault(tw, []).append(i)
    return groups


def _weight_groups_cached(ctx: QContext, s: Spin, nsites: int):
    return _cache(ctx, ("wg", s.twice, nsites), lambda: weight_groups(s, nsites))


def _raising_blocks3(ctx: QContext, s: Spin) -> dict[int, np.ndarray]:
    """Blocks of the three-site raising operator between adjacent weights."""
    def build():
        sp3 = coproduct3(ctx, s, "plus")
        groups = _weight_groups_cached(ctx, s, 3)
        blocks = {}
        for tw, cols in groups.items():
            rows = groups.get(tw + 2)
            if rows is None:
                blocks[tw] = linalg.zeros(0, len(cols))
                continue
            b = linalg.zeros(len(rows), len(cols))
            for bi, i in enumerate(rows):
                for bj, j in enumerate(cols):
                    b[bi, bj] = sp3[i, j]
            blocks[tw] = b
        return blocks
    return _cache(ctx, ("sp3blocks", s.twice), build)


# ---------------------------------------------------------------------------
# two-site irreducible towers and projectors


def pair_tower(ctx: QContext, s: Spin, j: int) -> list[np.ndarray]:
    """Orthonormal spin-j tower |j, mu>, mu = j..-j, inside V_s (x) V_s.

    The highest vector's component on |m1 = s - (s-j)| ... i.e. on the
    largest first-factor weight is taken positive; descendants follow by
    repeated lowering, which keeps all matrix elements positive.
    """
    if not 0 <= j <= s.twice:
        raise DomainError(f"pair spin j={j} outside 0..2s for s={s}")

    def build():
        d, ts = s.dim, s.twice
        sp2 = coproduct2(ctx, s, "plus")
        sm2 = coproduct2(ctx, s, "minus")
        groups = _weight_groups_cached(ctx, s, 2)
        with ctx.workprec():
            cols = groups[2 * j]
            rows = groups.get(2 * j + 2, [])
            block = linalg.zeros(max(len(rows), 1), len(cols))
            for bi, i in enumerate(rows):
                for bj, c in enumerate(cols):
                    block[bi, bj] = sp2[i, c]
            kern = linalg.nullspace(block)
            if len(kern) != 1:
                raise DegenerateKernelError(
                    f"weight-{j} pair kernel has dimension {len(kern)}, expected 1")
            coeffs = kern[0]
            # cols are ordered by increasing index, i.e. decreasing first weight
            if coeffs[0] < 0:
                coeffs = -coeffs
            if abs(coeffs[0]) <= ctx.tolerance:
                raise DegenerateKernelError("vanishing leading CG component")
            top = linalg.zeros(d * d)
            for bj, c in enumerate(cols):
                top[c] = coeffs[bj]
            tower = [top / linalg.norm(top)]
            for _ in range(2 * j):
                nxt = sm2 @ tower[-1]
                tower.append(nxt / linalg.norm(nxt))
        return tower
    return _cache(ctx, ("tower2", s.twice, j), build)


def projectors(ctx: QContext, s: Spin) -> list[np.ndarray]:
    """Orthogonal projectors P^0..P^{2s} onto the spin-j components of V_s^(x)2."""
    def build():
        d = s.dim
        with ctx.workprec():
            out = []
            for j in range(s.twice + 1):
                p = linalg.zeros(d * d, d * d)
                for v in pair_tower(ctx, s, j):
                    p = p + linalg.outer(v, v)
                out.append(p)
        return out
    return _cache(ctx, ("proj", s.twice), build)


def permutation(ctx: QContext, s: Spin) -> np.ndarray:
    """The (q-deformed) permutation P = sum_j (-1)^{2s-j} P^j on V_s^(x)2."""
    def build():
        with ctx.workprec():
            ps = projectors(ctx, s)
            acc = linalg.zeros(s.dim ** 2, s.dim ** 2)
            for j, p in enumerate(ps):
                acc = acc + p if (s.twice - j) % 2 == 0 else acc - p
        return acc
    return _cache(ctx, ("perm", s.twice), build)


# ---------------------------------------------------------------------------
# highest-weight bases of W_n


@dataclass(frozen=True)
class HighestWeightBasis:
    """Orthonormal basis of the level-n highest-weight subspace of V_s^(x)3.

    vectors[i] corresponds to k = ks[i]: the pair (sites {23} or {12}
    depending on the convention) is coupled to spin 2s-k.
    """

    s: Spin
    n: int
    convention: str
    ks: tuple[int, ...]
    vectors: tuple[np.ndarray, ...]


def highest_weight_basis(ctx: QContext, s: Spin, n: int,
                         convention: str = COUPLED_23) -> HighestWeightBasis:
    """Construct the coupled basis of W_n by solving the raising condition.

    For each k the candidate space is (site) (x) (spin 2s-k pair tower) at
    total twice-weight 3*2s - 2n; its intersection with the kernel of the
    three-site raising operator is one-dimensional.  Signs follow the
    standard convention: the component with the largest first-factor weight
    is positive (first factor = site 1 for coupled23, the pair for coupled12).
    """
    if convention not in (COUPLED_23, COUPLED_12):
        raise DomainError(f"unknown convention {convention!r}")

    def build():
        ts, d = s.twice, s.dim
        tw_total = 3 * ts - 2 * n
        groups = _weight_groups_cached(ctx, s, 3)
        block = _raising_blocks3(ctx, s)[tw_total]
        col_of = {i: bi for bi, i in enumerate(groups[tw_total])}
        vectors, ks = [], []
        with ctx.workprec():
            for k in index_range(s, n):
                tj = 2 * (ts - k)            # twice the pair spin
                tower = pair_tower(ctx, s, ts - k)
                cands, sites = [], []
                # site weight tm, pair twice-weight tmu = tw_total - tm
                for i_site in range(d):
                    tm = ts - 2 * i_site
                    tmu = tw_total - tm
                    if abs(tmu) > tj:
                        continue
                    tvec = tower[(tj - tmu) // 2]
                    full = linalg.zeros(d ** 3)
                    if convention == COUPLED_23:
                        base = i_site * d * d
                        for p in range(d * d):
                            if tvec[p]:
                                full[base + p] = tvec[p]
                    else:
                        for p in range(d * d):
                            if tvec[p]:
                                full[p * d + i_site] = tvec[p]
                    cands.append(full)
                    sites.append(i_site)
                cand_block = linalg.zeros(len(groups[tw_total]), len(cands))
                for cj, v in enumerate(cands):
                    for i, x in enumerate(v):
                        if x:
                            cand_block[col_of[i], cj] = x
                images = block @ cand_block
                kern = linalg.nullspace(images)
                if len(kern) != 1:
                    raise DegenerateKernelError(
                        f"W_{n} at k={k} gave kernel dimension {len(kern)}")
                coeffs = kern[0]
                if convention == COUPLED_23:
                    # first factor = site 1; candidates are ordered by
                    # decreasing site weight, so the lead sits at index 0
                    lead = coeffs[0]
                else:
                    # first factor = the {12} pair at its own top weight
                    # tmu = tj, i.e. site weight index i_site = n - k
                    lead = coeffs[sites.index(n - k)]
                if abs(lead) <= ctx.tolerance:
                    raise DegenerateKernelError("vanishing leading coupling component")
                if lead < 0:
                    coeffs = -coeffs
                vec = linalg.zeros(d ** 3)
                for cj, v in enumerate(cands):
                    c = coeffs[cj]
                    if c:
                        for i, x in enumerate(v):
                            if x:
                                vec[i] += c * x
                vectors.append(vec)
                ks.append(k)
            vectors = linalg.mgs_orthonormalize(vectors)
        return HighestWeightBasis(s=s, n=n, convention=convention,
                                  ks=tuple(ks), vectors=tuple(vectors))
    return _cache(ctx, ("hwb", s.twice, n, convention), build)


def highest_weight_space_dimension(ctx: QContext, s: Spin, n: int) -> int:
    """dim W_n computed brute force as the kernel dimension at that weight."""
    ts = s.twice
    tw_total = 3 * ts - 2 * n
    with ctx.workprec():
        block = _raising_blocks3(ctx, s)[tw_total]
        return len(linalg.nullspace(block))
