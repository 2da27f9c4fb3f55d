"""q-number arithmetic at configurable precision.

Everything downstream is built from four scalars:

    [t] = (q^t - q^{-t}) / (q - q^{-1})      q-number
    {t} = q^t + q^{-t}                       q-brace
    [n]! = [1][2]...[n]                      q-factorial
    kappa = 2 log(q) / (q - q^{-1})          derivative scale of [t] at q

A :class:`QContext` fixes q, the binary working precision and a numerical
tolerance.  The classical q = 1 limit is an explicit flag (the formulas above
are 0/0 there), in which case [t] = t, {t} = 2 and kappa = 1.  Indices t stay
exact (ints or Fractions) until evaluation; values are mpmath floats.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpf

from .errors import DomainError

#: anything accepted as an exact or floating index/parameter
Real = int | float | Fraction | mpf | str

#: qarith values are plain mpmath floats
QScalar = mpf


def to_mpf(x: Real) -> mpf:
    """Convert x to mpf at the current working precision, Fractions exactly."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


@dataclass(frozen=True)
class QContext:
    """Deformation parameter plus precision settings.

    Use :func:`qcontext` to construct one; it validates the invariants
    (q > 0, |q - 1| > tolerance unless classical, tolerance achievable at
    the requested precision).
    """

    q: mpf
    classical: bool
    precision_bits: int
    tolerance: mpf
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __hash__(self):
        return hash((self.q, self.classical, self.precision_bits, self.tolerance))

    def workprec(self):
        """Context manager setting mpmath's precision to this context's."""
        return mp.workprec(self.precision_bits)

    @property
    def log_q(self) -> mpf:
        """ln q (0 in classical mode)."""
        if self.classical:
            return mpf(0)
        w = self._cache.get("w")
        if w is None:
            with self.workprec():
                w = mp.log(self.q)
            self._cache["w"] = w
        return w

    def inverse_q(self) -> "QContext":
        """The context with q replaced by 1/q (classical mode unchanged)."""
        if self.classical:
            return self
        with self.workprec():
            return qcontext(1 / self.q, self.precision_bits, self.tolerance)

    def power_q(self, t: Real) -> "QContext":
        """The context with q replaced by q^t (classical mode unchanged)."""
        if self.classical:
            return self
        with self.workprec():
            return qcontext(self.q ** to_mpf(t), self.precision_bits, self.tolerance)


def qcontext(q: Real | None = "classical", precision_bits: int = 256,
             tolerance: Real | None = None) -> QContext:
    """Build a validated QContext.

    q may be a number, a numeric string, or "classical"/None for the q = 1
    limit.  tolerance defaults to 2^(-precision_bits/2), the coarsest scale
    trustworthy after rounding accumulation at the requested precision.
    """
    if not isinstance(precision_bits, int) or precision_bits < 64:
        raise DomainError(f"precision_bits must be an integer >= 64, got {precision_bits}")
    with mp.workprec(precision_bits):
        floor = mpf(2) ** (-mpf(precision_bits) / 2)
        tol = floor if tolerance is None else to_mpf(tolerance)
        if not tol > 0:
            raise DomainError("tolerance must be positive")
        if tol < floor:
            raise DomainError(
                f"tolerance {mp.nstr(tol)} below what {precision_bits}-bit "
                f"precision supports ({mp.nstr(floor)})")
        classical = q is None or (isinstance(q, str) and q.strip().lower() == "classical")
        if classical:
            qv = mpf(1)
        else:
            qv = to_mpf(q)
            if not (mp.isfinite(qv) and qv > 0):
                raise DomainError(f"q must be a finite positive real, got {q}")
            if abs(qv - 1) <= tol:
                raise DomainError(
                    "q is numerically indistinguishable from 1; use the classical mode")
    return QContext(q=qv, classical=classical, precision_bits=precision_bits, tolerance=tol)


def q_number(ctx: QContext, t: Real) -> QScalar:
    """[t] = (q^t - q^{-t})/(q - q^{-1}); equals t in classical mode."""
    with ctx.workprec():
        tv = to_mpf(t)
        if ctx.classical:
            return tv
        w = ctx.log_q
        return mp.sinh(tv * w) / mp.sinh(w)


def q_brace(ctx: QContext, t: Real) -> QScalar:
    """{t} = q^t + q^{-t}; equals 2 in classical mode."""
    with ctx.workprec():
        tv = to_mpf(t)
        if ctx.classical:
            return mpf(2)
        return 2 * mp.cosh(tv * ctx.log_q)


def q_power(ctx: QContext, t: Real) -> QScalar:
    """q^t; equals 1 in classical mode."""
    with ctx.workprec():
        if ctx.classical:
            return mpf(1)
        return mp.exp(to_mpf(t) * ctx.log_q)


def q_factorial(ctx: QContext, n: int) -> QScalar:
    """[n]! = prod_{k=1}^n [k], with [0]! = 1.  n must be a non-negative int."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"q_factorial index must be an integer, got {n!r}")
    if n < 0:
        raise DomainError(f"q_factorial undefined for negative index {n}")
    cache = ctx._cache.setdefault("fact", [mpf(1)])
    if n < len(cache):
        return cache[n]
    with ctx.workprec():
        for k in range(len(cache), n + 1):
            cache.append(cache[k - 1] * q_number(ctx, k))
    return cache[n]


def kappa(ctx: QContext) -> QScalar:
    """kappa = 2 log(q)/(q - q^{-1}); equals 1 in classical mode."""
    with ctx.workprec():
        if ctx.classical:
            return mpf(1)
        w = ctx.log_q
        return w / mp.sinh(w)
