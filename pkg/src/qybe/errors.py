"""Exception types shared across the package."""


class QybeError(Exception):
    """Base class for all package-specific errors."""


class DomainError(QybeError, ValueError):
    """Input outside an operation's documented domain."""


class PoleError(QybeError, ArithmeticError):
    """Evaluation requested too close to a pole of a spectral coefficient."""


class DegenerateKernelError(QybeError, RuntimeError):
    """A weight block produced an unexpected kernel dimension.

    For real q > 0 away from 1 this cannot happen; it signals q numerically
    too close to a degenerate point for the working precision.
    """
