"""Exception hierarchy.

Every input problem raises a subclass of :class:`ChainError`, which is itself a
``ValueError`` so callers that only care about "bad input" can catch that.
"""

from __future__ import annotations


class ChainError(ValueError):
    """Base class for all errors raised by this package."""


class LengthMismatch(ChainError):
    pass


class NonPositiveCoupling(ChainError):
    pass


class NonFinite(ChainError):
    pass


class DimensionMismatch(ChainError):
    pass


class NotNormalized(ChainError):
    pass


class ThetaOutOfRange(ChainError):
    pass


class NotMirrorSymmetric(ChainError):
    pass


class NotTridiagonal(ChainError):
    """The conjugated matrix leaked outside the tridiagonal band."""


class PhaseEstimationFailure(ChainError):
    pass


class TooLarge(ChainError):
    pass


class BadSite(ChainError):
    pass


class ConvergenceFailure(RuntimeError):
    """The tridiagonal QL iteration ran out of sweeps.

    Not an input error: a symmetric tridiagonal matrix always diagonalizes, so
    hitting this means the solver itself is broken.
    """
