"""Exception hierarchy.

Every error raised by the library derives from :class:`MeanCLTError`, which is a
``ValueError`` so that callers validating user input can catch either.
"""


class MeanCLTError(ValueError):
    pass


class InvalidDistribution(MeanCLTError):
    """Input arrays do not describe a valid finite-support law."""


class DegenerateDistribution(MeanCLTError):
    """Variance is zero (or below the merge tolerance) where it must be positive."""


class NonCenteredInput(MeanCLTError):
    """Mean differs from zero by more than the centering tolerance."""


class NonCenteredComponent(NonCenteredInput):
    pass


class DegenerateMixture(DegenerateDistribution):
    pass


class NotStandardized(MeanCLTError):
    pass


class ZeroScale(MeanCLTError):
    pass


class DomainError(MeanCLTError):
    pass


class AtomAtZero(MeanCLTError):
    pass


class OneSidedSupport(MeanCLTError):
    pass


class WrongSupportSize(MeanCLTError):
    pass


class ZeroMiddlePoint(MeanCLTError):
    pass


class OrderingViolation(MeanCLTError):
    pass


class MixtureBlowup(MeanCLTError):
    pass


class SupportBlowup(MeanCLTError):
    pass


class EmptyGrid(MeanCLTError):
    pass


class InvariantViolation(AssertionError):
    """A numerically checked inequality or identity failed.

    Deliberately not a ``MeanCLTError``: this signals a failed verification, not bad input.
    """
