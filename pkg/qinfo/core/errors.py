"""
Exception hierarchy for qinfo.

All library errors derive from QInfoError. They do not derive
from ValueError so that raising them inside pydantic validators propagates
the original exception instead of a wrapped ValidationError.
"""


class QInfoError(Exception):
    """Base class for every error raised by qinfo."""


class InvalidState(QInfoError):
    """A matrix or parameter set does not describe a valid density operator."""


class InvalidPartition(QInfoError):
    """A partition label is empty, out of range, overlapping or incomplete."""


class InvalidBasis(QInfoError):
    """A measurement basis is not unitary."""


class InvalidChannel(QInfoError):
    """A Kraus set violates the completeness relation."""


class DimensionError(QInfoError):
    """Operands live on incompatible Hilbert spaces."""


class DomainError(QInfoError):
    """A scalar argument lies outside the domain of a function."""


class NumericalFailure(QInfoError):
    """A numerical kernel (eigensolver, factorisation) failed."""


class InfiniteRelativeEntropy(QInfoError):
    """The support of the first argument is not contained in the second."""


class StateParseError(QInfoError):
    """A state, partition or spectrum specification could not be parsed."""


class ConvergenceWarning(UserWarning):
    """No optimizer restart met its convergence criteria."""


__all__ = [
    "QInfoError",
    "InvalidState",
    "InvalidPartition",
    "InvalidBasis",
    "InvalidChannel",
    "DimensionError",
    "DomainError",
    "NumericalFailure",
    "InfiniteRelativeEntropy",
    "StateParseError",
    "ConvergenceWarning",
]
