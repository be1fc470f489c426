"""Exceptions raised by noonsim.
"""


class NoonsimError(Exception):
    """Base class for all noonsim failures.
    """


class DomainError(NoonsimError, ValueError):
    """Raised for parameters outside the domain of an operation.
    """


class DegenerateInputError(DomainError):
    """Raised when an input carries no weight to work with, e.g. a zero
    N-photon component or a zero-mean fringe signal.
    """


class AccuracyError(NoonsimError, ArithmeticError):
    """Raised when a truncated Fock-space computation cannot reach the
    requested accuracy.

    :param message: description of the failure
    :param missing_weight: estimated probability weight lost to truncation
    :param cutoff: the per-mode photon cutoff that was used
    """

    def __init__(self, message, missing_weight, cutoff):
        super(AccuracyError, self).__init__(message)
        self.missing_weight = missing_weight
        self.cutoff = cutoff
