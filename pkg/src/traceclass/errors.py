"""Exception hierarchy shared by every module.

Input problems (bad shapes, violated preconditions) derive from
``InputError``; failures of the numerics themselves derive from
``NumericalError``.  The CLI maps the two families to different exit codes.
"""


class TraceClassError(Exception):
    pass


class InputError(TraceClassError, ValueError):
    pass


class NumericalError(TraceClassError, ArithmeticError):
    pass


class EmptyMatrixError(InputError):
    pass


class NonFiniteError(InputError):
    pass


class NonSquareError(InputError):
    pass


class NotHermitianError(InputError):
    pass


class NotPsdError(InputError):
    pass


class NotUnitaryError(InputError):
    pass


class DimensionMismatchError(InputError):
    pass


class InvalidPError(InputError):
    pass


class KOutOfRangeError(InputError):
    pass


class NTooSmallError(InputError):
    pass


class SingularMixError(InputError):
    pass


class UnknownPropertyError(InputError):
    pass


class FormatError(InputError):
    """Malformed JSON document; ``field`` names the offending key."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class NoConvergenceError(NumericalError):
    pass
