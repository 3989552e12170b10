"""Exception hierarchy shared across the package."""


class TameFieldsError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(TameFieldsError):
    pass


class BoundExceeded(TameFieldsError):
    pass


class NotPrime(TameFieldsError, ValueError):
    pass


class UnsupportedField(TameFieldsError):
    pass


class WrongRing(UnsupportedField, TypeError):
    pass


class PrecisionLoss(TameFieldsError):
    """An element is zero only up to its precision, not exactly zero."""


class PrecisionExhausted(TameFieldsError):
    pass


class NonUnitValue(TameFieldsError):
    pass


class DivisionByZero(TameFieldsError, ZeroDivisionError):
    pass


class UnsupportedBackend(TameFieldsError):
    pass


class DependentValues(TameFieldsError):
    pass


class PreconditionFailed(TameFieldsError):
    def __init__(self, which, message=None):
        self.which = which
        super().__init__(message or which)


class NotSquarefree(TameFieldsError):
    pass


class UnsupportedShape(TameFieldsError):
    pass


class StepBoundExceeded(TameFieldsError):
    pass


class TailTooShort(TameFieldsError):
    pass


class InstanceIllFormed(TameFieldsError):
    pass


class NotClosed(TameFieldsError):
    pass


class DepthBoundExceeded(TameFieldsError):
    pass


class DSLSyntaxError(TameFieldsError):
    def __init__(self, message, line=1, col=1):
        self.line = line
        self.col = col
        super().__init__(f"{message} (line {line}, col {col})")


class SemanticError(TameFieldsError):
    pass
