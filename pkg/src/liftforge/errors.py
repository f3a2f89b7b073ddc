"""Exception types shared across the package."""


class LiftforgeError(Exception):
    """Base class for all package errors."""


class ParseError(LiftforgeError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class MixedRealizations(LiftforgeError):
    """Arithmetic attempted between scalars of different field realizations."""


class DivisionByZero(LiftforgeError):
    pass


class ZeroPolynomial(LiftforgeError):
    pass


class ZeroDivisor(LiftforgeError):
    pass


class DivisorNotLeftJustified(LiftforgeError):
    """SGDA with M > 0 requires a divisor with nonzero constant term."""


class AllZero(LiftforgeError):
    pass


class NotPerfectReconstruction(LiftforgeError):
    """Determinant is zero or not a monomial."""


class InvalidCoprimification(LiftforgeError):
    pass


class NonPRInput(LiftforgeError):
    pass


class PreconditionViolated(LiftforgeError):
    pass


class QuotientHasZero(LiftforgeError):
    """A lifting step was requested on a quotient that already contains a zero."""


class MultipleZeros(LiftforgeError):
    pass


class NoZero(LiftforgeError):
    pass


class InexactDivision(LiftforgeError):
    pass


class UnknownName(LiftforgeError):
    pass


class SchemaError(LiftforgeError):
    """Schema parsing or execution failure; carries the offending step index."""

    def __init__(self, message, step_index=None):
        if step_index is not None:
            message = f"step {step_index}: {message}"
        super().__init__(message)
        self.step_index = step_index


class BraceMismatch(SchemaError):
    """Members of a brace-set produced different lifting steps."""


class Terminated(LiftforgeError):
    pass


class IllegalChoice(LiftforgeError):
    pass


class NothingToUndo(LiftforgeError):
    pass


class NotCoprime(LiftforgeError):
    pass


class MixedSources(LiftforgeError):
    """Cascades passed together do not expand to the same matrix."""
