"""Exception hierarchy.

Every domain error carries a machine-readable ``code`` (the class name) so the
CLI can surface it without string matching.
"""


class RamificationError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


class DivisionByZero(RamificationError, ZeroDivisionError):
    pass


class FieldMismatch(RamificationError, ValueError):
    pass


class PrecisionExhausted(RamificationError, ArithmeticError):
    """A value is indistinguishable from zero at the available precision."""


class ExponentNotDivisible(RamificationError, ValueError):
    pass


class InvalidConductor(RamificationError, ValueError):
    pass


class IndexOutOfRange(RamificationError, IndexError):
    pass


class InvalidOrder(RamificationError, ValueError):
    pass


class InvalidIndex(RamificationError, IndexError):
    pass


class NotTotallyRamified(RamificationError):
    pass


class DegenerateGroup(RamificationError):
    """The defining classes are F_p-dependent, so the Galois group is too small."""


class NotApplicable(RamificationError):
    pass


class NotRamified(RamificationError):
    pass


class NotReduced(RamificationError, ValueError):
    pass


class MonotonicityViolation(RamificationError):
    pass


class ParseError(RamificationError, ValueError):
    """Malformed input; ``details`` locates the problem (field path or line/column)."""

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details
