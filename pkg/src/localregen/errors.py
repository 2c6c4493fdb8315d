"""Exception types raised across the package.

Everything derives from CodingError so callers can catch the whole family;
most types also derive from the closest builtin (ValueError etc.) so that
generic handling keeps working.
"""


class CodingError(Exception):
    pass


# -- field / matrix layer ----------------------------------------------------

class NonPrimeCharacteristic(CodingError, ValueError):
    pass


class ReduciblePolynomial(CodingError, ValueError):
    pass


class FieldMismatch(CodingError, ValueError):
    pass


class DivideByZero(CodingError, ZeroDivisionError):
    pass


class ShapeMismatch(CodingError, ValueError):
    pass


class SingularMatrix(CodingError, ValueError):
    pass


class NoSolution(CodingError, ValueError):
    pass


class DuplicatePoints(CodingError, ValueError):
    pass


# -- code oracles ------------------------------------------------------------

class TooLarge(CodingError, ValueError):
    """Exhaustive oracle would exceed the configured work cap."""


class EmptySupport(CodingError, ValueError):
    pass


class EmptyShortening(CodingError, ValueError):
    pass


class NotOptimalInput(CodingError, ValueError):
    """Structure checks require a code meeting its distance bound."""


# -- constructions -----------------------------------------------------------

class InfeasibleParams(CodingError, ValueError):
    pass


class FieldTooSmall(CodingError, ValueError):
    pass


class DivisibilityViolation(CodingError, ValueError):
    pass


class InfeasibleComponent(CodingError, ValueError):
    """No regenerating-code provider satisfies the requested constraints."""


class ExhaustedAttempts(CodingError, RuntimeError):
    """Randomized search ran out of attempts.

    Carries the attempt count and the best candidate quality seen, so test
    logs show how close the search got.
    """

    def __init__(self, message, attempts=None, best=None):
        super().__init__(message)
        self.attempts = attempts
        self.best = best


class StageOneFailed(CodingError, RuntimeError):
    pass


# -- repair / evaluation -----------------------------------------------------

class Unrecoverable(CodingError, RuntimeError):
    pass


class RepairFailed(CodingError, RuntimeError):
    pass


class RepairUndefined(CodingError, RuntimeError):
    pass
