"""Exception types shared across the package."""


class FincatError(Exception):
    """Base class for all package errors."""


class CompositionError(FincatError):
    """Raised when composing morphisms whose endpoints do not match."""


class BoundExceededError(FincatError):
    """An enumeration would exceed the configured carrier bound."""


class UnsupportedCategoryError(FincatError):
    """The requested construction does not exist in this category."""


class NonCommutingCoconeError(FincatError):
    """A cocone handed to a mediator does not commute over its span."""


class OracleFailureError(FincatError):
    """A construction-category oracle declined a step it was asked to perform."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class InsufficientChainError(FincatError):
    """A chain fails the type-realization hypothesis needed by a construction."""


class ClosureViolationError(FincatError):
    """A structure family is not closed under induced substructures."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FormulaParseError(FincatError):
    """Bad formula text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at column {position})")
        self.position = position


class ElementNotInUniverseError(FincatError):
    """An element was used with an object whose carrier does not contain it."""
