"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of the operation."""


class AccuracyError(RuntimeError):
    """A numerical routine could not certify the requested tolerance.

    Carries the achieved error estimate so callers can decide whether the
    partial result is still usable.
    """

    def __init__(self, message, achieved=None, value=None):
        super().__init__(message)
        self.achieved = achieved
        self.value = value


class FitError(RuntimeError):
    """Asymptotic coefficient fit is ill conditioned or under-resolved."""


class StructuralError(ValueError):
    """A symbolic term set violates the structural rules of the rewriting
    engine (unknown symbol, uncontracted index, forbidden integration by
    parts, non-closing variation)."""


class UsageError(ValueError):
    """Invalid CLI usage or configuration; mapped to exit code 2."""
