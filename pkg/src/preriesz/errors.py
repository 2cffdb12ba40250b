"""Exception hierarchy shared by the library and the CLI."""


class PreRieszError(Exception):
    """Base class for all library errors."""


class InputError(PreRieszError, ValueError):
    """Malformed or inadmissible input (CLI exit code 2)."""


class NotPointedError(InputError):
    """A wedge was given where a pointed cone is required."""


class NotFullDimensionalError(InputError):
    """An operation needs interior points but the cone has none."""


class CapExceeded(PreRieszError):
    """An exponential procedure hit its configured size cap (CLI exit code 3)."""

    def __init__(self, what, cap):
        super().__init__(f"{what} exceeded cap of {cap}")
        self.what = what
        self.cap = cap


class ConsistencyError(PreRieszError, AssertionError):
    """An internal cross-check failed. This signals a bug, not bad input."""
