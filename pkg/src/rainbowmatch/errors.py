"""Typed errors shared across the package."""


class RainbowError(Exception):
    """Base class for all package errors."""


class InputError(RainbowError):
    """Malformed or out-of-contract input data."""


class PreconditionError(RainbowError):
    """A solver was invoked outside its guaranteed regime."""


class TheoremViolationError(RainbowError):
    """A guaranteed step of an algorithm failed.

    This signals either an implementation bug or a genuine counterexample
    to the guarantee, so the offending instance is attached when available.
    """

    def __init__(self, message, instance=None):
        super().__init__(message)
        self.instance = instance
