"""Exception base classes shared by the engine.

Every refusal carries enough attributes for the command line to name the
precondition that failed.
"""

from __future__ import annotations


class HallEngineError(Exception):
    """Base class for all engine errors."""


class PreconditionError(HallEngineError):
    """Raised when an operation's stated precondition does not hold."""

    def __init__(self, message: str, precondition: str = ""):
        self.precondition = precondition
        super().__init__(message)


class UnsupportedError(HallEngineError):
    """Raised for inputs outside the supported range of a closed formula."""

    def __init__(self, message: str, reason: str = ""):
        self.reason = reason
        super().__init__(message)
