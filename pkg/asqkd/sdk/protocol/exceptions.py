# asqkd SDK - Protocol Module Exceptions
#
# A protocol abort is a normal outcome (RunResult.aborted), never an exception.


class ProtocolError(Exception):
    """Base exception for the protocol engine."""
    pass


class ConfigurationError(ProtocolError, ValueError):
    """Invalid protocol parameter. `key` names the offending configuration key."""

    def __init__(self, key: str, message: str):
        self.key = key
        self.message = message
        super().__init__(message)

    def __str__(self) -> str:
        return self.message


class ProtocolMismatchError(ProtocolError):
    """A run function was called with a config for a different protocol."""
    pass


class TranscriptClosedError(ProtocolError):
    """An announcement was attempted after the ABORT notice."""
    pass


__all__ = ["ProtocolError", "ConfigurationError", "ProtocolMismatchError", "TranscriptClosedError"]
