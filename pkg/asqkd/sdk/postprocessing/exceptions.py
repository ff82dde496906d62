# asqkd SDK - Postprocessing Module Exceptions


class PostprocessingError(Exception):
    """Base exception for reconciliation and privacy amplification."""
    pass


class KeyLengthMismatchError(PostprocessingError, ValueError):
    """Raised when Alice's and Bob's keys do not have the same length."""
    pass


class ReconciliationError(PostprocessingError, ValueError):
    """Raised for invalid reconciliation parameters (block size, pass count)."""
    pass


class OutputLengthError(PostprocessingError, ValueError):
    """Raised when the requested hash output is longer than the input key."""
    pass


class QberRangeError(PostprocessingError, ValueError):
    """Raised when an observed error rate is outside [0, 1/2)."""
    pass


class GoldenFileError(PostprocessingError):
    """Raised when a golden vector file is missing fields or malformed."""
    pass


__all__ = [
    "PostprocessingError",
    "KeyLengthMismatchError",
    "ReconciliationError",
    "OutputLengthError",
    "QberRangeError",
    "GoldenFileError",
]
