# asqkd SDK - Analysis Module Exceptions


class AnalysisError(Exception):
    """Base exception for proportion analysis and sweeps."""
    pass


class SweepAxisError(AnalysisError, ValueError):
    """Unknown sweep axis, or a grid value outside the axis' valid range."""

    def __init__(self, axis: str, message: str):
        self.axis = axis
        super().__init__(message)


__all__ = ["AnalysisError", "SweepAxisError"]
