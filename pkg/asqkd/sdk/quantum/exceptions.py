# asqkd SDK - Quantum Module Exceptions


class QuantumError(Exception):
    """Base exception for the statevector engine."""
    pass


class UnknownRoleError(QuantumError, KeyError):
    """Raised when an operation targets a qubit role that is not part of the state."""
    pass


class NonUnitaryError(QuantumError, ValueError):
    """Raised when a matrix handed to apply_unitary is not unitary."""
    pass


class DimensionMismatchError(QuantumError, ValueError):
    """Raised when a matrix dimension does not match the number of target qubits."""
    pass


class NormalizationError(QuantumError):
    """Raised when a state's norm has drifted; indicates an internal bug."""
    pass


class ProbeAttachedError(QuantumError):
    """Raised when a second probe is attached to a state that already has one."""
    pass


__all__ = [
    "QuantumError",
    "UnknownRoleError",
    "NonUnitaryError",
    "DimensionMismatchError",
    "NormalizationError",
    "ProbeAttachedError",
]
