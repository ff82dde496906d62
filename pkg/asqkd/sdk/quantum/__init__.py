# asqkd SDK - Quantum Module

from .base import Basis, JointState, Outcome, QubitRole, StateLabel
from .exceptions import (
    DimensionMismatchError,
    NonUnitaryError,
    NormalizationError,
    ProbeAttachedError,
    QuantumError,
    UnknownRoleError,
)
from .gates import CNOT, HADAMARD, IDENTITY, controlled_rotation, is_unitary
from .main import (
    apply_unitary,
    attach_probe,
    born_probabilities,
    make_state,
    measure,
    prepare,
)

__all__ = [
    "Basis",
    "JointState",
    "Outcome",
    "QubitRole",
    "StateLabel",
    "QuantumError",
    "UnknownRoleError",
    "NonUnitaryError",
    "DimensionMismatchError",
    "NormalizationError",
    "ProbeAttachedError",
    "CNOT",
    "HADAMARD",
    "IDENTITY",
    "controlled_rotation",
    "is_unitary",
    "prepare",
    "born_probabilities",
    "measure",
    "apply_unitary",
    "attach_probe",
    "make_state",
]
