# asqkd SDK - Quantum Module Base

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from .exceptions import UnknownRoleError


class Basis(str, Enum):
    """Measurement/preparation basis. Z = {|0>, |1>}, X = {|+>, |->}."""
    Z = "Z"
    X = "X"


class QubitRole(str, Enum):
    """Tensor factor names. The first role in a state is the most significant index bit."""
    CHANNEL = "channel"
    PROBE = "probe"


@dataclass(frozen=True)
class StateLabel:
    """(basis, bit) pair naming one of the four BB84 states.

    (Z,0) -> |0>, (Z,1) -> |1>, (X,0) -> |+>, (X,1) -> |->.
    """
    basis: Basis
    bit: int

    def __post_init__(self):
        if self.bit not in (0, 1):
            raise ValueError(f"StateLabel bit must be 0 or 1, got {self.bit!r}")


@dataclass(frozen=True, eq=False)
class JointState:
    """Pure state of the channel qubit, optionally joined with one probe qubit.

    `amplitudes` has length 2**len(roles). Instances are treated as immutable:
    every operation returns a new JointState.
    """
    amplitudes: np.ndarray
    roles: Tuple[QubitRole, ...]

    @property
    def num_qubits(self) -> int:
        return len(self.roles)

    def has_role(self, role: QubitRole) -> bool:
        return role in self.roles

    def role_index(self, role: QubitRole) -> int:
        try:
            return self.roles.index(role)
        except ValueError:
            raise UnknownRoleError(f"Role '{QubitRole(role).value}' is not part of state {self.roles}") from None

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def __repr__(self) -> str:
        amps = ", ".join(f"{a:.4g}" for a in self.amplitudes)
        return f"JointState(roles={[r.value for r in self.roles]}, amplitudes=[{amps}])"


@dataclass(frozen=True)
class Outcome:
    """Result of a projective measurement; bit 0 is the first basis vector."""
    bit: int
    basis: Basis
    qubit: QubitRole
