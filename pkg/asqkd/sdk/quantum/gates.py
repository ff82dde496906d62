# asqkd SDK - Quantum Module Gates
#
# Gate matrices in the computational basis. Two-qubit gates use the same
# ordering as JointState: the first target is the most significant bit.

import numpy as np

IDENTITY = np.eye(2, dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

CNOT = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=complex,
)

for _gate in (IDENTITY, HADAMARD, CNOT):
    _gate.flags.writeable = False


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    """Return True if `u` is square and u @ u^dagger equals the identity within `tol`."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    deviation = u @ u.conj().T - np.eye(u.shape[0])
    return bool(np.max(np.abs(deviation)) <= tol)


def controlled_rotation(theta: float) -> np.ndarray:
    """Probe rotation by `theta` controlled on the channel qubit.

    |0>|0> -> |0>|0>
    |1>|0> -> |1>(cos(theta)|0> + sin(theta)|1>)
    |1>|1> -> |1>(-sin(theta)|0> + cos(theta)|1>)

    theta = pi/2 is CNOT up to the sign of the |1>|1> -> |1>|0> entry.
    """
    c, s = np.cos(theta), np.sin(theta)
    return np.array(
        [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, c, -s],
            [0, 0, s, c],
        ],
        dtype=complex,
    )
