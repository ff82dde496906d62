# asqkd SDK - Quantum Module Main Logic

import logging
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from .base import Basis, JointState, Outcome, QubitRole, StateLabel
from .exceptions import (
    DimensionMismatchError,
    NonUnitaryError,
    NormalizationError,
    ProbeAttachedError,
)
from .gates import HADAMARD, is_unitary

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-9
UNITARY_TOLERANCE = 1e-10
MIN_BRANCH_PROBABILITY = 1e-15

_H = 1 / np.sqrt(2)
_LABEL_VECTORS = {
    (Basis.Z, 0): (1.0, 0.0),
    (Basis.Z, 1): (0.0, 1.0),
    (Basis.X, 0): (_H, _H),
    (Basis.X, 1): (_H, -_H),
}


def _readonly(vector: Iterable[complex]) -> np.ndarray:
    arr = np.array(list(vector), dtype=complex)
    arr.flags.writeable = False
    return arr


# prepare() hands out these shared instances; nothing mutates amplitudes in place.
_PREPARED = {
    StateLabel(basis, bit): JointState(_readonly(vec), (QubitRole.CHANNEL,))
    for (basis, bit), vec in _LABEL_VECTORS.items()
}


def make_state(
    amplitudes: Sequence[complex],
    roles: Sequence[Union[QubitRole, str]] = (QubitRole.CHANNEL,),
) -> JointState:
    """Build a JointState from raw amplitudes (used for oracles and tests)."""
    role_tuple = tuple(QubitRole(r) for r in roles)
    if not 1 <= len(role_tuple) <= 2 or len(set(role_tuple)) != len(role_tuple):
        raise DimensionMismatchError(f"Unsupported role layout {role_tuple}")
    amps = np.array(amplitudes, dtype=complex)
    if amps.shape != (2 ** len(role_tuple),):
        raise DimensionMismatchError(
            f"Expected {2 ** len(role_tuple)} amplitudes for roles {role_tuple}, got {amps.shape}"
        )
    state = JointState(amps, role_tuple)
    if abs(state.norm() - 1.0) > NORM_TOLERANCE:
        raise NormalizationError(f"Amplitudes are not normalized (norm={state.norm():.15g})")
    return state


def prepare(label: StateLabel) -> JointState:
    """Return the normalized single-qubit channel state for `label`."""
    return _PREPARED[StateLabel(Basis(label.basis), label.bit)]


def _to_frame(state: JointState, target: QubitRole, basis: Basis) -> Tuple[np.ndarray, int]:
    # Tensor view with the target axis first, expressed in the measured basis.
    axis = state.role_index(target)
    psi = state.amplitudes.reshape((2,) * state.num_qubits)
    if axis:
        psi = np.moveaxis(psi, axis, 0)
    if basis is Basis.X:
        psi = np.tensordot(HADAMARD, psi, axes=1)
    return psi, axis


def _from_frame(psi: np.ndarray, state: JointState, axis: int, basis: Basis) -> np.ndarray:
    if basis is Basis.X:
        psi = np.tensordot(HADAMARD, psi, axes=1)
    if axis:
        psi = np.moveaxis(psi, 0, axis)
    return np.ascontiguousarray(psi).reshape(2 ** state.num_qubits)


def born_probabilities(
    state: JointState, target: Union[QubitRole, str], basis: Union[Basis, str]
) -> Tuple[float, float]:
    """Born-rule marginals (p0, p1) for measuring `target` in `basis`."""
    basis = Basis(basis)
    psi, _ = _to_frame(state, QubitRole(target), basis)
    p0 = float(np.sum(np.abs(psi[0]) ** 2))
    p1 = float(np.sum(np.abs(psi[1]) ** 2))
    return p0, p1


def measure(
    state: JointState,
    target: Union[QubitRole, str],
    basis: Union[Basis, str],
    rng: np.random.Generator,
) -> Tuple[Outcome, JointState]:
    """Projective measurement of one qubit; returns the outcome and the collapsed state.

    One uniform variate is drawn from `rng` only when both outcomes are possible.
    """
    basis = Basis(basis)
    target = QubitRole(target)
    norm = state.norm()
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise NormalizationError(f"Cannot measure an unnormalized state (norm={norm:.15g})")

    psi, axis = _to_frame(state, target, basis)
    p0 = float(np.sum(np.abs(psi[0]) ** 2))
    p1 = float(np.sum(np.abs(psi[1]) ** 2))
    if p0 < MIN_BRANCH_PROBABILITY:
        bit = 1
    elif p1 < MIN_BRANCH_PROBABILITY:
        bit = 0
    else:
        bit = 0 if rng.random() < p0 / (p0 + p1) else 1

    collapsed = np.zeros_like(psi)
    collapsed[bit] = psi[bit] / np.sqrt(p0 if bit == 0 else p1)
    amplitudes = _from_frame(collapsed, state, axis, basis)
    return Outcome(bit=bit, basis=basis, qubit=target), JointState(amplitudes, state.roles)


def apply_unitary(
    state: JointState,
    u: np.ndarray,
    targets: Union[QubitRole, str, Sequence[Union[QubitRole, str]]],
) -> JointState:
    """Apply `u` to the ordered `targets` (identity on the remaining qubit)."""
    if isinstance(targets, (QubitRole, str)):
        targets = (targets,)
    target_roles = tuple(QubitRole(t) for t in targets)
    n_targets = len(target_roles)
    if n_targets == 0 or len(set(target_roles)) != n_targets:
        raise DimensionMismatchError(f"Invalid target list {target_roles}")

    u = np.asarray(u, dtype=complex)
    if u.shape != (2**n_targets, 2**n_targets):
        raise DimensionMismatchError(
            f"Matrix of shape {u.shape} cannot act on {n_targets} qubit(s)"
        )
    if not is_unitary(u, tol=UNITARY_TOLERANCE):
        raise NonUnitaryError("Matrix is not unitary within 1e-10 (u @ u^dagger != I)")

    axes = [state.role_index(r) for r in target_roles]
    front = list(range(n_targets))
    psi = state.amplitudes.reshape((2,) * state.num_qubits)
    psi = np.moveaxis(psi, axes, front)
    shape = psi.shape
    psi = (u @ psi.reshape(2**n_targets, -1)).reshape(shape)
    psi = np.moveaxis(psi, front, axes)
    return JointState(np.ascontiguousarray(psi).reshape(2 ** state.num_qubits), state.roles)


def attach_probe(state: JointState, probe_label: StateLabel) -> JointState:
    """Append a probe qubit prepared in `probe_label` (tensor product, channel first)."""
    if state.has_role(QubitRole.PROBE):
        raise ProbeAttachedError("State already carries a probe qubit")
    probe = prepare(probe_label)
    return JointState(
        np.kron(state.amplitudes, probe.amplitudes),
        state.roles + (QubitRole.PROBE,),
    )
