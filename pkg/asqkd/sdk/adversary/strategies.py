# asqkd SDK - Adversary Module Strategies

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING, Dict, Mapping, Optional, Tuple

import numpy as np

from ..quantum.base import Basis, JointState, QubitRole, StateLabel
from ..quantum.gates import controlled_rotation, is_unitary
from ..quantum.main import apply_unitary, attach_probe, measure
from .base import AbstractAttackStrategy, AttackLeg, BasisPolicy
from .exceptions import AttackConfigurationError

if TYPE_CHECKING:
    from ..protocol.base import PublicTranscript

logger = logging.getLogger(__name__)

PROBE_READY = StateLabel(Basis.Z, 0)
_JOINT = (QubitRole.CHANNEL, QubitRole.PROBE)


class NoAttack(AbstractAttackStrategy):
    name = "none"

    def on_forward(self, round_index, state, rng):
        return state

    def on_backward(self, round_index, state, rng):
        return state

    def finalize(self, transcript, probe_outcomes):
        return {}


class InterceptResendAttack(AbstractAttackStrategy):
    """Measure the channel qubit on the configured legs and forward the collapsed state.

    Guessing rule: for SIFT rounds, Eve replays her Z-basis record, preferring
    the backward leg (it carries Bob's collapsed value) over the forward leg.
    """

    name = "intercept_resend"

    def __init__(self, basis_policy: BasisPolicy = BasisPolicy.ALWAYS_Z, legs: AttackLeg = AttackLeg.FORWARD):
        self.basis_policy = BasisPolicy(basis_policy)
        self.legs = AttackLeg(legs)
        self._records: Dict[Tuple[int, AttackLeg], int] = {}
        self._round_basis: Dict[int, Basis] = {}

    def _basis(self, round_index: int, rng: np.random.Generator) -> Basis:
        if self.basis_policy is BasisPolicy.ALWAYS_Z:
            return Basis.Z
        if self.basis_policy is BasisPolicy.ALWAYS_X:
            return Basis.X
        # One draw per round, shared by both legs.
        if round_index not in self._round_basis:
            self._round_basis[round_index] = Basis.Z if rng.integers(2) == 0 else Basis.X
        return self._round_basis[round_index]

    def _intercept(self, round_index: int, leg: AttackLeg, state: JointState, rng: np.random.Generator) -> JointState:
        if not self.legs.includes(leg):
            return state
        basis = self._basis(round_index, rng)
        outcome, collapsed = measure(state, QubitRole.CHANNEL, basis, rng)
        if basis is Basis.Z:
            self._records[(round_index, leg)] = outcome.bit
        return collapsed

    def on_forward(self, round_index, state, rng):
        return self._intercept(round_index, AttackLeg.FORWARD, state, rng)

    def on_backward(self, round_index, state, rng):
        return self._intercept(round_index, AttackLeg.BACKWARD, state, rng)

    def finalize(self, transcript: "PublicTranscript", probe_outcomes: Mapping[int, int]) -> Dict[int, int]:
        guesses: Dict[int, int] = {}
        for index in transcript.sift_indices():
            for leg in (AttackLeg.BACKWARD, AttackLeg.FORWARD):
                bit = self._records.get((index, leg))
                if bit is not None:
                    guesses[index] = bit
                    break
        return guesses

    def describe(self):
        return {"name": self.name, "basis_policy": self.basis_policy.value, "legs": self.legs.value}


class _ProbeReadoutMixin:
    """Probe readout in Z on SIFT rounds, guess = readout."""

    def probe_basis(self, round_index: int, transcript: "PublicTranscript") -> Optional[Basis]:
        return Basis.Z if transcript.is_sift(round_index) else None

    def finalize(self, transcript: "PublicTranscript", probe_outcomes: Mapping[int, int]) -> Dict[int, int]:
        return {i: bit for i, bit in probe_outcomes.items() if transcript.is_sift(i)}


class EntanglingProbeAttack(_ProbeReadoutMixin, AbstractAttackStrategy):
    """Forward-leg controlled rotation of a |0> probe by `theta` (theta = pi/2 copies Z)."""

    name = "entangling_probe"
    legs = AttackLeg.FORWARD

    def __init__(self, theta: float):
        theta = float(theta)
        if not (0.0 <= theta <= math.pi / 2 + 1e-12) or math.isnan(theta):
            raise AttackConfigurationError(f"theta must satisfy 0 <= theta <= pi/2, got {theta}")
        self.theta = min(theta, math.pi / 2)
        self._unitary = controlled_rotation(self.theta)

    def on_forward(self, round_index, state, rng):
        return apply_unitary(attach_probe(state, PROBE_READY), self._unitary, _JOINT)

    def on_backward(self, round_index, state, rng):
        return state

    def describe(self):
        return {"name": self.name, "theta": self.theta}


class CustomUnitaryAttack(_ProbeReadoutMixin, AbstractAttackStrategy):
    """User-supplied 4x4 unitaries on (channel, probe) per leg; the probe starts in |0>."""

    name = "custom_unitary"

    def __init__(self, unitary_forward: Optional[np.ndarray] = None, unitary_backward: Optional[np.ndarray] = None):
        if unitary_forward is None and unitary_backward is None:
            raise AttackConfigurationError("custom_unitary needs at least one of unitary_forward/unitary_backward")
        self.unitary_forward = self._checked(unitary_forward, "unitary_forward")
        self.unitary_backward = self._checked(unitary_backward, "unitary_backward")
        if self.unitary_forward is not None and self.unitary_backward is not None:
            self.legs = AttackLeg.BOTH
        elif self.unitary_forward is not None:
            self.legs = AttackLeg.FORWARD
        else:
            self.legs = AttackLeg.BACKWARD

    @staticmethod
    def _checked(u: Optional[np.ndarray], field: str) -> Optional[np.ndarray]:
        if u is None:
            return None
        u = np.asarray(u, dtype=complex)
        if u.shape != (4, 4):
            raise AttackConfigurationError(f"{field} must be a 4x4 matrix, got shape {u.shape}")
        if not is_unitary(u):
            raise AttackConfigurationError(f"{field} is not unitary within 1e-10")
        return u

    @staticmethod
    def _act(state: JointState, u: Optional[np.ndarray]) -> JointState:
        if u is None:
            return state
        if not state.has_role(QubitRole.PROBE):
            state = attach_probe(state, PROBE_READY)
        return apply_unitary(state, u, _JOINT)

    def on_forward(self, round_index, state, rng):
        return self._act(state, self.unitary_forward)

    def on_backward(self, round_index, state, rng):
        return self._act(state, self.unitary_backward)

    def describe(self):
        return {"name": self.name, "legs": self.legs.value}
