# asqkd SDK - Adversary Module Base

from __future__ import annotations

import abc
from enum import Enum
from typing import TYPE_CHECKING, Dict, List, Mapping, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..quantum.base import Basis, JointState
from .exceptions import AttackConfigurationError

if TYPE_CHECKING:
    from ..protocol.base import PublicTranscript


class StrategyKind(str, Enum):
    NONE = "none"
    INTERCEPT_RESEND = "intercept_resend"
    ENTANGLING_PROBE = "entangling_probe"
    CUSTOM_UNITARY = "custom_unitary"


class AttackLeg(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"
    BOTH = "both"

    def includes(self, leg: "AttackLeg") -> bool:
        return self is AttackLeg.BOTH or self is leg


class BasisPolicy(str, Enum):
    ALWAYS_Z = "always_Z"
    ALWAYS_X = "always_X"
    RANDOM_PER_ROUND = "random_per_round"


UnitaryPairs = List[Tuple[float, float]]


def pairs_to_matrix(pairs: UnitaryPairs) -> np.ndarray:
    """16 (re, im) pairs in row-major order -> 4x4 complex matrix."""
    if len(pairs) != 16:
        raise AttackConfigurationError(f"A two-qubit unitary needs 16 entries, got {len(pairs)}")
    return np.array([complex(re, im) for re, im in pairs], dtype=complex).reshape(4, 4)


class AttackCatalogEntry(BaseModel):
    """Named, parameterized attack. `name` is unique within a catalog;
    `strategy` selects the implementation and defaults to `name`."""
    name: str = "none"
    strategy: Optional[StrategyKind] = None
    parameters: Dict[str, float] = Field(default_factory=dict)
    legs: AttackLeg = AttackLeg.FORWARD
    basis_policy: BasisPolicy = BasisPolicy.ALWAYS_Z
    unitary_forward: Optional[UnitaryPairs] = None
    unitary_backward: Optional[UnitaryPairs] = None

    @model_validator(mode="after")
    def _resolve_strategy(self) -> "AttackCatalogEntry":
        if self.strategy is None:
            try:
                self.strategy = StrategyKind(self.name)
            except ValueError:
                known = ", ".join(k.value for k in StrategyKind)
                raise AttackConfigurationError(f"unknown attack '{self.name}' (known: {known})") from None
        for field in ("unitary_forward", "unitary_backward"):
            value = getattr(self, field)
            if value is not None and len(value) != 16:
                raise AttackConfigurationError(f"{field} needs 16 (re, im) pairs, got {len(value)}")
        return self

    @property
    def theta(self) -> Optional[float]:
        return self.parameters.get("theta")


class EveReport(BaseModel):
    """Detection statistics and Eve's gain for one run.

    `guess_accuracy` is scored against Alice's INFO bits over the rounds Eve
    guessed; `coverage` is the guessed fraction of INFO rounds.
    """
    ctrl_error: float = 0.0
    z_ctrl_error: float = 0.0
    x_ctrl_error: float = 0.0
    test_error: float = 0.0
    guess_accuracy: Optional[float] = None
    coverage: float = 0.0
    guessed: int = 0
    correct: int = 0
    info_rounds: int = 0


class AbstractAttackStrategy(abc.ABC):
    """Eavesdropper bound to a single protocol run.

    Hooks only touch the channel qubit and Eve's probe. `finalize` receives the
    public transcript plus the probe readouts the engine performed on Eve's
    behalf in the bases returned by `probe_basis`.
    """

    name: str = "abstract"

    @abc.abstractmethod
    def on_forward(self, round_index: int, state: JointState, rng: np.random.Generator) -> JointState:
        """Alice -> Bob leg."""
        pass

    @abc.abstractmethod
    def on_backward(self, round_index: int, state: JointState, rng: np.random.Generator) -> JointState:
        """Bob -> Alice leg."""
        pass

    def probe_basis(self, round_index: int, transcript: "PublicTranscript") -> Optional[Basis]:
        return None

    @abc.abstractmethod
    def finalize(self, transcript: "PublicTranscript", probe_outcomes: Mapping[int, int]) -> Dict[int, int]:
        """Return Eve's key-bit guesses, round index -> bit."""
        pass

    def describe(self) -> Dict[str, object]:
        return {"name": self.name}
