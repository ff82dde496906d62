# asqkd SDK - Protocol Module Base

from enum import Enum
from typing import Any, ClassVar, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..adversary.base import EveReport
from ..postprocessing.base import ReconciliationReport
from ..quantum.base import Basis
from .exceptions import ConfigurationError, TranscriptClosedError

DEFAULT_P1_ROUNDS = 10_000
SEED_LIMIT = 2**64


class ProtocolKind(str, Enum):
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    BASELINE = "BASELINE"

    @property
    def uses_register(self) -> bool:
        """P2/P3: Alice stores every return and measures after b is announced."""
        return self in (ProtocolKind.P2, ProtocolKind.P3)


class BobAction(str, Enum):
    SIFT = "SIFT"
    CTRL = "CTRL"


class RoundCategory(str, Enum):
    Z_SIFT = "Z_SIFT"
    X_SIFT = "X_SIFT"
    Z_CTRL = "Z_CTRL"
    X_CTRL = "X_CTRL"


class RoundRole(str, Enum):
    INFO = "INFO"
    TEST = "TEST"
    CTRL_CHECK = "CTRL_CHECK"
    DISCARD = "DISCARD"
    SURPLUS = "SURPLUS"


class ErrorCategory(str, Enum):
    Z_CTRL = "Z_CTRL"
    X_CTRL = "X_CTRL"
    TEST = "TEST"


class AbortReason(str, Enum):
    CTRL_ERROR = "CTRL_ERROR"
    TEST_ERROR = "TEST_ERROR"
    SHORTFALL = "SHORTFALL"


class AnnouncementKind(str, Enum):
    ALICE_BASES = "ALICE_BASES"
    BOB_ACTIONS = "BOB_ACTIONS"
    TEST_INDICES = "TEST_INDICES"
    TEST_VALUES = "TEST_VALUES"
    HASH_SEED = "HASH_SEED"
    ABORT = "ABORT"


class ProtocolConfig(BaseModel):
    """Protocol parameters plus run controls.

    P1/BASELINE use N, gamma1, gamma2 and xi. P2/P3 use kappa, tau, lambda and
    delta, and N is derived as round((kappa + tau + lambda) * (1 + delta)).
    """
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    protocol: ProtocolKind = ProtocolKind.P1
    n_rounds: Optional[int] = Field(default=None, alias="N")
    gamma1: float = 0.9
    gamma2: float = 0.9
    xi: float = 0.1
    kappa: int = 400
    tau: int = 100
    lambda_: int = Field(default=500, alias="lambda")
    delta: float = 0.1
    p_t: float = 0.05
    seed: int = 0
    exact_counts: bool = False
    reconciliation_block_size: int = 16
    reconciliation_passes: int = 4
    safety_margin: int = 0

    PRESETS: ClassVar[Dict[str, Dict[str, Any]]] = {
        "p1-reference": {"protocol": "P1", "gamma1": 0.9, "gamma2": 0.9, "xi": 0.1, "N": 100_000},
        "p2-reference": {"protocol": "P2", "kappa": 400, "tau": 100, "lambda": 500, "delta": 0.1},
        "symmetric-p2": {"protocol": "P2", "kappa": 250, "tau": 250, "lambda": 500, "delta": 0.1},
        "asymptotic-p2": {"protocol": "P2", "kappa": 9800, "tau": 100, "lambda": 100, "delta": 0.05,
                          "exact_counts": True},
    }

    @classmethod
    def preset(cls, name: str, **overrides: Any) -> "ProtocolConfig":
        if name not in cls.PRESETS:
            raise ConfigurationError("preset", f"unknown preset '{name}' (known: {', '.join(cls.PRESETS)})")
        return cls(**{**cls.PRESETS[name], **overrides})

    @model_validator(mode="after")
    def _check_regime(self) -> "ProtocolConfig":
        if self.protocol is ProtocolKind.BASELINE:
            self.gamma1 = 0.5
            self.gamma2 = 0.5
        elif self.protocol is ProtocolKind.P1:
            for key in ("gamma1", "gamma2"):
                if not 0.5 < getattr(self, key) < 1.0:
                    raise ConfigurationError(key, f"{key} must satisfy 1/2 < {key} < 1")

        if self.protocol.uses_register:
            for key, attr in (("kappa", "kappa"), ("tau", "tau"), ("lambda", "lambda_")):
                if getattr(self, attr) < 1:
                    raise ConfigurationError(key, f"{key} must be >= 1")
            if not self.delta > 0:
                raise ConfigurationError("delta", "delta must be > 0")
            derived = int(round((self.kappa + self.tau + self.lambda_) * (1 + self.delta)))
            if self.n_rounds is not None and self.n_rounds != derived:
                raise ConfigurationError("N", f"N must equal round((kappa+tau+lambda)(1+delta)) = {derived}")
            self.n_rounds = derived
        else:
            if not 0.0 < self.xi < 0.5:
                raise ConfigurationError("xi", "xi must satisfy 0 < xi < 1/2")
            if self.n_rounds is None:
                self.n_rounds = DEFAULT_P1_ROUNDS
            if self.n_rounds < 1:
                raise ConfigurationError("N", "N must be >= 1")

        if not 0.0 <= self.p_t < 0.5:
            raise ConfigurationError("p_t", "p_t must satisfy 0 <= p_t < 1/2")
        if not 0 <= self.seed < SEED_LIMIT:
            raise ConfigurationError("seed", "seed must be an unsigned 64-bit integer")
        if self.reconciliation_block_size < 2:
            raise ConfigurationError("reconciliation_block_size", "reconciliation_block_size must be >= 2")
        if self.reconciliation_passes < 1:
            raise ConfigurationError("reconciliation_passes", "reconciliation_passes must be >= 1")
        if self.safety_margin < 0:
            raise ConfigurationError("safety_margin", "safety_margin must be >= 0")
        return self

    @property
    def N(self) -> int:
        return int(self.n_rounds)

    @property
    def sift_probability(self) -> float:
        """Bob's probability of choosing SIFT."""
        if self.protocol.uses_register:
            return (self.kappa + self.tau) / (self.kappa + self.tau + self.lambda_)
        return self.gamma2

    @property
    def z_probability(self) -> float:
        """Alice's probability of preparing in Z."""
        if self.protocol is ProtocolKind.P3:
            return 0.0
        if self.protocol is ProtocolKind.P2:
            return 0.5
        return self.gamma1


class RoundRecord(BaseModel):
    index: int
    alice_basis: Basis
    alice_bit: int
    bob_action: BobAction
    bob_outcome: Optional[int] = None
    alice_return_outcome: Optional[int] = None
    category: RoundCategory
    role: Optional[RoundRole] = None

    @model_validator(mode="after")
    def _outcome_matches_action(self) -> "RoundRecord":
        if (self.bob_outcome is not None) != (self.bob_action is BobAction.SIFT):
            raise ValueError("bob_outcome must be present exactly for SIFT rounds")
        return self


class ErrorEstimate(BaseModel):
    rate: float = 0.0
    errors: int = 0
    samples: int = 0
    no_data: bool = True


class AbortDecision(BaseModel):
    abort: bool = False
    reason: Optional[AbortReason] = None

    @classmethod
    def proceed(cls) -> "AbortDecision":
        return cls()

    @classmethod
    def stop(cls, reason: AbortReason) -> "AbortDecision":
        return cls(abort=True, reason=reason)


class Announcement(BaseModel):
    kind: AnnouncementKind
    payload: Any = None


class PublicTranscript(BaseModel):
    """Ordered log of everything said on the authenticated classical channel.

    Payloads: ALICE_BASES and BOB_ACTIONS are strings over '0'/'1' (0 = Z for
    Alice, 0 = SIFT for Bob); TEST_INDICES is a sorted index list; TEST_VALUES
    maps index -> Bob's outcome; ABORT carries the reason.
    """
    announcements: List[Announcement] = Field(default_factory=list)

    def announce(self, kind: AnnouncementKind, payload: Any = None) -> None:
        if self.aborted:
            raise TranscriptClosedError(f"Cannot announce {kind.value} after an abort notice")
        self.announcements.append(Announcement(kind=kind, payload=payload))

    def latest(self, kind: AnnouncementKind) -> Any:
        for entry in reversed(self.announcements):
            if entry.kind is kind:
                return entry.payload
        return None

    @property
    def kinds(self) -> List[AnnouncementKind]:
        return [entry.kind for entry in self.announcements]

    @property
    def aborted(self) -> bool:
        return bool(self.announcements) and self.announcements[-1].kind is AnnouncementKind.ABORT

    def bob_actions(self) -> Optional[str]:
        return self.latest(AnnouncementKind.BOB_ACTIONS)

    def alice_bases(self) -> Optional[str]:
        return self.latest(AnnouncementKind.ALICE_BASES)

    def is_sift(self, round_index: int) -> bool:
        b = self.bob_actions()
        return b is not None and b[round_index] == "0"

    def sift_indices(self) -> List[int]:
        b = self.bob_actions() or ""
        return [i for i, c in enumerate(b) if c == "0"]

    def test_indices(self) -> List[int]:
        return list(self.latest(AnnouncementKind.TEST_INDICES) or [])

    def test_values(self) -> Dict[int, int]:
        return dict(self.latest(AnnouncementKind.TEST_VALUES) or {})

    def snapshot(self) -> "PublicTranscript":
        return self.model_copy(deep=True)


class RunResult(BaseModel):
    config: ProtocolConfig
    attack_name: str = "none"
    rounds: List[RoundRecord]
    transcript: PublicTranscript
    aborted: bool
    abort_reason: Optional[AbortReason] = None
    error_rates: Dict[ErrorCategory, ErrorEstimate]
    alice_sifted: str
    bob_sifted: str
    info_indices: List[int]
    test_indices: List[int]
    reconciliation: Optional[ReconciliationReport] = None
    final_key: Optional[str] = None
    bob_final_key: Optional[str] = None
    hash_seed: Optional[int] = None
    eve_guesses: Dict[int, int] = Field(default_factory=dict)
    eve_report: Optional[EveReport] = None

    @property
    def n_rounds(self) -> int:
        return len(self.rounds)

    @property
    def efficiency(self) -> float:
        """|INFO| / N for a completed run, 0 after an abort."""
        if self.aborted or not self.rounds:
            return 0.0
        return len(self.info_indices) / len(self.rounds)

    def error_rate(self, category: ErrorCategory) -> float:
        return self.error_rates[category].rate

    def category_counts(self) -> Dict[RoundCategory, int]:
        counts = {c: 0 for c in RoundCategory}
        for record in self.rounds:
            counts[record.category] += 1
        return counts

    def role_counts(self) -> Dict[RoundRole, int]:
        counts = {r: 0 for r in RoundRole}
        for record in self.rounds:
            if record.role is not None:
                counts[record.role] += 1
        return counts
