# asqkd SDK - Protocol Module

from .base import (
    AbortDecision,
    AbortReason,
    Announcement,
    AnnouncementKind,
    BobAction,
    ErrorCategory,
    ErrorEstimate,
    ProtocolConfig,
    ProtocolKind,
    PublicTranscript,
    RoundCategory,
    RoundRecord,
    RoundRole,
    RunResult,
)
from .engine import run_baseline, run_protocol, run_protocol1, run_protocol2, run_protocol3
from .exceptions import ConfigurationError, ProtocolError, ProtocolMismatchError, TranscriptClosedError
from .rules import abort_decision, classify_round, derive_seed, estimate_error_rate, sample_choice_string

__all__ = [
    "AbortDecision",
    "AbortReason",
    "Announcement",
    "AnnouncementKind",
    "BobAction",
    "ErrorCategory",
    "ErrorEstimate",
    "ProtocolConfig",
    "ProtocolKind",
    "PublicTranscript",
    "RoundCategory",
    "RoundRecord",
    "RoundRole",
    "RunResult",
    "run_baseline",
    "run_protocol",
    "run_protocol1",
    "run_protocol2",
    "run_protocol3",
    "ConfigurationError",
    "ProtocolError",
    "ProtocolMismatchError",
    "TranscriptClosedError",
    "abort_decision",
    "classify_round",
    "derive_seed",
    "estimate_error_rate",
    "sample_choice_string",
]
