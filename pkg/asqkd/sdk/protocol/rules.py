# asqkd SDK - Protocol Module Rules
#
# Stateless building blocks shared by every protocol: choice strings, round
# classification, error estimation, abort decision and seed derivation.

import logging
from typing import Iterable, Mapping, Sequence, Tuple, Union

import numpy as np

from ..quantum.base import Basis
from .base import AbortDecision, AbortReason, BobAction, ErrorCategory, ErrorEstimate, RoundCategory
from .exceptions import ConfigurationError

logger = logging.getLogger(__name__)

_CATEGORIES = {
    (Basis.Z, BobAction.SIFT): RoundCategory.Z_SIFT,
    (Basis.X, BobAction.SIFT): RoundCategory.X_SIFT,
    (Basis.Z, BobAction.CTRL): RoundCategory.Z_CTRL,
    (Basis.X, BobAction.CTRL): RoundCategory.X_CTRL,
}

_ZERO = ord("0")


def sample_choice_string(n: int, p_zero: float, exact: bool, rng: np.random.Generator) -> str:
    """Random string over '0'/'1' with P('0') = p_zero.

    exact=True returns a uniformly shuffled string with exactly round(p_zero * n) zeros.
    """
    if not 0.0 <= p_zero <= 1.0:
        raise ConfigurationError("p_zero", f"p_zero must be in [0, 1], got {p_zero}")
    if exact:
        choices = np.ones(n, dtype=np.uint8)
        choices[: int(round(p_zero * n))] = 0
        rng.shuffle(choices)
    else:
        choices = (rng.random(n) >= p_zero).astype(np.uint8)
    return (choices + _ZERO).tobytes().decode("ascii")


def classify_round(alice_basis: Union[Basis, str], bob_action: Union[BobAction, str]) -> RoundCategory:
    return _CATEGORIES[(Basis(alice_basis), BobAction(bob_action))]


def estimate_error_rate(pairs: Sequence[Tuple[int, int]]) -> ErrorEstimate:
    """Mismatch fraction of (expected, observed) pairs; empty input is flagged no_data."""
    samples = len(pairs)
    if samples == 0:
        return ErrorEstimate(rate=0.0, errors=0, samples=0, no_data=True)
    errors = sum(1 for expected, observed in pairs if expected != observed)
    return ErrorEstimate(rate=errors / samples, errors=errors, samples=samples, no_data=False)


def _rate(value: Union[ErrorEstimate, float, None]) -> float:
    if value is None:
        return 0.0
    return value.rate if isinstance(value, ErrorEstimate) else float(value)


def abort_decision(
    error_rates: Mapping[ErrorCategory, Union[ErrorEstimate, float]],
    p_t: float,
    shortfalls: Union[bool, Iterable[bool]] = (),
) -> AbortDecision:
    """Abort if a monitored rate is strictly above p_t or a shortfall holds.

    Checked in protocol order: Z-CTRL, X-CTRL, TEST, then shortfall.
    """
    for category in (ErrorCategory.Z_CTRL, ErrorCategory.X_CTRL):
        if _rate(error_rates.get(category)) > p_t:
            return AbortDecision.stop(AbortReason.CTRL_ERROR)
    if _rate(error_rates.get(ErrorCategory.TEST)) > p_t:
        return AbortDecision.stop(AbortReason.TEST_ERROR)
    if isinstance(shortfalls, bool):
        shortfalls = (shortfalls,)
    if any(shortfalls):
        return AbortDecision.stop(AbortReason.SHORTFALL)
    return AbortDecision.proceed()


def derive_seed(master: int, *indices: int) -> int:
    """Stream seed for (master, grid index, trial index, ...); fixed and documented."""
    state = np.random.SeedSequence([int(master), *(int(i) for i in indices)]).generate_state(1, np.uint64)
    return int(state[0])
