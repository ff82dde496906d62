# asqkd SDK - Protocol Module Engine
#
# Round loop, announcements and key extraction for P1, P2, P3 and the
# symmetric baseline. One call = one run with exclusive state; every random
# draw comes from the injected generator, in a fixed order.

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..adversary.base import AbstractAttackStrategy
from ..adversary.main import eve_detection_and_gain, no_attack
from ..postprocessing.privacy import final_key_length, privacy_amplify
from ..postprocessing.reconciliation import reconcile
from ..quantum.base import Basis, JointState, QubitRole, StateLabel
from ..quantum.main import measure, prepare
from .base import (
    AbortDecision,
    AbortReason,
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
from .exceptions import ProtocolMismatchError
from .rules import abort_decision, classify_round, estimate_error_rate, sample_choice_string

logger = logging.getLogger(__name__)

_LABELS = {(basis, bit): StateLabel(basis, bit) for basis in Basis for bit in (0, 1)}
_HASH_SEED_LIMIT = 2**63


def _transmit(
    n: int,
    bases: str,
    bits: Sequence[int],
    actions: str,
    attack: AbstractAttackStrategy,
    rng: np.random.Generator,
) -> Tuple[List[RoundRecord], List[JointState]]:
    """Send rounds strictly one at a time; each return is stored before the next round starts."""
    records: List[RoundRecord] = []
    register: List[JointState] = []
    for i in range(n):
        basis = Basis.Z if bases[i] == "0" else Basis.X
        bit = int(bits[i])
        state = attack.on_forward(i, prepare(_LABELS[(basis, bit)]), rng)
        if actions[i] == "0":
            action = BobAction.SIFT
            outcome, state = measure(state, QubitRole.CHANNEL, Basis.Z, rng)
            bob_outcome: Optional[int] = outcome.bit
        else:
            action = BobAction.CTRL
            bob_outcome = None
        register.append(attack.on_backward(i, state, rng))
        records.append(
            RoundRecord(
                index=i,
                alice_basis=basis,
                alice_bit=bit,
                bob_action=action,
                bob_outcome=bob_outcome,
                category=classify_round(basis, action),
            )
        )
    return records, register


def _alice_measures(
    records: List[RoundRecord],
    register: List[JointState],
    rng: np.random.Generator,
    sift_in_z: bool,
) -> None:
    # CTRL returns in the sent basis; SIFT returns in Z only for the register protocols.
    for record in records:
        if record.bob_action is BobAction.CTRL:
            basis = record.alice_basis
        elif sift_in_z:
            basis = Basis.Z
        else:
            continue
        outcome, register[record.index] = measure(register[record.index], QubitRole.CHANNEL, basis, rng)
        record.alice_return_outcome = outcome.bit


def _ctrl_estimates(records: List[RoundRecord]) -> Dict[ErrorCategory, ErrorEstimate]:
    estimates = {}
    for error_category, round_category in (
        (ErrorCategory.Z_CTRL, RoundCategory.Z_CTRL),
        (ErrorCategory.X_CTRL, RoundCategory.X_CTRL),
    ):
        pairs = [
            (r.alice_bit, r.alice_return_outcome)
            for r in records
            if r.role is RoundRole.CTRL_CHECK and r.category is round_category
        ]
        estimates[error_category] = estimate_error_rate(pairs)
    return estimates


def _select_test(candidates: List[int], count: int, rng: np.random.Generator) -> List[int]:
    count = min(count, len(candidates))
    if count <= 0:
        return []
    picked = rng.choice(np.asarray(candidates, dtype=np.int64), size=count, replace=False)
    return sorted(int(i) for i in picked)


def _eavesdropper_guesses(
    attack: AbstractAttackStrategy,
    transcript: PublicTranscript,
    register: List[JointState],
    rng: np.random.Generator,
) -> Dict[int, int]:
    view = transcript.snapshot()
    probe_outcomes: Dict[int, int] = {}
    for i, state in enumerate(register):
        if not state.has_role(QubitRole.PROBE):
            continue
        basis = attack.probe_basis(i, view)
        if basis is None:
            continue
        outcome, register[i] = measure(state, QubitRole.PROBE, basis, rng)
        probe_outcomes[i] = outcome.bit
    guesses = attack.finalize(view, probe_outcomes)
    return {int(i): int(bit) for i, bit in guesses.items()}


def _complete_run(
    config: ProtocolConfig,
    attack: AbstractAttackStrategy,
    rng: np.random.Generator,
    records: List[RoundRecord],
    register: List[JointState],
    transcript: PublicTranscript,
    rates: Dict[ErrorCategory, ErrorEstimate],
    decision: AbortDecision,
    sift: List[int],
    test: List[int],
    info_limit: Optional[int],
    test_reference: Callable[[RoundRecord], int],
    alice_key_bit: Callable[[RoundRecord], int],
) -> RunResult:
    """TEST disclosure, INFO extraction, post-processing and Eve's guesses.

    After an abort the transcript stops, but roles, the TEST error rate and the
    sifted strings are still filled in for diagnostics.
    """
    if decision.abort:
        transcript.announce(AnnouncementKind.ABORT, decision.reason.value)
    else:
        transcript.announce(AnnouncementKind.TEST_INDICES, list(test))
        transcript.announce(AnnouncementKind.TEST_VALUES, {i: records[i].bob_outcome for i in test})

    rates[ErrorCategory.TEST] = estimate_error_rate([(test_reference(records[i]), records[i].bob_outcome) for i in test])
    for i in test:
        records[i].role = RoundRole.TEST
    test_set = set(test)
    remainder = [i for i in sift if i not in test_set]
    info = remainder if info_limit is None else remainder[:info_limit]
    for i in info:
        records[i].role = RoundRole.INFO
    for i in remainder[len(info):]:
        records[i].role = RoundRole.SURPLUS

    if not decision.abort:
        decision = abort_decision(rates, config.p_t)
        if decision.abort:
            transcript.announce(AnnouncementKind.ABORT, decision.reason.value)
    for category, estimate in rates.items():
        if estimate.no_data:
            logger.warning(f"No {category.value} samples in this run; rate reported as 0")

    alice_sifted = "".join(str(alice_key_bit(records[i])) for i in info)
    bob_sifted = "".join(str(records[i].bob_outcome) for i in info)

    reconciliation = final_key = bob_final_key = hash_seed = None
    if not decision.abort:
        reconciliation = reconcile(
            alice_sifted, bob_sifted, config.reconciliation_block_size, config.reconciliation_passes, rng
        )
        length = final_key_length(
            len(info), rates[ErrorCategory.TEST].rate, reconciliation.disclosed_bits, config.safety_margin
        )
        hash_seed = int(rng.integers(0, _HASH_SEED_LIMIT))
        transcript.announce(AnnouncementKind.HASH_SEED, hash_seed)
        final_key = privacy_amplify(reconciliation.corrected_key_a, length, hash_seed)
        bob_final_key = privacy_amplify(reconciliation.corrected_key_b, length, hash_seed)

    guesses = _eavesdropper_guesses(attack, transcript, register, rng)

    result = RunResult(
        config=config,
        attack_name=attack.name,
        rounds=records,
        transcript=transcript,
        aborted=decision.abort,
        abort_reason=decision.reason,
        error_rates=rates,
        alice_sifted=alice_sifted,
        bob_sifted=bob_sifted,
        info_indices=info,
        test_indices=test,
        reconciliation=reconciliation,
        final_key=final_key,
        bob_final_key=bob_final_key,
        hash_seed=hash_seed,
        eve_guesses=guesses,
    )
    result.eve_report = eve_detection_and_gain(attack, result)
    logger.info(
        f"Run finished: protocol={config.protocol.value} N={config.N} seed={config.seed} "
        f"attack={attack.name} aborted={result.aborted} reason={result.abort_reason} "
        f"efficiency={result.efficiency:.6g}"
    )
    return result


def _prepared_bit(record: RoundRecord) -> int:
    return record.alice_bit


def _deferred_z_bit(record: RoundRecord) -> int:
    return record.alice_return_outcome


def _register_reference(record: RoundRecord) -> int:
    # Z-prepared: what Alice sent. X-prepared: her deferred Z outcome.
    return record.alice_bit if record.alice_basis is Basis.Z else record.alice_return_outcome


def _run_measure_resend(
    config: ProtocolConfig, attack: AbstractAttackStrategy, rng: np.random.Generator
) -> RunResult:
    n = config.N
    bases = sample_choice_string(n, config.gamma1, config.exact_counts, rng)
    bits = rng.integers(0, 2, n).tolist()
    actions = sample_choice_string(n, config.gamma2, config.exact_counts, rng)
    records, register = _transmit(n, bases, bits, actions, attack, rng)

    transcript = PublicTranscript()
    transcript.announce(AnnouncementKind.ALICE_BASES, bases)
    transcript.announce(AnnouncementKind.BOB_ACTIONS, actions)
    _alice_measures(records, register, rng, sift_in_z=False)

    for record in records:
        if record.bob_action is BobAction.CTRL:
            record.role = RoundRole.CTRL_CHECK
        elif record.category is RoundCategory.X_SIFT:
            record.role = RoundRole.DISCARD
    rates = _ctrl_estimates(records)
    decision = abort_decision(rates, config.p_t)
    logger.debug(f"CTRL check: {[(c.value, e.rate) for c, e in rates.items()]} -> {decision}")

    z_sift = [r.index for r in records if r.category is RoundCategory.Z_SIFT]
    test = _select_test(z_sift, int(round(config.xi * len(z_sift))), rng)
    logger.debug(f"TEST selection: {len(test)} of {len(z_sift)} Z-SIFT rounds")
    return _complete_run(
        config, attack, rng, records, register, transcript, rates, decision,
        sift=z_sift, test=test, info_limit=None,
        test_reference=_prepared_bit, alice_key_bit=_prepared_bit,
    )


def _run_register(config: ProtocolConfig, attack: AbstractAttackStrategy, rng: np.random.Generator) -> RunResult:
    n = config.N
    if config.protocol is ProtocolKind.P3:
        bases, bits = "1" * n, [0] * n
    else:
        bases = sample_choice_string(n, 0.5, config.exact_counts, rng)
        bits = rng.integers(0, 2, n).tolist()
    actions = sample_choice_string(n, config.sift_probability, config.exact_counts, rng)
    records, register = _transmit(n, bases, bits, actions, attack, rng)

    # b is announced only once every return sits in Alice's register.
    transcript = PublicTranscript()
    transcript.announce(AnnouncementKind.BOB_ACTIONS, actions)
    _alice_measures(records, register, rng, sift_in_z=True)

    sift = [r.index for r in records if r.bob_action is BobAction.SIFT]
    ctrl = [r.index for r in records if r.bob_action is BobAction.CTRL]
    for position, i in enumerate(ctrl):
        records[i].role = RoundRole.CTRL_CHECK if position < config.lambda_ else RoundRole.SURPLUS
    rates = _ctrl_estimates(records)
    shortfalls = (len(sift) < config.kappa + config.tau, len(ctrl) < config.lambda_)
    decision = abort_decision(rates, config.p_t, shortfalls)
    if decision.reason is AbortReason.SHORTFALL:
        logger.warning(
            f"Shortfall abort: SIFT={len(sift)} (need {config.kappa + config.tau}), "
            f"CTRL={len(ctrl)} (need {config.lambda_})"
        )

    test = _select_test(sift, config.tau, rng)
    logger.debug(f"TEST selection: {len(test)} of {len(sift)} SIFT rounds")
    return _complete_run(
        config, attack, rng, records, register, transcript, rates, decision,
        sift=sift, test=test, info_limit=config.kappa,
        test_reference=_register_reference, alice_key_bit=_deferred_z_bit,
    )


def _prepare_run(config, expected, attack, rng):
    if config.protocol is not expected:
        raise ProtocolMismatchError(f"Expected a {expected.value} config, got {config.protocol.value}")
    attack = attack if attack is not None else no_attack()
    rng = rng if rng is not None else np.random.default_rng(config.seed)
    logger.info(f"Run started: protocol={config.protocol.value} N={config.N} seed={config.seed} attack={attack.name}")
    return attack, rng


def run_protocol1(config: ProtocolConfig, attack: Optional[AbstractAttackStrategy] = None,
                  rng: Optional[np.random.Generator] = None) -> RunResult:
    """Asymmetric four-state protocol with measure-resend Bob."""
    attack, rng = _prepare_run(config, ProtocolKind.P1, attack, rng)
    return _run_measure_resend(config, attack, rng)


def run_baseline(config: ProtocolConfig, attack: Optional[AbstractAttackStrategy] = None,
                 rng: Optional[np.random.Generator] = None) -> RunResult:
    """P1 machinery at gamma1 = gamma2 = 1/2; X-SIFT discarded."""
    attack, rng = _prepare_run(config, ProtocolKind.BASELINE, attack, rng)
    return _run_measure_resend(config, attack, rng)


def run_protocol2(config: ProtocolConfig, attack: Optional[AbstractAttackStrategy] = None,
                  rng: Optional[np.random.Generator] = None) -> RunResult:
    """Uniform bases; Alice stores every return and measures after b is announced."""
    attack, rng = _prepare_run(config, ProtocolKind.P2, attack, rng)
    return _run_register(config, attack, rng)


def run_protocol3(config: ProtocolConfig, attack: Optional[AbstractAttackStrategy] = None,
                  rng: Optional[np.random.Generator] = None) -> RunResult:
    """As P2 with every qubit prepared in |+>."""
    attack, rng = _prepare_run(config, ProtocolKind.P3, attack, rng)
    return _run_register(config, attack, rng)


_RUNNERS = {
    ProtocolKind.P1: run_protocol1,
    ProtocolKind.P2: run_protocol2,
    ProtocolKind.P3: run_protocol3,
    ProtocolKind.BASELINE: run_baseline,
}


def run_protocol(config: ProtocolConfig, attack: Optional[AbstractAttackStrategy] = None,
                 rng: Optional[np.random.Generator] = None) -> RunResult:
    return _RUNNERS[config.protocol](config, attack, rng)
