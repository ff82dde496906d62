import math

import numpy as np
import pytest
from pydantic import ValidationError

from asqkd.sdk.adversary import (
    AttackCatalogEntry,
    AttackConfigurationError,
    AttackLeg,
    BasisPolicy,
    CustomUnitaryAttack,
    EntanglingProbeAttack,
    InterceptResendAttack,
    NoAttack,
    StrategyKind,
    create_strategy,
    custom_unitary,
    default_catalog,
    entangling_probe,
    intercept_resend,
    no_attack,
)
from asqkd.sdk.protocol import PublicTranscript, AnnouncementKind
from asqkd.sdk.quantum import (
    CNOT,
    Basis,
    QubitRole,
    StateLabel,
    born_probabilities,
    measure,
    prepare,
)

THETAS = [0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2]


def _transcript(b: str) -> PublicTranscript:
    transcript = PublicTranscript()
    transcript.announce(AnnouncementKind.BOB_ACTIONS, b)
    return transcript


def test_no_attack_is_identity(rng):
    attack = no_attack()
    for label in (StateLabel(Basis.Z, 1), StateLabel(Basis.X, 0)):
        state = prepare(label)
        assert attack.on_forward(0, state, rng) is state
        assert attack.on_backward(0, state, rng) is state
    assert attack.finalize(_transcript("0101"), {}) == {}


def test_intercept_z_leaves_z_eigenstates_alone(rng):
    attack = intercept_resend(BasisPolicy.ALWAYS_Z, AttackLeg.FORWARD)
    for bit in (0, 1):
        out = attack.on_forward(bit, prepare(StateLabel(Basis.Z, bit)), rng)
        np.testing.assert_allclose(out.amplitudes, prepare(StateLabel(Basis.Z, bit)).amplitudes)


def test_intercept_z_disturbs_plus_state(rng):
    attack = intercept_resend(BasisPolicy.ALWAYS_Z, AttackLeg.FORWARD)
    out = attack.on_forward(0, prepare(StateLabel(Basis.X, 0)), rng)
    # Alice's X measurement on the collapsed return errs with probability 1/2
    _, p_minus = born_probabilities(out, QubitRole.CHANNEL, Basis.X)
    assert p_minus == pytest.approx(0.5, abs=1e-12)


def test_forward_only_attack_leaves_backward_leg_untouched(rng):
    for attack in (intercept_resend(BasisPolicy.ALWAYS_X, AttackLeg.FORWARD), entangling_probe(math.pi / 3)):
        state = prepare(StateLabel(Basis.X, 1))
        assert attack.on_backward(5, state, rng) is state


def test_backward_only_attack_leaves_forward_leg_untouched(rng):
    attack = intercept_resend(BasisPolicy.ALWAYS_Z, AttackLeg.BACKWARD)
    state = prepare(StateLabel(Basis.X, 0))
    assert attack.on_forward(0, state, rng) is state


def test_random_policy_reuses_the_round_basis_on_both_legs(rng):
    attack = InterceptResendAttack(BasisPolicy.RANDOM_PER_ROUND, AttackLeg.BOTH)
    for i in range(200):
        collapsed = attack.on_forward(i, prepare(StateLabel(Basis.Z, 0)), rng)
        attack.on_backward(i, collapsed, rng)
        z_basis = attack._round_basis[i] is Basis.Z
        assert ((i, AttackLeg.FORWARD) in attack._records) == z_basis
        assert ((i, AttackLeg.BACKWARD) in attack._records) == z_basis


def test_intercept_guess_prefers_backward_record(rng):
    attack = intercept_resend(BasisPolicy.ALWAYS_Z, AttackLeg.BOTH)
    attack._records = {(0, AttackLeg.FORWARD): 0, (0, AttackLeg.BACKWARD): 1, (1, AttackLeg.FORWARD): 1}
    guesses = attack.finalize(_transcript("000"), {})
    assert guesses == {0: 1, 1: 1}


def test_intercept_only_guesses_sift_rounds(rng):
    attack = intercept_resend(BasisPolicy.ALWAYS_Z, AttackLeg.FORWARD)
    for i in range(4):
        attack.on_forward(i, prepare(StateLabel(Basis.Z, i % 2)), rng)
    assert attack.finalize(_transcript("0110"), {}) == {0: 0, 3: 1}


@pytest.mark.parametrize("theta", [-0.1, math.pi / 2 + 0.01, float("nan")])
def test_entangling_probe_rejects_theta_out_of_range(theta):
    with pytest.raises(AttackConfigurationError):
        entangling_probe(theta)


def test_entangling_probe_theta_zero_is_identity_on_channel(rng):
    attack = entangling_probe(0.0)
    for label in (StateLabel(Basis.X, 0), StateLabel(Basis.Z, 1)):
        out = attack.on_forward(0, prepare(label), rng)
        for basis in (Basis.Z, Basis.X):
            assert born_probabilities(out, QubitRole.CHANNEL, basis) == pytest.approx(
                born_probabilities(prepare(label), QubitRole.CHANNEL, basis), abs=1e-12
            )


def test_entangling_probe_pi_half_builds_bell_state(rng):
    out = entangling_probe(math.pi / 2).on_forward(0, prepare(StateLabel(Basis.X, 0)), rng)
    h = 1 / math.sqrt(2)
    np.testing.assert_allclose(out.amplitudes, [h, 0, 0, h], atol=1e-12)
    assert born_probabilities(out, QubitRole.CHANNEL, Basis.X)[1] == pytest.approx(0.5)


@pytest.mark.parametrize("theta", THETAS)
def test_ctrl_error_oracle_matches_closed_form(theta, rng):
    out = entangling_probe(theta).on_forward(0, prepare(StateLabel(Basis.X, 0)), rng)
    _, p_error = born_probabilities(out, QubitRole.CHANNEL, Basis.X)
    assert p_error == pytest.approx((1 - math.cos(theta)) / 2, abs=1e-12)


@pytest.mark.parametrize("theta", THETAS)
def test_guess_accuracy_oracle_matches_closed_form(theta, rng):
    attack = entangling_probe(theta)
    p_correct = 0.0
    for bit in (0, 1):
        out = attack.on_forward(0, prepare(StateLabel(Basis.Z, bit)), rng)
        p_correct += 0.5 * born_probabilities(out, QubitRole.PROBE, Basis.Z)[bit]
    assert p_correct == pytest.approx((1 + math.sin(theta) ** 2) / 2, abs=1e-12)


def test_full_probe_reads_bobs_z_outcome(rng):
    attack = entangling_probe(math.pi / 2)
    for _ in range(30):
        state = attack.on_forward(0, prepare(StateLabel(Basis.X, 1)), rng)
        bob, state = measure(state, QubitRole.CHANNEL, Basis.Z, rng)
        probe, _ = measure(state, QubitRole.PROBE, Basis.Z, rng)
        assert probe.bit == bob.bit


def test_probe_readout_only_on_sift_rounds():
    attack = entangling_probe(math.pi / 4)
    transcript = _transcript("01")
    assert attack.probe_basis(0, transcript) is Basis.Z
    assert attack.probe_basis(1, transcript) is None
    assert attack.probe_basis(0, PublicTranscript()) is None
    assert attack.finalize(transcript, {0: 1, 1: 0}) == {0: 1}


def test_custom_unitary_rejects_non_unitary():
    with pytest.raises(AttackConfigurationError):
        custom_unitary(np.ones((4, 4)))
    with pytest.raises(AttackConfigurationError):
        custom_unitary(np.eye(2))
    with pytest.raises(AttackConfigurationError):
        custom_unitary()


def test_custom_cnot_matches_full_probe(rng):
    attack = custom_unitary(CNOT)
    assert attack.legs is AttackLeg.FORWARD
    out = attack.on_forward(0, prepare(StateLabel(Basis.X, 0)), rng)
    assert out.has_role(QubitRole.PROBE)
    assert born_probabilities(out, QubitRole.CHANNEL, Basis.X)[1] == pytest.approx(0.5)


def test_custom_unitary_on_both_legs_attaches_one_probe(rng):
    attack = custom_unitary(np.eye(4), CNOT)
    assert attack.legs is AttackLeg.BOTH
    state = attack.on_backward(0, attack.on_forward(0, prepare(StateLabel(Basis.Z, 1)), rng), rng)
    assert state.roles == (QubitRole.CHANNEL, QubitRole.PROBE)
    assert born_probabilities(state, QubitRole.PROBE, Basis.Z)[1] == pytest.approx(1.0)


def test_create_strategy_registry():
    assert isinstance(create_strategy(None), NoAttack)
    assert isinstance(create_strategy(AttackCatalogEntry(name="none")), NoAttack)
    ir = create_strategy(AttackCatalogEntry(name="intercept_resend", basis_policy="always_X", legs="both"))
    assert isinstance(ir, InterceptResendAttack)
    assert ir.basis_policy is BasisPolicy.ALWAYS_X and ir.legs is AttackLeg.BOTH
    ep = create_strategy(AttackCatalogEntry(name="entangling_probe", parameters={"theta": 0.5}))
    assert isinstance(ep, EntanglingProbeAttack) and ep.theta == 0.5
    pairs = [(float(v.real), float(v.imag)) for v in CNOT.flatten()]
    cu = create_strategy(AttackCatalogEntry(name="custom_unitary", unitary_backward=pairs))
    assert isinstance(cu, CustomUnitaryAttack) and cu.legs is AttackLeg.BACKWARD


def test_entangling_entry_needs_theta():
    with pytest.raises(AttackConfigurationError):
        create_strategy(AttackCatalogEntry(name="entangling_probe"))


def test_unknown_attack_name_is_rejected():
    with pytest.raises(ValidationError):
        AttackCatalogEntry(name="photon_splitting")


def test_default_catalog():
    catalog = default_catalog()
    names = [entry.name for entry in catalog]
    assert len(names) == len(set(names)) == 7
    kinds = {entry.strategy for entry in catalog}
    assert kinds == {StrategyKind.INTERCEPT_RESEND, StrategyKind.ENTANGLING_PROBE}
    thetas = sorted(e.theta for e in catalog if e.strategy is StrategyKind.ENTANGLING_PROBE)
    assert thetas == pytest.approx([math.pi / 4, 3 * math.pi / 8, math.pi / 2])
    for entry in catalog:
        create_strategy(entry)
