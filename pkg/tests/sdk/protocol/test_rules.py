import numpy as np
import pytest
from pydantic import ValidationError

from asqkd.sdk.protocol import (
    AbortReason,
    BobAction,
    ConfigurationError,
    ErrorCategory,
    ErrorEstimate,
    ProtocolConfig,
    ProtocolKind,
    RoundCategory,
    abort_decision,
    classify_round,
    derive_seed,
    estimate_error_rate,
    sample_choice_string,
)
from asqkd.sdk.quantum import Basis
from tests.stats import within_sigma


class TestChoiceString:
    def test_degenerate_probability(self, rng):
        assert sample_choice_string(10, 1.0, False, rng) == "0" * 10
        assert sample_choice_string(10, 0.0, False, rng) == "1" * 10

    def test_exact_counts(self, rng):
        drawn = {sample_choice_string(8, 0.75, True, rng) for _ in range(30)}
        assert all(s.count("0") == 6 and len(s) == 8 for s in drawn)
        assert len(drawn) > 1

    def test_bernoulli_concentration(self):
        # one retry on a 3-sigma miss
        for seed in (1, 2):
            s = sample_choice_string(100_000, 0.9, False, np.random.default_rng(seed))
            if within_sigma(s.count("0") / len(s), 0.9, len(s)):
                break
        else:
            pytest.fail("zero count outside 90000 +/- 285 twice")

    def test_rejects_bad_probability(self, rng):
        with pytest.raises(ConfigurationError):
            sample_choice_string(4, 1.5, False, rng)

    def test_empty(self, rng):
        assert sample_choice_string(0, 0.5, True, rng) == ""


@pytest.mark.parametrize(
    "basis, action, expected",
    [
        (Basis.Z, BobAction.SIFT, RoundCategory.Z_SIFT),
        (Basis.X, BobAction.SIFT, RoundCategory.X_SIFT),
        (Basis.Z, BobAction.CTRL, RoundCategory.Z_CTRL),
        ("X", "CTRL", RoundCategory.X_CTRL),
    ],
)
def test_classify_round(basis, action, expected):
    assert classify_round(basis, action) is expected


def test_estimate_error_rate():
    assert estimate_error_rate([(0, 0), (1, 1)]).rate == 0.0
    half = estimate_error_rate([(0, 1), (1, 1), (0, 0), (1, 0)])
    assert (half.rate, half.errors, half.samples, half.no_data) == (0.5, 2, 4, False)
    empty = estimate_error_rate([])
    assert empty.rate == 0.0 and empty.no_data


def test_abort_decision_threshold_is_strict():
    zero = {c: 0.0 for c in ErrorCategory}
    assert not abort_decision(zero, 0.05).abort
    assert not abort_decision({**zero, ErrorCategory.Z_CTRL: 0.05}, 0.05).abort

    decision = abort_decision({**zero, ErrorCategory.Z_CTRL: 0.051}, 0.05)
    assert decision.abort and decision.reason is AbortReason.CTRL_ERROR


def test_abort_decision_order():
    rates = {
        ErrorCategory.Z_CTRL: 0.0,
        ErrorCategory.X_CTRL: ErrorEstimate(rate=0.3, errors=3, samples=10, no_data=False),
        ErrorCategory.TEST: 0.4,
    }
    assert abort_decision(rates, 0.05, True).reason is AbortReason.CTRL_ERROR
    assert abort_decision({ErrorCategory.TEST: 0.4}, 0.05, True).reason is AbortReason.TEST_ERROR
    assert abort_decision({}, 0.05, (False, True)).reason is AbortReason.SHORTFALL
    assert not abort_decision({}, 0.05, (False, False)).abort


def test_derive_seed_is_stable_and_distinct():
    assert derive_seed(7, 0, 0) == derive_seed(7, 0, 0)
    seeds = {derive_seed(7, g, t) for g in range(4) for t in range(8)}
    assert len(seeds) == 32
    assert derive_seed(7, 1, 0) != derive_seed(8, 1, 0)
    assert 0 <= derive_seed(2**64 - 1, 3) < 2**64


class TestProtocolConfig:
    def _key_of(self, exc_info):
        error = exc_info.value.errors()[0]["ctx"]["error"]
        assert isinstance(error, ConfigurationError)
        return error.key, str(error)

    @pytest.mark.parametrize("key, value", [("gamma1", 0.4), ("gamma2", 1.0), ("xi", 0.6), ("xi", 0.0)])
    def test_p1_regime(self, key, value):
        with pytest.raises(ValidationError) as exc_info:
            ProtocolConfig(protocol="P1", **{key: value})
        assert self._key_of(exc_info)[0] == key

    def test_gamma_message(self):
        with pytest.raises(ValidationError) as exc_info:
            ProtocolConfig(protocol="P1", gamma1=0.4)
        assert self._key_of(exc_info) == ("gamma1", "gamma1 must satisfy 1/2 < gamma1 < 1")

    @pytest.mark.parametrize(
        "fields, key",
        [
            ({"kappa": 0}, "kappa"),
            ({"tau": 0}, "tau"),
            ({"lambda": 0}, "lambda"),
            ({"delta": 0.0}, "delta"),
            ({"N": 5}, "N"),
        ],
    )
    def test_register_regime(self, fields, key):
        with pytest.raises(ValidationError) as exc_info:
            ProtocolConfig(protocol="P2", **fields)
        assert self._key_of(exc_info)[0] == key

    @pytest.mark.parametrize("fields, key", [({"p_t": 0.5}, "p_t"), ({"seed": -1}, "seed"), ({"seed": 2**64}, "seed")])
    def test_common_ranges(self, fields, key):
        with pytest.raises(ValidationError) as exc_info:
            ProtocolConfig(**fields)
        assert self._key_of(exc_info)[0] == key

    def test_derived_round_count(self):
        config = ProtocolConfig(protocol="P2", kappa=400, tau=100, lambda_=500, delta=0.1)
        assert config.N == 1100
        assert ProtocolConfig(protocol="P3", kappa=400, tau=100, **{"lambda": 500}, delta=0.1, N=1100).N == 1100

    def test_baseline_forces_symmetric_choices(self):
        config = ProtocolConfig(protocol="BASELINE", gamma1=0.9, gamma2=0.8)
        assert (config.gamma1, config.gamma2) == (0.5, 0.5)
        assert config.N == 10_000

    def test_probabilities(self):
        assert ProtocolConfig(protocol="P1", gamma1=0.8, gamma2=0.7).sift_probability == 0.7
        p2 = ProtocolConfig.preset("p2-reference")
        assert p2.sift_probability == pytest.approx(0.5)
        assert p2.z_probability == 0.5
        assert ProtocolConfig.preset("p2-reference", protocol="P3").z_probability == 0.0

    def test_presets(self):
        reference = ProtocolConfig.preset("p1-reference", seed=3)
        assert (reference.protocol, reference.N, reference.seed) == (ProtocolKind.P1, 100_000, 3)
        assert ProtocolConfig.preset("asymptotic-p2").exact_counts
        with pytest.raises(ConfigurationError):
            ProtocolConfig.preset("nope")

    def test_unknown_field_rejected(self):
        with pytest.raises(ValidationError):
            ProtocolConfig(protocol="P1", gamma3=0.9)
