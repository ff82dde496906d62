# asqkd SDK - Adversary Module Main Logic

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING, Callable, Dict, List, Optional

from .base import (
    AbstractAttackStrategy,
    AttackCatalogEntry,
    AttackLeg,
    BasisPolicy,
    EveReport,
    StrategyKind,
    pairs_to_matrix,
)
from .exceptions import AttackConfigurationError, UnknownAttackError
from .strategies import CustomUnitaryAttack, EntanglingProbeAttack, InterceptResendAttack, NoAttack

if TYPE_CHECKING:
    from ..protocol.base import RunResult

logger = logging.getLogger(__name__)


def no_attack() -> AbstractAttackStrategy:
    return NoAttack()


def intercept_resend(
    basis_policy: BasisPolicy = BasisPolicy.ALWAYS_Z,
    legs: AttackLeg = AttackLeg.FORWARD,
) -> AbstractAttackStrategy:
    return InterceptResendAttack(basis_policy=basis_policy, legs=legs)


def entangling_probe(theta: float) -> AbstractAttackStrategy:
    return EntanglingProbeAttack(theta)


def custom_unitary(unitary_forward=None, unitary_backward=None) -> AbstractAttackStrategy:
    return CustomUnitaryAttack(unitary_forward=unitary_forward, unitary_backward=unitary_backward)


def _build_entangling(entry: AttackCatalogEntry) -> AbstractAttackStrategy:
    if entry.theta is None:
        raise AttackConfigurationError("entangling_probe requires parameter 'theta'")
    return entangling_probe(entry.theta)


def _build_custom(entry: AttackCatalogEntry) -> AbstractAttackStrategy:
    forward = pairs_to_matrix(entry.unitary_forward) if entry.unitary_forward is not None else None
    backward = pairs_to_matrix(entry.unitary_backward) if entry.unitary_backward is not None else None
    return custom_unitary(forward, backward)


# Registry of strategy constructors keyed by catalog strategy name.
STRATEGY_FACTORIES: Dict[StrategyKind, Callable[[AttackCatalogEntry], AbstractAttackStrategy]] = {
    StrategyKind.NONE: lambda entry: no_attack(),
    StrategyKind.INTERCEPT_RESEND: lambda entry: intercept_resend(entry.basis_policy, entry.legs),
    StrategyKind.ENTANGLING_PROBE: _build_entangling,
    StrategyKind.CUSTOM_UNITARY: _build_custom,
}


def create_strategy(entry: Optional[AttackCatalogEntry] = None) -> AbstractAttackStrategy:
    """Build a fresh strategy instance for one run."""
    if entry is None:
        return no_attack()
    factory = STRATEGY_FACTORIES.get(entry.strategy)
    if factory is None:
        raise UnknownAttackError(f"No strategy registered for '{entry.strategy}'")
    strategy = factory(entry)
    logger.debug(f"Created attack strategy {entry.name}: {strategy.describe()}")
    return strategy


def default_catalog() -> List[AttackCatalogEntry]:
    """Attacks exercised by the robustness checks."""
    entries = [
        AttackCatalogEntry(name="intercept_resend/always_Z/forward", strategy=StrategyKind.INTERCEPT_RESEND,
                           basis_policy=BasisPolicy.ALWAYS_Z, legs=AttackLeg.FORWARD),
        AttackCatalogEntry(name="intercept_resend/always_Z/backward", strategy=StrategyKind.INTERCEPT_RESEND,
                           basis_policy=BasisPolicy.ALWAYS_Z, legs=AttackLeg.BACKWARD),
        AttackCatalogEntry(name="intercept_resend/always_X/both", strategy=StrategyKind.INTERCEPT_RESEND,
                           basis_policy=BasisPolicy.ALWAYS_X, legs=AttackLeg.BOTH),
        AttackCatalogEntry(name="intercept_resend/random_per_round/both", strategy=StrategyKind.INTERCEPT_RESEND,
                           basis_policy=BasisPolicy.RANDOM_PER_ROUND, legs=AttackLeg.BOTH),
    ]
    for label, theta in (("pi/4", math.pi / 4), ("3pi/8", 3 * math.pi / 8), ("pi/2", math.pi / 2)):
        entries.append(
            AttackCatalogEntry(name=f"entangling_probe/{label}", strategy=StrategyKind.ENTANGLING_PROBE,
                               parameters={"theta": theta})
        )
    check_catalog(entries)
    return entries


def check_catalog(entries: List[AttackCatalogEntry]) -> None:
    seen = set()
    for entry in entries:
        if entry.name in seen:
            raise AttackConfigurationError(f"Duplicate catalog name '{entry.name}'")
        seen.add(entry.name)


def eve_detection_and_gain(strategy: Optional[AbstractAttackStrategy], protocol_run: "RunResult") -> EveReport:
    """Observed error rates and Eve's accuracy on the INFO bits she guessed."""
    from ..protocol.base import ErrorCategory

    rates = protocol_run.error_rates
    z_ctrl = rates[ErrorCategory.Z_CTRL]
    x_ctrl = rates[ErrorCategory.X_CTRL]
    ctrl_samples = z_ctrl.samples + x_ctrl.samples
    pooled = (z_ctrl.errors + x_ctrl.errors) / ctrl_samples if ctrl_samples else 0.0

    guesses = protocol_run.eve_guesses
    guessed = correct = 0
    for index, bit in zip(protocol_run.info_indices, protocol_run.alice_sifted):
        guess = guesses.get(index)
        if guess is not None:
            guessed += 1
            correct += int(guess == int(bit))
    info_rounds = len(protocol_run.info_indices)

    report = EveReport(
        ctrl_error=pooled,
        z_ctrl_error=z_ctrl.rate,
        x_ctrl_error=x_ctrl.rate,
        test_error=rates[ErrorCategory.TEST].rate,
        guess_accuracy=correct / guessed if guessed else None,
        coverage=guessed / info_rounds if info_rounds else 0.0,
        guessed=guessed,
        correct=correct,
        info_rounds=info_rounds,
    )
    name = strategy.name if strategy is not None else protocol_run.attack_name
    logger.debug(f"Eve report for {name}: {report.model_dump()}")
    return report
