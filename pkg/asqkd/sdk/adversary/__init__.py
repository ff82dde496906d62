# asqkd SDK - Adversary Module

from .base import (
    AbstractAttackStrategy,
    AttackCatalogEntry,
    AttackLeg,
    BasisPolicy,
    EveReport,
    StrategyKind,
    pairs_to_matrix,
)
from .exceptions import AdversaryError, AttackConfigurationError, UnknownAttackError
from .main import (
    STRATEGY_FACTORIES,
    check_catalog,
    create_strategy,
    custom_unitary,
    default_catalog,
    entangling_probe,
    eve_detection_and_gain,
    intercept_resend,
    no_attack,
)
from .strategies import CustomUnitaryAttack, EntanglingProbeAttack, InterceptResendAttack, NoAttack

__all__ = [
    "AbstractAttackStrategy",
    "AttackCatalogEntry",
    "AttackLeg",
    "BasisPolicy",
    "EveReport",
    "StrategyKind",
    "pairs_to_matrix",
    "AdversaryError",
    "AttackConfigurationError",
    "UnknownAttackError",
    "STRATEGY_FACTORIES",
    "check_catalog",
    "create_strategy",
    "custom_unitary",
    "default_catalog",
    "entangling_probe",
    "eve_detection_and_gain",
    "intercept_resend",
    "no_attack",
    "NoAttack",
    "InterceptResendAttack",
    "EntanglingProbeAttack",
    "CustomUnitaryAttack",
]
