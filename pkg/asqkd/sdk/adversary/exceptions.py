# asqkd SDK - Adversary Module Exceptions


class AdversaryError(Exception):
    """Base exception for eavesdropper strategies."""
    pass


class AttackConfigurationError(AdversaryError, ValueError):
    """Invalid attack parameters: theta out of range, malformed unitary, bad policy."""
    pass


class UnknownAttackError(AdversaryError, KeyError):
    """Raised when a catalog entry names a strategy that is not registered."""
    pass


__all__ = ["AdversaryError", "AttackConfigurationError", "UnknownAttackError"]
