# asqkd SDK - Analysis Module Proportions

from typing import Union

from ..protocol.base import RoundCategory, RoundRole, RunResult
from .base import ProportionBreakdown, XiConvention
from .exceptions import AnalysisError


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise AnalysisError(f"{name} must lie in [0, 1], got {value}")


def theoretical_proportions_p1(
    gamma1: float,
    gamma2: float,
    xi: float,
    convention: Union[XiConvention, str] = XiConvention.STEP6,
) -> ProportionBreakdown:
    """Expected round fractions for the measure-resend protocol (also the baseline at 1/2)."""
    for name, value in (("gamma1", gamma1), ("gamma2", gamma2), ("xi", xi)):
        _check_probability(name, value)
    z_sift = gamma1 * gamma2
    test_share = xi if XiConvention(convention) is XiConvention.STEP6 else 1.0 - xi
    x_sift = (1 - gamma1) * gamma2
    return ProportionBreakdown(
        z_sift=z_sift,
        x_sift=x_sift,
        z_ctrl=gamma1 * (1 - gamma2),
        x_ctrl=(1 - gamma1) * (1 - gamma2),
        info=(1 - test_share) * z_sift,
        test=test_share * z_sift,
        ctrl=1 - gamma2,
        discard=x_sift,
    )


def theoretical_proportions_p23(
    kappa: int,
    tau: int,
    lambda_: int,
    delta: float = 0.0,
    single_state: bool = False,
) -> ProportionBreakdown:
    """Expected fractions for the register protocols.

    Role fractions are relative to N = (kappa + tau + lambda)(1 + delta); the
    slack shows up as `surplus`. single_state=True is P3 (every qubit is |+>).
    """
    if min(kappa, tau, lambda_) < 1:
        raise AnalysisError("kappa, tau and lambda must be positive")
    if delta < 0:
        raise AnalysisError("delta must be >= 0")
    total = kappa + tau + lambda_
    scale = 1.0 / (1.0 + delta)
    sift_all = (kappa + tau) / total
    ctrl_all = lambda_ / total
    z_share = 0.0 if single_state else 0.5
    return ProportionBreakdown(
        z_sift=sift_all * z_share,
        x_sift=sift_all * (1 - z_share),
        z_ctrl=ctrl_all * z_share,
        x_ctrl=ctrl_all * (1 - z_share),
        info=kappa / total * scale,
        test=tau / total * scale,
        ctrl=lambda_ / total * scale,
        surplus=delta * scale,
    )


def empirical_proportions(run: RunResult) -> ProportionBreakdown:
    n = len(run.rounds)
    if n == 0:
        raise AnalysisError("Cannot compute proportions of an empty run")
    categories = run.category_counts()
    roles = run.role_counts()
    return ProportionBreakdown(
        z_sift=categories[RoundCategory.Z_SIFT] / n,
        x_sift=categories[RoundCategory.X_SIFT] / n,
        z_ctrl=categories[RoundCategory.Z_CTRL] / n,
        x_ctrl=categories[RoundCategory.X_CTRL] / n,
        info=roles[RoundRole.INFO] / n,
        test=roles[RoundRole.TEST] / n,
        ctrl=roles[RoundRole.CTRL_CHECK] / n,
        surplus=roles[RoundRole.SURPLUS] / n,
        discard=roles[RoundRole.DISCARD] / n,
    )
