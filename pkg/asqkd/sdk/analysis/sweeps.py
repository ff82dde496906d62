# asqkd SDK - Analysis Module Sweeps
#
# Each trial's stream seed is derive_seed(master_seed, grid_index, trial), so
# results do not depend on how trials are spread over workers.

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from ..adversary.base import AttackCatalogEntry, StrategyKind
from ..adversary.exceptions import AttackConfigurationError
from ..adversary.main import create_strategy
from ..protocol.base import ErrorCategory, ProtocolConfig, ProtocolKind
from ..protocol.engine import run_protocol
from ..protocol.rules import derive_seed
from .base import SweepPoint, SweepResult, TrialRecord
from .exceptions import SweepAxisError

logger = logging.getLogger(__name__)

GAMMA_AXES = ("gamma", "gamma1", "gamma2")
# axis name -> ProtocolConfig keys it sets
CONFIG_AXES: Dict[str, Tuple[str, ...]] = {
    "gamma": ("gamma1", "gamma2"),
    "gamma1": ("gamma1",),
    "gamma2": ("gamma2",),
    "xi": ("xi",),
    "N": ("N",),
    "kappa": ("kappa",),
    "tau": ("tau",),
    "lambda": ("lambda",),
    "delta": ("delta",),
    "p_t": ("p_t",),
}
INTEGER_AXES = ("N", "kappa", "tau", "lambda")
SWEEP_AXES = tuple(CONFIG_AXES) + ("theta",)
THETA_GRID = (0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2)
# param_name of the appended baseline point; its param_value is left blank.
BASELINE_LABEL = "baseline"


class TrialJob(NamedTuple):
    config: ProtocolConfig
    attack: Optional[AttackCatalogEntry]
    grid_index: int
    trial: int
    master_seed: int
    param_name: str
    param_value: Optional[float]


def _config_payload(config: ProtocolConfig) -> Dict[str, Any]:
    payload = config.model_dump(by_alias=True)
    if config.protocol.uses_register:
        payload.pop("N")
    return payload


def grid_point(
    base: ProtocolConfig,
    attack: Optional[AttackCatalogEntry],
    axis: str,
    value: float,
) -> Tuple[ProtocolConfig, Optional[AttackCatalogEntry]]:
    """Config and attack for one grid value. P1 at gamma = 1/2 runs as BASELINE."""
    if axis not in SWEEP_AXES:
        raise SweepAxisError(axis, f"unknown sweep axis '{axis}' (known: {', '.join(SWEEP_AXES)})")

    if axis == "theta":
        if attack is None:
            attack = AttackCatalogEntry(name="entangling_probe")
        if attack.strategy is not StrategyKind.ENTANGLING_PROBE:
            raise SweepAxisError(axis, "the theta axis needs an entangling_probe attack")
        attack = attack.model_copy(update={"parameters": {**attack.parameters, "theta": float(value)}})
        try:
            create_strategy(attack)
        except AttackConfigurationError as e:
            raise SweepAxisError(axis, str(e)) from e
        return base, attack

    payload = _config_payload(base)
    if axis == "N" and base.protocol.uses_register:
        raise SweepAxisError(axis, "N is derived from kappa, tau, lambda and delta for P2/P3")
    for key in CONFIG_AXES[axis]:
        payload[key] = int(value) if axis in INTEGER_AXES else float(value)
    if axis in GAMMA_AXES and base.protocol is ProtocolKind.P1 and float(value) == 0.5:
        payload["protocol"] = ProtocolKind.BASELINE
    try:
        return ProtocolConfig(**payload), attack
    except ValidationError as e:
        raise SweepAxisError(axis, f"{axis}={value}: {e.errors()[0]['msg']}") from e


def run_trial(job: TrialJob) -> TrialRecord:
    seed = derive_seed(job.master_seed, job.grid_index, job.trial)
    config = job.config.model_copy(update={"seed": seed})
    strategy = create_strategy(job.attack)
    result = run_protocol(config, strategy)
    report = result.eve_report
    return TrialRecord(
        protocol=config.protocol.value,
        param_name=job.param_name,
        param_value=job.param_value,
        trial=job.trial,
        seed=seed,
        efficiency=result.efficiency,
        z_ctrl_err=result.error_rate(ErrorCategory.Z_CTRL),
        x_ctrl_err=result.error_rate(ErrorCategory.X_CTRL),
        test_err=result.error_rate(ErrorCategory.TEST),
        aborted=result.aborted,
        abort_reason=result.abort_reason.value if result.abort_reason else None,
        eve_accuracy=report.guess_accuracy if report else None,
        eve_coverage=report.coverage if report else 0.0,
    )


def execute_trials(jobs: Sequence[TrialJob], workers: int = 1) -> List[TrialRecord]:
    """Run jobs, returning records in submission order."""
    if workers <= 1 or len(jobs) <= 1:
        return [run_trial(job) for job in jobs]
    chunksize = max(1, len(jobs) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_trial, jobs, chunksize=chunksize))


def aggregate(rows: Sequence[TrialRecord]) -> List[SweepPoint]:
    groups: Dict[Tuple[str, str, Optional[float]], List[TrialRecord]] = {}
    for row in rows:
        groups.setdefault((row.protocol, row.param_name, row.param_value), []).append(row)
    points = []
    for (protocol, name, value), group in groups.items():
        efficiency = np.array([r.efficiency for r in group])
        accuracies = [r.eve_accuracy for r in group if r.eve_accuracy is not None]
        points.append(
            SweepPoint(
                protocol=protocol,
                param_name=name,
                param_value=value,
                trials=len(group),
                mean_efficiency=float(efficiency.mean()),
                std_efficiency=float(efficiency.std()),
                mean_z_ctrl_err=float(np.mean([r.z_ctrl_err for r in group])),
                mean_x_ctrl_err=float(np.mean([r.x_ctrl_err for r in group])),
                mean_test_err=float(np.mean([r.test_err for r in group])),
                abort_frequency=float(np.mean([r.aborted for r in group])),
                mean_eve_accuracy=float(np.mean(accuracies)) if accuracies else None,
                mean_eve_coverage=float(np.mean([r.eve_coverage for r in group])),
            )
        )
    return points


def _sweep(
    base: ProtocolConfig,
    attack: Optional[AttackCatalogEntry],
    axis: str,
    values: Sequence[float],
    trials: int,
    master_seed: int,
    workers: int,
    extra_points: Sequence[Tuple[ProtocolConfig, Optional[AttackCatalogEntry], str, Optional[float]]] = (),
) -> SweepResult:
    if trials < 1:
        raise SweepAxisError(axis, "trials must be >= 1")
    points = [(*grid_point(base, attack, axis, v), axis, float(v)) for v in values]
    points.extend(extra_points)
    jobs = [
        TrialJob(config, entry, g, t, master_seed, name, value)
        for g, (config, entry, name, value) in enumerate(points)
        for t in range(trials)
    ]
    logger.info(f"Sweep over {axis}: {len(points)} grid points x {trials} trials, workers={workers}")
    rows = execute_trials(jobs, workers)
    return SweepResult(
        axis=axis,
        values=[float(v) for v in values],
        trials=trials,
        master_seed=master_seed,
        rows=rows,
        points=aggregate(rows),
    )


def efficiency_sweep(
    base: ProtocolConfig,
    axis: str,
    values: Sequence[float],
    trials: int = 32,
    attack: Optional[AttackCatalogEntry] = None,
    master_seed: int = 0,
    workers: int = 1,
    include_baseline: bool = True,
) -> SweepResult:
    """Mean efficiency per grid value, plus a baseline point for comparison.

    The baseline is appended as the last grid index, labelled BASELINE_LABEL with
    no param_value and kept out of `values`, unless a grid value already runs
    as BASELINE.
    """
    extra = []
    if include_baseline and base.protocol is not ProtocolKind.BASELINE:
        runs_baseline = axis in GAMMA_AXES and base.protocol is ProtocolKind.P1 and 0.5 in [float(v) for v in values]
        if not runs_baseline:
            baseline = ProtocolConfig(
                protocol=ProtocolKind.BASELINE,
                N=base.N,
                xi=base.xi,
                p_t=base.p_t,
                exact_counts=base.exact_counts,
            )
            extra.append((baseline, attack, BASELINE_LABEL, None))
    return _sweep(base, attack, axis, values, trials, master_seed, workers, extra)


def detection_sweep(
    base: ProtocolConfig,
    attack: Optional[AttackCatalogEntry],
    axis: str = "theta",
    values: Sequence[float] = THETA_GRID,
    trials: int = 32,
    master_seed: int = 0,
    workers: int = 1,
) -> SweepResult:
    """Error rates, abort frequency and Eve's accuracy across an attack grid."""
    return _sweep(base, attack, axis, values, trials, master_seed, workers)


def compare_protocols(
    trials: int = 8,
    master_seed: int = 0,
    workers: int = 1,
    n_rounds: int = 10_000,
) -> Dict[str, SweepPoint]:
    """Mean efficiency of BASELINE, P1, P2 and P3 at their reference parameters."""
    configs = [
        ProtocolConfig(protocol=ProtocolKind.BASELINE, N=n_rounds, xi=0.1),
        ProtocolConfig.preset("p1-reference", N=n_rounds),
        ProtocolConfig.preset("p2-reference"),
        ProtocolConfig.preset("p2-reference", protocol="P3"),
    ]
    jobs = [
        TrialJob(config, None, g, t, master_seed, "protocol", None)
        for g, config in enumerate(configs)
        for t in range(trials)
    ]
    points = aggregate(execute_trials(jobs, workers))
    return {p.protocol: p for p in points}
