# asqkd SDK - Analysis Module

from .base import ProportionBreakdown, SweepPoint, SweepResult, TrialRecord, XiConvention
from .exceptions import AnalysisError, SweepAxisError
from .proportions import empirical_proportions, theoretical_proportions_p1, theoretical_proportions_p23
from .reports import REPORT_COLUMNS, render_csv, render_json, sweep_to_frame
from .sweeps import (
    BASELINE_LABEL,
    SWEEP_AXES,
    THETA_GRID,
    TrialJob,
    aggregate,
    compare_protocols,
    detection_sweep,
    efficiency_sweep,
    execute_trials,
    grid_point,
    run_trial,
)

__all__ = [
    "ProportionBreakdown",
    "SweepPoint",
    "SweepResult",
    "TrialRecord",
    "XiConvention",
    "AnalysisError",
    "SweepAxisError",
    "empirical_proportions",
    "theoretical_proportions_p1",
    "theoretical_proportions_p23",
    "REPORT_COLUMNS",
    "render_csv",
    "render_json",
    "sweep_to_frame",
    "BASELINE_LABEL",
    "SWEEP_AXES",
    "THETA_GRID",
    "TrialJob",
    "aggregate",
    "compare_protocols",
    "detection_sweep",
    "efficiency_sweep",
    "execute_trials",
    "grid_point",
    "run_trial",
]
