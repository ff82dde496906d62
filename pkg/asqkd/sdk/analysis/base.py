# asqkd SDK - Analysis Module Base

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class XiConvention(str, Enum):
    """How xi splits Z-SIFT: STEP6 makes xi the TEST share, TABLE1 the INFO share."""
    STEP6 = "step6"
    TABLE1 = "table1"


class ProportionBreakdown(BaseModel):
    z_sift: float
    x_sift: float
    z_ctrl: float
    x_ctrl: float
    info: float
    test: float
    ctrl: float
    surplus: float = 0.0
    discard: float = 0.0

    @property
    def sift(self) -> float:
        """Usable SIFT share (TEST + INFO)."""
        return self.info + self.test

    @property
    def category_total(self) -> float:
        return self.z_sift + self.x_sift + self.z_ctrl + self.x_ctrl

    @property
    def role_total(self) -> float:
        return self.info + self.test + self.ctrl + self.surplus + self.discard


class TrialRecord(BaseModel):
    """One report row."""
    protocol: str
    param_name: str
    param_value: Optional[float] = None
    trial: int
    seed: int
    efficiency: float
    z_ctrl_err: float
    x_ctrl_err: float
    test_err: float
    aborted: bool
    abort_reason: Optional[str] = None
    eve_accuracy: Optional[float] = None
    eve_coverage: float = 0.0


class SweepPoint(BaseModel):
    protocol: str
    param_name: str
    param_value: Optional[float] = None
    trials: int
    mean_efficiency: float
    std_efficiency: float
    mean_z_ctrl_err: float
    mean_x_ctrl_err: float
    mean_test_err: float
    abort_frequency: float
    mean_eve_accuracy: Optional[float] = None
    mean_eve_coverage: float = 0.0


class SweepResult(BaseModel):
    axis: str
    values: List[Optional[float]]
    trials: int
    master_seed: int
    rows: List[TrialRecord] = Field(default_factory=list)
    points: List[SweepPoint] = Field(default_factory=list)
    parameters: Dict[str, Any] = Field(default_factory=dict)

    def point(self, value: Optional[float], protocol: Optional[str] = None) -> SweepPoint:
        for p in self.points:
            if p.param_value == value and (protocol is None or p.protocol == protocol):
                return p
        raise KeyError(f"No sweep point at {self.axis}={value}")
