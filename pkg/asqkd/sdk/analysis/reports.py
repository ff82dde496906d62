# asqkd SDK - Analysis Module Reports

import io
import json
import math
from typing import Any, Dict, List, Mapping, Optional

import pandas as pd

from .base import SweepResult

REPORT_COLUMNS = [
    "protocol",
    "param_name",
    "param_value",
    "trial",
    "efficiency",
    "z_ctrl_err",
    "x_ctrl_err",
    "test_err",
    "aborted",
    "eve_accuracy",
    "eve_coverage",
]
FLOAT_FORMAT = "%.6g"


def sweep_to_frame(result: SweepResult) -> pd.DataFrame:
    """One row per trial, grid-major then trial-minor."""
    records = [row.model_dump(include=set(REPORT_COLUMNS)) for row in result.rows]
    frame = pd.DataFrame.from_records(records, columns=REPORT_COLUMNS)
    frame["aborted"] = frame["aborted"].astype(int)
    frame["trial"] = frame["trial"].astype(int)
    for column in ("param_value", "eve_accuracy"):
        frame[column] = frame[column].astype(float)
    return frame


def _header_lines(header: Optional[Mapping[str, Any]]) -> str:
    return "".join(f"# {key}={value}\n" for key, value in (header or {}).items())


def render_csv(result: SweepResult, header: Optional[Mapping[str, Any]] = None) -> str:
    buffer = io.StringIO()
    sweep_to_frame(result).to_csv(buffer, index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")
    return _header_lines(header) + buffer.getvalue()


def _six_digits(value: Any) -> Any:
    if isinstance(value, float):
        return None if math.isnan(value) else float(FLOAT_FORMAT % value)
    return value


def render_json(result: SweepResult, header: Optional[Mapping[str, Any]] = None) -> str:
    rows: List[Dict[str, Any]] = []
    for row in result.rows:
        data = row.model_dump(include=set(REPORT_COLUMNS))
        rows.append({column: _six_digits(data[column]) for column in REPORT_COLUMNS})
    document = {"header": {k: str(v) for k, v in (header or {}).items()}, "rows": rows}
    return json.dumps(document, indent=2) + "\n"
