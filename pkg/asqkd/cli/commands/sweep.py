# Comando 'sweep'

from pathlib import Path
from typing import Optional

import typer

from ..experiment import Command, ReportFormat, run_from_cli
from .options import (
    ConfigOption,
    FormatOption,
    OutOption,
    SeedOption,
    TrialsOption,
    VerboseOption,
    WorkersOption,
    echo_report,
)


def sweep_cmd(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    report_format: ReportFormat = FormatOption,
    trials: Optional[int] = TrialsOption,
    workers: Optional[int] = WorkersOption,
    verbose: bool = VerboseOption,
):
    """
    Barrido de eficiencia sobre sweep.param / sweep.values.
    """
    code = run_from_cli(Command.SWEEP, config, seed, out, report_format, trials, workers, verbose, echo_report)
    raise typer.Exit(code=code)
