# Comando 'run'

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


def run_cmd(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    report_format: ReportFormat = FormatOption,
    trials: Optional[int] = TrialsOption,
    workers: Optional[int] = WorkersOption,
    verbose: bool = VerboseOption,
):
    """
    Ejecuta el protocolo configurado (una fila por ejecución).
    """
    code = run_from_cli(Command.RUN, config, seed, out, report_format, trials, workers, verbose, echo_report)
    raise typer.Exit(code=code)
