# Comando 'attack-eval'

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


def attack_eval_cmd(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    out: Optional[Path] = OutOption,
    report_format: ReportFormat = FormatOption,
    trials: Optional[int] = TrialsOption,
    workers: Optional[int] = WorkersOption,
    verbose: bool = VerboseOption,
):
    """
    Barrido de detección de un ataque (por defecto theta en {0, pi/8, pi/4, 3pi/8, pi/2}).
    """
    code = run_from_cli(Command.ATTACK_EVAL, config, seed, out, report_format, trials, workers, verbose, echo_report)
    raise typer.Exit(code=code)
