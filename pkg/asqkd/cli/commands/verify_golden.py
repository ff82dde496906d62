# Comando 'verify-golden'

from pathlib import Path
from typing import Optional

import typer

from ..experiment import configure_logging, load_settings, verify_golden_file
from .options import VerboseOption, echo_report


def verify_golden_cmd(
    path: Optional[Path] = typer.Argument(
        None, help="Fichero golden; por defecto el vector incluido en el paquete."
    ),
    verbose: bool = VerboseOption,
):
    """
    Recalcula el vector de privacy amplification y lo compara con el fichero golden.
    """
    settings, code = load_settings()
    if settings is None:
        raise typer.Exit(code=code)
    configure_logging(verbose, settings)
    raise typer.Exit(code=verify_golden_file(path, echo_report))
