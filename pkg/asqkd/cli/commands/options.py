# Opciones compartidas por los comandos que generan informes

import typer

from ..experiment import ReportFormat

ConfigOption = typer.Option(
    None, "--config", "-c", exists=False, dir_okay=False,
    help="Documento de configuración key=value (o JSON si termina en .json).",
)
SeedOption = typer.Option(None, "--seed", min=0, max=2**64 - 1, help="Semilla maestra (prioridad sobre SQKD_SEED).")
OutOption = typer.Option(None, "--out", "-o", help="Fichero de salida; por defecto stdout.")
FormatOption = typer.Option(ReportFormat.CSV, "--format", "-f", case_sensitive=False, help="Formato del informe.")
TrialsOption = typer.Option(None, "--trials", min=1, help="Ejecuciones independientes por punto.")
WorkersOption = typer.Option(None, "--workers", "-w", min=1, help="Procesos en paralelo (no cambia los resultados).")
VerboseOption = typer.Option(False, "--verbose", help="Muestra logs de nivel INFO en stderr.")


def echo_report(text: str) -> None:
    typer.echo(text, nl=False)


__all__ = [
    "ConfigOption",
    "SeedOption",
    "OutOption",
    "FormatOption",
    "TrialsOption",
    "WorkersOption",
    "VerboseOption",
    "echo_report",
]
