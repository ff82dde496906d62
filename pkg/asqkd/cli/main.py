import typer
from typing_extensions import Annotated

from asqkd import __version__ as asqkd_version
from .commands import attack_eval, catalog, run, sweep, theory, verify_golden

app = typer.Typer(
    name="asqkd",
    help="asqkd CLI - Simulador y análisis de protocolos SQKD asimétricos.",
    add_completion=False,
    no_args_is_help=True,
    rich_markup_mode="markdown"
)

app.command("run")(run.run_cmd)
app.command("sweep")(sweep.sweep_cmd)
app.command("attack-eval")(attack_eval.attack_eval_cmd)
app.command("verify-golden")(verify_golden.verify_golden_cmd)
app.command("theory")(theory.theory_cmd)
app.command("catalog")(catalog.catalog_cmd)


def version_callback(value: bool):
    if value:
        print(f"asqkd CLI Version: {asqkd_version}")
        raise typer.Exit()


@app.callback()
def main_callback(
    version: Annotated[
        bool,
        typer.Option(
            "--version",
            callback=version_callback,
            is_eager=True,
            help="Mostrar la versión de asqkd y salir."
        )
    ] = False,
):
    """
    asqkd CLI
    """
    pass


if __name__ == "__main__":
    app()
