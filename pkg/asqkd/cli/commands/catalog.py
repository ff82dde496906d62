# Comando 'catalog': lista los ataques del catálogo por defecto

import typer

from ...sdk.adversary import StrategyKind, default_catalog


def catalog_cmd():
    """
    Lista los ataques usados en las comprobaciones de robustez.
    """
    for entry in default_catalog():
        if entry.strategy is StrategyKind.ENTANGLING_PROBE:
            detail = f"theta={entry.theta:.6g}"
        else:
            detail = f"basis_policy={entry.basis_policy.value} legs={entry.legs.value}"
        typer.echo(f"{entry.name}\t{entry.strategy.value}\t{detail}")
