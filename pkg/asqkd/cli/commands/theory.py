# Comando 'theory': proporciones teóricas de las tablas 1 y 2

import io
from pathlib import Path
from typing import Optional

import pandas as pd
import typer

from ...sdk.analysis import XiConvention, theoretical_proportions_p1, theoretical_proportions_p23
from ...sdk.protocol import ConfigurationError, ProtocolConfig, ProtocolKind
from ..experiment import EXIT_INVALID_SPEC, Command, configure_logging, load_settings, parse_config, report_error
from .options import ConfigOption, VerboseOption, echo_report

FIELDS = ["z_sift", "x_sift", "z_ctrl", "x_ctrl", "info", "test", "ctrl", "surplus", "discard"]


def proportions_frame(config: ProtocolConfig) -> pd.DataFrame:
    if config.protocol.uses_register:
        breakdowns = {
            "delta=0": theoretical_proportions_p23(
                config.kappa, config.tau, config.lambda_, single_state=config.protocol is ProtocolKind.P3
            ),
            f"delta={config.delta}": theoretical_proportions_p23(
                config.kappa, config.tau, config.lambda_, config.delta, single_state=config.protocol is ProtocolKind.P3
            ),
        }
    else:
        breakdowns = {
            convention.value: theoretical_proportions_p1(config.gamma1, config.gamma2, config.xi, convention)
            for convention in XiConvention
        }
    frame = pd.DataFrame({name: [getattr(b, f) for f in FIELDS] for name, b in breakdowns.items()}, index=FIELDS)
    frame.index.name = "quantity"
    return frame


def theory_cmd(
    config: Optional[Path] = ConfigOption,
    verbose: bool = VerboseOption,
):
    """
    Muestra las proporciones teóricas (Z/X SIFT/CTRL, INFO, TEST, CTRL) para la configuración.
    """
    settings, code = load_settings()
    if settings is None:
        raise typer.Exit(code=code)
    configure_logging(verbose, settings)
    try:
        text = config.read_text(encoding="utf-8") if config else ""
        spec = parse_config(text, Command.RUN, is_json=bool(config) and config.suffix.lower() == ".json",
                            settings=settings)
    except OSError as e:
        report_error(EXIT_INVALID_SPEC, "--config", f"cannot read {config}: {e.strerror or e}")
        raise typer.Exit(code=EXIT_INVALID_SPEC)
    except ConfigurationError as e:
        report_error(EXIT_INVALID_SPEC, e.key, e.message)
        raise typer.Exit(code=EXIT_INVALID_SPEC)

    buffer = io.StringIO()
    buffer.write(f"# protocol={spec.config.protocol.value}\n")
    proportions_frame(spec.config).to_csv(buffer, float_format="%.6g", lineterminator="\n")
    echo_report(buffer.getvalue())
