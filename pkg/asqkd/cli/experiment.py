# asqkd CLI - experiment specification, parsing and execution
#
# The CLI defines no exception classes: parsing raises ConfigurationError
# (carrying the offending key) and execute() maps failures to exit codes.

import json
import logging
import math
import re
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError

from ..config import Settings, get_settings
from ..sdk.adversary import AttackCatalogEntry, AttackConfigurationError, StrategyKind, create_strategy
from ..sdk.analysis import (
    SWEEP_AXES,
    THETA_GRID,
    SweepAxisError,
    SweepResult,
    TrialJob,
    aggregate,
    detection_sweep,
    efficiency_sweep,
    execute_trials,
    grid_point,
    render_csv,
    render_json,
)
from ..sdk.postprocessing import GoldenFileError, default_golden_path, load_golden
from ..sdk.protocol import ConfigurationError, ProtocolConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_SPEC = 2
EXIT_INTERNAL = 3
EXIT_UNWRITABLE = 4


class Command(str, Enum):
    RUN = "run"
    SWEEP = "sweep"
    ATTACK_EVAL = "attack-eval"
    VERIFY_GOLDEN = "verify-golden"


class ReportFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class ExperimentSpec(BaseModel):
    """Fully validated description of one CLI invocation."""
    command: Command
    config: ProtocolConfig
    attack: Optional[AttackCatalogEntry] = None
    sweep_param: Optional[str] = None
    sweep_values: List[float] = Field(default_factory=list)
    trials: int = 1
    workers: int = 1
    output: Optional[Path] = None
    report_format: ReportFormat = ReportFormat.CSV
    golden_path: Optional[Path] = None
    header: Dict[str, str] = Field(default_factory=dict)


# --- value converters -------------------------------------------------------

_PI_EXPR = re.compile(r"^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi(?:\s*/\s*(\d+(?:\.\d+)?))?$", re.IGNORECASE)


def _fail(key: str, message: str) -> ConfigurationError:
    return ConfigurationError(key, message)


def parse_real(key: str, raw: Any) -> float:
    """Float, or a multiple of pi such as 'pi/8', '3pi/8', '0.5*pi'."""
    if isinstance(raw, bool):
        raise _fail(key, f"{key} must be a real number")
    if isinstance(raw, (int, float)):
        return float(raw)
    text = str(raw).strip()
    match = _PI_EXPR.match(text)
    if match:
        factor = match.group(1)
        factor = 1.0 if factor in ("", "+") else (-1.0 if factor == "-" else float(factor))
        divisor = float(match.group(2)) if match.group(2) else 1.0
        return factor * math.pi / divisor
    try:
        return float(text)
    except ValueError:
        raise _fail(key, f"{key} must be a real number, got '{text}'") from None


def parse_int(key: str, raw: Any) -> int:
    if isinstance(raw, bool):
        raise _fail(key, f"{key} must be an integer")
    if isinstance(raw, int):
        return raw
    try:
        return int(str(raw).strip())
    except ValueError:
        raise _fail(key, f"{key} must be an integer, got '{raw}'") from None


def parse_bool(key: str, raw: Any) -> bool:
    if isinstance(raw, bool):
        return raw
    text = str(raw).strip().lower()
    if text in ("true", "1", "yes"):
        return True
    if text in ("false", "0", "no"):
        return False
    raise _fail(key, f"{key} must be true or false, got '{raw}'")


def parse_text(key: str, raw: Any) -> str:
    if isinstance(raw, (dict, list)):
        raise _fail(key, f"{key} must be a plain value")
    return str(raw).strip()


def parse_real_list(key: str, raw: Any) -> List[float]:
    items = raw if isinstance(raw, list) else [part for part in str(raw).split(",") if part.strip()]
    if not items:
        raise _fail(key, f"{key} must list at least one value")
    return [parse_real(key, item) for item in items]


def parse_unitary(key: str, raw: Any) -> List[Tuple[float, float]]:
    """32 comma-separated reals (re, im pairs, row-major) or 16 [re, im] pairs."""
    if isinstance(raw, list) and raw and isinstance(raw[0], list):
        if any(len(pair) != 2 for pair in raw):
            raise _fail(key, f"{key} entries must be [re, im] pairs")
        reals = [parse_real(key, x) for pair in raw for x in pair]
    else:
        reals = parse_real_list(key, raw)
    if len(reals) != 32:
        raise _fail(key, f"{key} needs 32 reals (16 complex entries), got {len(reals)}")
    return [(reals[i], reals[i + 1]) for i in range(0, 32, 2)]


PROTOCOL_KEYS: Dict[str, Callable[[str, Any], Any]] = {
    "protocol": lambda k, v: parse_text(k, v).upper(),
    "N": parse_int,
    "gamma1": parse_real,
    "gamma2": parse_real,
    "xi": parse_real,
    "kappa": parse_int,
    "tau": parse_int,
    "lambda": parse_int,
    "delta": parse_real,
    "p_t": parse_real,
    "seed": parse_int,
    "exact_counts": parse_bool,
    "reconciliation_block_size": parse_int,
    "reconciliation_passes": parse_int,
    "safety_margin": parse_int,
}
OTHER_KEYS: Dict[str, Callable[[str, Any], Any]] = {
    "preset": parse_text,
    "trials": parse_int,
    "attack.name": parse_text,
    "attack.theta": parse_real,
    "attack.basis_policy": parse_text,
    "attack.legs": parse_text,
    "attack.unitary_forward": parse_unitary,
    "attack.unitary_backward": parse_unitary,
    "sweep.param": parse_text,
    "sweep.values": parse_real_list,
}
KNOWN_KEYS = {**PROTOCOL_KEYS, **OTHER_KEYS}
_FIELD_TO_KEY = {"n_rounds": "N", "lambda_": "lambda"}


# --- document parsing -------------------------------------------------------

def _flatten(node: Dict[str, Any], prefix: str = "") -> List[Tuple[str, Any]]:
    pairs = []
    for key, value in node.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, dict):
            pairs.extend(_flatten(value, dotted + "."))
        else:
            pairs.append((dotted, value))
    return pairs


def read_document(text: str, is_json: bool = False) -> List[Tuple[str, Any]]:
    """Raw (key, value) pairs from a key=value or JSON document."""
    if is_json:
        try:
            document = json.loads(text) if text.strip() else {}
        except json.JSONDecodeError as e:
            raise _fail("document", f"invalid JSON: {e.msg} at line {e.lineno}") from e
        if not isinstance(document, dict):
            raise _fail("document", "JSON configuration must be an object")
        return _flatten(document)

    pairs = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        for token in line.split():
            if "=" not in token:
                raise _fail("document", f"expected key=value, got '{token}'")
            key, value = token.split("=", 1)
            pairs.append((key.strip(), value))
    return pairs


def _validation_key(error: ValidationError, prefix: str = "") -> Tuple[str, str]:
    first = error.errors()[0]
    cause = (first.get("ctx") or {}).get("error")
    if isinstance(cause, ConfigurationError):
        return cause.key, cause.message
    loc = [str(part) for part in first.get("loc", ())]
    key = _FIELD_TO_KEY.get(loc[0], loc[0]) if loc else "document"
    message = str(cause) if cause is not None else first.get("msg", "invalid value")
    return f"{prefix}{key}", message


def _format_value(value: Any) -> str:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_format_value(v) for v in value)
    return str(value)


def _build_config(values: Dict[str, Any]) -> ProtocolConfig:
    fields = {k: v for k, v in values.items() if k in PROTOCOL_KEYS}
    try:
        if "preset" in values:
            return ProtocolConfig.preset(values["preset"], **fields)
        return ProtocolConfig(**fields)
    except ValidationError as e:
        raise _fail(*_validation_key(e)) from e


def _attack_error_key(message: str) -> str:
    for field in ("theta", "unitary_forward", "unitary_backward", "basis_policy", "legs"):
        if field in message:
            return f"attack.{field}"
    return "attack.name"


def _build_attack(values: Dict[str, Any], command: Command) -> Optional[AttackCatalogEntry]:
    name = values.get("attack.name")
    if name is None:
        if command is not Command.ATTACK_EVAL and not any(k.startswith("attack.") for k in values):
            return None
        name = "entangling_probe" if command is Command.ATTACK_EVAL else "none"
    payload: Dict[str, Any] = {"name": name}
    if "attack.theta" in values:
        payload["parameters"] = {"theta": values["attack.theta"]}
    for key in ("basis_policy", "legs", "unitary_forward", "unitary_backward"):
        if f"attack.{key}" in values:
            payload[key] = values[f"attack.{key}"]
    try:
        entry = AttackCatalogEntry(**payload)
    except ValidationError as e:
        key, message = _validation_key(e, prefix="attack.")
        if key == "attack.document":
            key = _attack_error_key(message)
        raise _fail(key, message) from e

    if entry.strategy is StrategyKind.ENTANGLING_PROBE and entry.theta is None:
        if values.get("sweep.param", "theta" if command is Command.ATTACK_EVAL else None) != "theta":
            raise _fail("attack.theta", "entangling_probe requires attack.theta")
        return entry
    try:
        create_strategy(entry)
    except AttackConfigurationError as e:
        raise _fail(_attack_error_key(str(e)), str(e)) from e
    return entry


def parse_config(
    text: str,
    command: Command = Command.RUN,
    is_json: bool = False,
    seed: Optional[int] = None,
    trials: Optional[int] = None,
    workers: Optional[int] = None,
    output: Optional[Path] = None,
    report_format: ReportFormat = ReportFormat.CSV,
    settings: Optional[Settings] = None,
) -> ExperimentSpec:
    """Validate a configuration document into an ExperimentSpec.

    Seed precedence: `seed` argument (--seed) > SQKD_SEED > document > 0.
    Raises ConfigurationError naming the offending key.
    """
    command = Command(command)
    settings = settings or get_settings()

    values: Dict[str, Any] = {}
    for key, raw in read_document(text, is_json):
        if key not in KNOWN_KEYS:
            raise _fail(key, f"unknown key '{key}'")
        if key in values:
            raise _fail(key, f"duplicate key '{key}'")
        values[key] = KNOWN_KEYS[key](key, raw)
    given = set(values)

    if seed is not None:
        values["seed"], seed_note = seed, " (--seed)"
    elif settings.SEED is not None:
        values["seed"], seed_note = settings.SEED, " (SQKD_SEED)"
    elif "seed" in values:
        seed_note = ""
    else:
        values["seed"], seed_note = 0, " (default)"
    values.setdefault("p_t", settings.P_T)

    config = _build_config(values)
    attack = _build_attack(values, command)

    sweep_param = values.get("sweep.param")
    sweep_values = values.get("sweep.values", [])
    if command is Command.ATTACK_EVAL:
        sweep_param = sweep_param or "theta"
        sweep_values = sweep_values or list(THETA_GRID)
    if command in (Command.SWEEP, Command.ATTACK_EVAL):
        if sweep_param is None:
            raise _fail("sweep.param", f"{command.value} requires sweep.param")
        if sweep_param not in SWEEP_AXES:
            raise _fail("sweep.param", f"unknown sweep axis '{sweep_param}' (known: {', '.join(SWEEP_AXES)})")
        if not sweep_values:
            raise _fail("sweep.values", f"{command.value} requires sweep.values")
        for value in sweep_values:
            try:
                grid_point(config, attack, sweep_param, value)
            except SweepAxisError as e:
                raise _fail("sweep.values", str(e)) from e

    if trials is not None:
        given.add("trials")
    else:
        trials = values.get("trials", settings.TRIALS if command in (Command.SWEEP, Command.ATTACK_EVAL) else 1)
    if trials < 1:
        raise _fail("trials", "trials must be >= 1")
    workers = workers if workers is not None else settings.WORKERS
    if workers < 1:
        raise _fail("workers", "workers must be >= 1")

    header = _build_header(command, config, attack, given, seed_note, trials, sweep_param, sweep_values, values)
    return ExperimentSpec(
        command=command,
        config=config,
        attack=attack,
        sweep_param=sweep_param,
        sweep_values=sweep_values,
        trials=trials,
        workers=workers,
        output=output,
        report_format=ReportFormat(report_format),
        header=header,
    )


def _build_header(command, config, attack, given, seed_note, trials, sweep_param, sweep_values, values) -> Dict[str, str]:
    preset = values.get("preset")

    def note(key: str) -> str:
        if key in given:
            return ""
        return f" (preset {preset})" if preset and key in ProtocolConfig.PRESETS[preset] else " (default)"

    header: Dict[str, str] = {"command": command.value}
    if preset:
        header["preset"] = preset
    header["protocol"] = config.protocol.value + note("protocol")
    if config.protocol.uses_register:
        for key, attr in (("kappa", "kappa"), ("tau", "tau"), ("lambda", "lambda_"), ("delta", "delta")):
            header[key] = _format_value(getattr(config, attr)) + note(key)
        header["N"] = f"{config.N} (derived)"
    else:
        header["N"] = str(config.N) + note("N")
        for key in ("gamma1", "gamma2", "xi"):
            header[key] = _format_value(getattr(config, key)) + note(key)
    header["p_t"] = _format_value(config.p_t) + note("p_t")
    header["seed"] = str(config.seed) + seed_note
    for key in ("exact_counts", "reconciliation_block_size", "reconciliation_passes", "safety_margin"):
        header[key] = _format_value(getattr(config, key)) + note(key)
    header["trials"] = str(trials) + ("" if "trials" in given else " (default)")
    if attack is None:
        header["attack.name"] = "none (default)"
    else:
        header["attack.name"] = attack.name + note("attack.name")
        if attack.strategy is StrategyKind.ENTANGLING_PROBE and attack.theta is not None:
            header["attack.theta"] = _format_value(attack.theta)
        if attack.strategy is StrategyKind.INTERCEPT_RESEND:
            header["attack.basis_policy"] = attack.basis_policy.value + note("attack.basis_policy")
            header["attack.legs"] = attack.legs.value + note("attack.legs")
        if attack.strategy is StrategyKind.CUSTOM_UNITARY:
            header["attack.legs"] = "custom"
    if command in (Command.SWEEP, Command.ATTACK_EVAL):
        header["sweep.param"] = sweep_param + note("sweep.param")
        header["sweep.values"] = _format_value(sweep_values) + note("sweep.values")
    return header


# --- execution ----------------------------------------------------------------

def error_line(code: int, key: str, message: str) -> str:
    clean = " ".join(str(message).replace('"', "'").split())
    return f'error: code={code} key={key} message="{clean}"'


def report_error(code: int, key: str, message: str) -> None:
    sys.stderr.write(error_line(code, key, message) + "\n")


def build_result(spec: ExperimentSpec) -> SweepResult:
    master_seed = spec.config.seed
    if spec.command is Command.SWEEP:
        return efficiency_sweep(
            spec.config, spec.sweep_param, spec.sweep_values, spec.trials,
            attack=spec.attack, master_seed=master_seed, workers=spec.workers,
        )
    if spec.command is Command.ATTACK_EVAL:
        return detection_sweep(
            spec.config, spec.attack, spec.sweep_param, spec.sweep_values, spec.trials,
            master_seed=master_seed, workers=spec.workers,
        )
    jobs = [TrialJob(spec.config, spec.attack, 0, t, master_seed, "run", None) for t in range(spec.trials)]
    rows = execute_trials(jobs, spec.workers)
    return SweepResult(axis="run", values=[None], trials=spec.trials, master_seed=master_seed,
                       rows=rows, points=aggregate(rows))


def render(spec: ExperimentSpec, result: SweepResult) -> str:
    if spec.report_format is ReportFormat.JSON:
        return render_json(result, spec.header)
    return render_csv(result, spec.header)


def output_is_writable(path: Optional[Path]) -> bool:
    if path is None:
        return True
    if path.is_dir():
        return False
    return path.parent.is_dir()


def write_report(text: str, path: Optional[Path], echo: Callable[[str], None]) -> int:
    if path is None:
        echo(text)
        return EXIT_OK
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as e:
        report_error(EXIT_UNWRITABLE, "--out", f"cannot write {path}: {e.strerror or e}")
        return EXIT_UNWRITABLE
    logger.info(f"Report written to {path}")
    return EXIT_OK


def verify_golden_file(path: Optional[Path], echo: Callable[[str], None]) -> int:
    path = path or default_golden_path()
    try:
        vector = load_golden(path)
    except GoldenFileError as e:
        report_error(EXIT_INVALID_SPEC, "golden", str(e))
        return EXIT_INVALID_SPEC
    actual = vector.recompute_hex()
    if actual == vector.output_hex:
        echo(f"golden vector OK: {path} (n={len(vector.key)}, m={vector.m}, seed={vector.seed})\n")
        return EXIT_OK
    echo(f"golden vector MISMATCH: {path} expected {vector.output_hex}, got {actual}\n")
    return EXIT_VERIFY_FAILED


def execute(spec: ExperimentSpec, echo: Optional[Callable[[str], None]] = None) -> int:
    """Run the spec and write its report. Protocol aborts are data and exit 0."""
    echo = echo or (lambda text: sys.stdout.write(text))
    if spec.command is Command.VERIFY_GOLDEN:
        return verify_golden_file(spec.golden_path, echo)
    if not output_is_writable(spec.output):
        report_error(EXIT_UNWRITABLE, "--out", f"cannot write {spec.output}")
        return EXIT_UNWRITABLE
    try:
        result = build_result(spec)
        text = render(spec, result)
    except Exception as e:
        logger.exception("Experiment failed")
        report_error(EXIT_INTERNAL, "internal", f"{type(e).__name__}: {e}")
        return EXIT_INTERNAL
    return write_report(text, spec.output, echo)


LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def configure_logging(verbose: bool, settings: Settings) -> None:
    level = logging.INFO if verbose else getattr(logging, settings.LOG_LEVEL)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def load_settings() -> Tuple[Optional[Settings], int]:
    try:
        return get_settings(), EXIT_OK
    except ValidationError as e:
        first = e.errors()[0]
        field = str(first["loc"][0]) if first.get("loc") else "settings"
        report_error(EXIT_INVALID_SPEC, f"SQKD_{field.upper()}", first.get("msg", "invalid setting"))
        return None, EXIT_INVALID_SPEC


def run_from_cli(
    command: Command,
    config_path: Optional[Path],
    seed: Optional[int],
    out: Optional[Path],
    report_format: ReportFormat,
    trials: Optional[int],
    workers: Optional[int],
    verbose: bool,
    echo: Optional[Callable[[str], None]] = None,
) -> int:
    """Shared body of the run/sweep/attack-eval commands; returns the exit code."""
    settings, code = load_settings()
    if settings is None:
        return code
    configure_logging(verbose, settings)

    text = ""
    if config_path is not None:
        try:
            text = config_path.read_text(encoding="utf-8")
        except OSError as e:
            report_error(EXIT_INVALID_SPEC, "--config", f"cannot read {config_path}: {e.strerror or e}")
            return EXIT_INVALID_SPEC
    try:
        spec = parse_config(
            text,
            command=command,
            is_json=config_path is not None and config_path.suffix.lower() == ".json",
            seed=seed,
            trials=trials,
            workers=workers,
            output=out,
            report_format=report_format,
            settings=settings,
        )
    except ConfigurationError as e:
        report_error(EXIT_INVALID_SPEC, e.key, e.message)
        return EXIT_INVALID_SPEC
    logger.info(f"Executing {command.value} with {spec.header}")
    return execute(spec, echo)
