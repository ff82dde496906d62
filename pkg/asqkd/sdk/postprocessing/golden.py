# asqkd SDK - Postprocessing Module Golden Vectors
#
# Text format: '#' comments, then key=value lines
#   key_hex, key_bits, seed (decimal), m (decimal), output_hex

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Dict, Union

from .bits import bits_to_hex, hex_to_bits
from .exceptions import GoldenFileError
from .privacy import privacy_amplify

_REQUIRED = ("key_hex", "key_bits", "seed", "m", "output_hex")


def default_golden_path() -> Path:
    return Path(str(resources.files("asqkd").joinpath("data", "privacy_amplification_golden.txt")))


@dataclass(frozen=True)
class GoldenVector:
    key: str
    seed: int
    m: int
    output_hex: str

    def recompute_hex(self) -> str:
        return bits_to_hex(privacy_amplify(self.key, self.m, self.seed))

    def dumps(self) -> str:
        return (
            "# privacy amplification golden vector\n"
            f"key_hex={bits_to_hex(self.key)}\n"
            f"key_bits={len(self.key)}\n"
            f"seed={self.seed}\n"
            f"m={self.m}\n"
            f"output_hex={self.output_hex}\n"
        )


def parse_golden(text: str) -> GoldenVector:
    fields: Dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise GoldenFileError(f"Line {number}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        fields[key] = value
    missing = [k for k in _REQUIRED if k not in fields]
    if missing:
        raise GoldenFileError(f"Golden file is missing fields: {', '.join(missing)}")
    try:
        return GoldenVector(
            key=hex_to_bits(fields["key_hex"], int(fields["key_bits"])),
            seed=int(fields["seed"]),
            m=int(fields["m"]),
            output_hex=fields["output_hex"].lower(),
        )
    except ValueError as e:
        raise GoldenFileError(f"Malformed golden file: {e}") from e


def load_golden(path: Union[str, Path, None] = None) -> GoldenVector:
    path = Path(path) if path is not None else default_golden_path()
    try:
        return parse_golden(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise GoldenFileError(f"Cannot read golden file {path}: {e}") from e


def verify_golden(path: Union[str, Path, None] = None) -> bool:
    """True if privacy_amplify reproduces the stored output bit-for-bit."""
    vector = load_golden(path)
    return vector.recompute_hex() == vector.output_hex
