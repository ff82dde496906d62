# asqkd SDK - Postprocessing Module

from .base import HashSeedMatrix, ReconciliationReport
from .bits import array_to_bits, bits_to_array, bits_to_hex, hex_to_bits, xor_bits
from .exceptions import (
    GoldenFileError,
    KeyLengthMismatchError,
    OutputLengthError,
    PostprocessingError,
    QberRangeError,
    ReconciliationError,
)
from .golden import GoldenVector, default_golden_path, load_golden, parse_golden, verify_golden
from .privacy import binary_entropy, final_key_length, privacy_amplify
from .reconciliation import reconcile

__all__ = [
    "HashSeedMatrix",
    "ReconciliationReport",
    "array_to_bits",
    "bits_to_array",
    "bits_to_hex",
    "hex_to_bits",
    "xor_bits",
    "PostprocessingError",
    "KeyLengthMismatchError",
    "ReconciliationError",
    "OutputLengthError",
    "QberRangeError",
    "GoldenFileError",
    "GoldenVector",
    "default_golden_path",
    "load_golden",
    "parse_golden",
    "verify_golden",
    "binary_entropy",
    "final_key_length",
    "privacy_amplify",
    "reconcile",
]
