# asqkd SDK - Postprocessing Module Privacy Amplification

import logging
import math

from .base import HashSeedMatrix
from .bits import array_to_bits, bits_to_array
from .exceptions import OutputLengthError, QberRangeError

logger = logging.getLogger(__name__)


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def privacy_amplify(key: str, m: int, seed: int) -> str:
    """Hash `key` down to `m` bits with the Toeplitz matrix for `seed`."""
    if m < 0 or m > len(key):
        raise OutputLengthError(f"Output length m={m} must satisfy 0 <= m <= {len(key)}")
    matrix = HashSeedMatrix(seed=seed, rows=m, cols=len(key))
    return array_to_bits(matrix.apply(bits_to_array(key)))


def final_key_length(
    n_info: int,
    observed_qber: float,
    disclosed_bits: int,
    safety_margin: int = 0,
) -> int:
    """max(0, floor(n (1 - 2 h2(q))) - disclosed - margin)."""
    if not 0.0 <= observed_qber < 0.5:
        raise QberRangeError(f"observed_qber must satisfy 0 <= q < 1/2, got {observed_qber}")
    secret = math.floor(n_info * (1.0 - 2.0 * binary_entropy(observed_qber)))
    length = max(0, secret - disclosed_bits - safety_margin)
    logger.debug(f"final_key_length: n={n_info} q={observed_qber:.6g} leak={disclosed_bits} -> {length}")
    return length
