# asqkd SDK - Postprocessing Module Bit Helpers
#
# Keys travel between modules as str over {'0', '1'}; numpy arrays are used
# internally for GF(2) arithmetic.

import numpy as np

_ZERO = ord("0")


def bits_to_array(bits: str) -> np.ndarray:
    """'0101' -> array([0, 1, 0, 1], dtype=uint8)."""
    arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - _ZERO
    if arr.size and int(arr.max()) > 1:
        raise ValueError("Bit strings may only contain '0' and '1'")
    return arr


def array_to_bits(arr: np.ndarray) -> str:
    return (np.asarray(arr, dtype=np.uint8) + _ZERO).tobytes().decode("ascii")


def bits_to_hex(bits: str) -> str:
    """Pack MSB-first into bytes, zero-padded at the end."""
    if not bits:
        return ""
    return np.packbits(bits_to_array(bits)).tobytes().hex()


def hex_to_bits(hex_text: str, n_bits: int) -> str:
    raw = np.frombuffer(bytes.fromhex(hex_text), dtype=np.uint8)
    unpacked = np.unpackbits(raw)
    if n_bits > unpacked.size:
        raise ValueError(f"{hex_text!r} holds only {unpacked.size} bits, {n_bits} requested")
    return array_to_bits(unpacked[:n_bits])


def xor_bits(left: str, right: str) -> str:
    if len(left) != len(right):
        raise ValueError("Cannot XOR bit strings of different length")
    return array_to_bits(bits_to_array(left) ^ bits_to_array(right))
