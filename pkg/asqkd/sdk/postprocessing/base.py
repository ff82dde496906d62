# asqkd SDK - Postprocessing Module Base

import hashlib
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, Field, model_validator

from .exceptions import KeyLengthMismatchError, OutputLengthError

SEED_LIMIT = 2**64


class ReconciliationReport(BaseModel):
    """Outcome of block-parity reconciliation between Alice and Bob.

    `parities_announced` counts the parity bits both parties put on the channel;
    `disclosed_bits` is the leakage charged to privacy amplification.
    `residual_mismatch` is computed by direct comparison of both keys and is
    only meaningful inside the simulator (tests, diagnostics).
    """
    corrected_key_a: str
    corrected_key_b: str
    disclosed_bits: int = Field(ge=0)
    block_parities: int = Field(0, ge=0)
    search_parities: int = Field(0, ge=0)
    parities_announced: int = Field(ge=0)
    residual_mismatch: int = Field(ge=0)
    passes: int = Field(ge=0)
    block_size: int = Field(ge=2)

    @model_validator(mode="after")
    def _check_lengths(self) -> "ReconciliationReport":
        if len(self.corrected_key_a) != len(self.corrected_key_b):
            raise KeyLengthMismatchError("Corrected keys must have equal length")
        if self.disclosed_bits > self.parities_announced:
            raise ValueError("disclosed_bits cannot exceed the parities announced")
        if self.block_parities + self.search_parities > self.disclosed_bits:
            raise ValueError("block and search parities cannot exceed disclosed_bits")
        return self


@dataclass(frozen=True)
class HashSeedMatrix:
    """Toeplitz matrix over GF(2) with `rows` x `cols` entries, determined by `seed`.

    The diagonal bits are SHA-256(seed as 8 little-endian bytes || counter as
    4 big-endian bytes) for counter = 0, 1, ..., read MSB-first and truncated
    to rows + cols - 1 bits. Entry T[i][j] = d[rows - 1 - i + j].
    """
    seed: int
    rows: int
    cols: int

    def __post_init__(self):
        if not 0 <= self.seed < SEED_LIMIT:
            raise ValueError(f"Hash seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.rows < 0 or self.cols < 0:
            raise OutputLengthError("Matrix dimensions must be non-negative")
        if self.rows > self.cols:
            raise OutputLengthError(f"Output length m={self.rows} exceeds key length n={self.cols}")

    def diagonal(self) -> np.ndarray:
        need = self.rows + self.cols - 1 if self.rows else 0
        prefix = self.seed.to_bytes(8, "little")
        chunks = []
        for counter in range((need + 255) // 256):
            chunks.append(hashlib.sha256(prefix + counter.to_bytes(4, "big")).digest())
        stream = np.frombuffer(b"".join(chunks), dtype=np.uint8)
        return np.unpackbits(stream)[:need]

    def dense(self) -> np.ndarray:
        d = self.diagonal()
        i = np.arange(self.rows)[:, None]
        j = np.arange(self.cols)[None, :]
        return d[self.rows - 1 - i + j]

    def apply(self, key: np.ndarray) -> np.ndarray:
        key = np.asarray(key)
        if key.shape != (self.cols,):
            raise KeyLengthMismatchError(f"Expected a key of {self.cols} bits, got shape {key.shape}")
        if self.rows == 0:
            return np.zeros(0, dtype=np.uint8)
        d = self.diagonal().astype(np.float64)
        # Correlation of d with the key as an FFT convolution with the reversed key.
        # full[cols - 1 + s] = sum_j d[s + j] k[j]; row i uses s = rows - 1 - i.
        total = d.size + self.cols - 1
        size = 1 << max(total - 1, 0).bit_length()
        spectrum = np.fft.rfft(d, n=size) * np.fft.rfft(key[::-1].astype(np.float64), n=size)
        full = np.fft.irfft(spectrum, n=size)[:total]
        y = np.rint(full[self.cols - 1:self.cols - 1 + self.rows]).astype(np.int64)[::-1]
        return (y % 2).astype(np.uint8)
