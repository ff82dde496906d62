# asqkd SDK - Postprocessing Module Reconciliation

import logging
from typing import Tuple

import numpy as np

from .base import ReconciliationReport
from .bits import array_to_bits, bits_to_array
from .exceptions import KeyLengthMismatchError, ReconciliationError

logger = logging.getLogger(__name__)


def _bisect(a: np.ndarray, b: np.ndarray, block: np.ndarray) -> Tuple[int, int]:
    """Locate one error in a block with odd error parity.

    Only the left half's parity is disclosed at each level; the right half's is
    implied by the block parity already on the table.
    """
    disclosed = 0
    while block.size > 1:
        half = block.size // 2
        left = block[:half]
        disclosed += 1
        if (int(a[left].sum()) - int(b[left].sum())) % 2:
            block = left
        else:
            block = block[half:]
    return int(block[0]), disclosed


def reconcile(
    key_a: str,
    key_b: str,
    block_size: int,
    max_passes: int,
    rng: np.random.Generator,
) -> ReconciliationReport:
    """Simplified cascade: block parities plus binary search, shuffled between passes.

    Bob corrects his key toward Alice's. Both parties publish every compared
    parity, but Bob's adds nothing beyond Alice's and the match result, so
    each comparison discloses one bit. The first pass uses the natural order;
    every later pass permutes positions with `rng`. Stops after a pass with no
    mismatching block or after `max_passes`.
    """
    if len(key_a) != len(key_b):
        raise KeyLengthMismatchError(f"Key lengths differ: {len(key_a)} != {len(key_b)}")
    if block_size < 2:
        raise ReconciliationError(f"block_size must be >= 2, got {block_size}")
    if max_passes < 1:
        raise ReconciliationError(f"max_passes must be >= 1, got {max_passes}")

    a = bits_to_array(key_a)
    b = bits_to_array(key_b).copy()
    n = a.size
    block_parities = 0
    search_parities = 0
    passes = 0

    for pass_index in range(max_passes):
        passes += 1
        order = np.arange(n) if pass_index == 0 else rng.permutation(n)
        starts = np.arange(0, n, block_size)
        if n:
            parity_a = np.add.reduceat(a[order].astype(np.int64), starts) % 2
            parity_b = np.add.reduceat(b[order].astype(np.int64), starts) % 2
            bad_blocks = np.flatnonzero(parity_a != parity_b)
        else:
            bad_blocks = np.zeros(0, dtype=np.int64)
        block_parities += starts.size

        for block_index in bad_blocks:
            start = starts[block_index]
            position, cost = _bisect(a, b, order[start:start + block_size])
            search_parities += cost
            b[position] ^= 1

        logger.debug(f"Reconciliation pass {passes}: {starts.size} blocks, {bad_blocks.size} corrected")
        if bad_blocks.size == 0:
            break

    residual = int(np.count_nonzero(a != b))
    return ReconciliationReport(
        corrected_key_a=key_a,
        corrected_key_b=array_to_bits(b),
        disclosed_bits=block_parities + search_parities,
        block_parities=block_parities,
        search_parities=search_parities,
        parities_announced=2 * (block_parities + search_parities),
        residual_mismatch=residual,
        passes=passes,
        block_size=block_size,
    )
