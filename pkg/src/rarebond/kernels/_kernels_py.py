"""NumPy implementations of the bitset kernels.

Fallback backend used when the compiled extension is unavailable. All
functions operate on packed bitsets: 2-D uint64 arrays where row ``i``
holds the bits of set ``i`` (bit ``t`` of a set lives in word ``t >> 6``,
position ``t & 63``).
"""

import numpy as np


def and_mask(words, idx):
    """AND of the selected rows; returns a 1-D uint64 mask."""
    return np.bitwise_and.reduce(words[idx], axis=0)


def or_mask(words, idx):
    """OR of the selected rows; returns a 1-D uint64 mask."""
    return np.bitwise_or.reduce(words[idx], axis=0)


def count_bits(mask):
    """Population count of a 1-D uint64 mask."""
    return int(np.bitwise_count(mask).sum())


def level_supports(words, cands):
    """Intersection and union cardinalities for a batch of row selections.

    ``cands`` is a (C, M) int array; row ``c`` selects M rows of ``words``.
    Returns two int64 arrays of length C: popcount of the AND and of the
    OR across each selection.
    """
    sel = words[cands]  # (C, M, K)
    conj = np.bitwise_count(np.bitwise_and.reduce(sel, axis=1)).sum(axis=1)
    disj = np.bitwise_count(np.bitwise_or.reduce(sel, axis=1)).sum(axis=1)
    return conj.astype(np.int64), disj.astype(np.int64)


def rows_within(words, mask):
    """Boolean vector: row ``i`` is True iff ``words[i] & ~mask == 0``."""
    return ~np.any(words & ~mask, axis=1)
