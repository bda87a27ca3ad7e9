"""Bitset kernels with a compiled core and a NumPy fallback.

The compiled extension is preferred when importable; set the environment
variable ``RAREBOND_KERNELS`` to ``py`` or ``cy`` to force a backend.
Packing helpers are backend-independent and live here.
"""

import os

import numpy as np

from . import _kernels_py

try:
    from . import _kernels_cy
except ImportError:  # extension not built
    _kernels_cy = None

_BACKENDS = {"py": _kernels_py}
if _kernels_cy is not None:
    _BACKENDS["cy"] = _kernels_cy

_forced = os.environ.get("RAREBOND_KERNELS")
if _forced:
    if _forced not in _BACKENDS:
        raise ImportError(f"RAREBOND_KERNELS={_forced!r} is not available "
                          f"(have: {sorted(_BACKENDS)})")
    _impl = _BACKENDS[_forced]
else:
    _impl = _BACKENDS.get("cy", _kernels_py)

BACKEND = "cy" if _impl is _kernels_cy else "py"


def available_backends():
    """Names of the importable backends ('cy' first when present)."""
    return sorted(_BACKENDS, reverse=False)


def get_backend(name):
    return _BACKENDS[name]


def set_backend(name):
    """Switch the active backend; returns the previous name (tests use this)."""
    global _impl, BACKEND
    previous = BACKEND
    _impl = _BACKENDS[name]
    BACKEND = name
    return previous


def pack_indices(index_lists, length):
    """Pack lists of bit positions into a (len(lists), ceil(length/64)) uint64 array."""
    nwords = max(1, (length + 63) >> 6)
    words = np.zeros((len(index_lists), nwords), dtype=np.uint64)
    view = words.view()
    for row, positions in enumerate(index_lists):
        for pos in positions:
            view[row, pos >> 6] |= np.uint64(1 << (pos & 63))
    return words


def unpack_mask(mask, length):
    """Bit positions set in a packed 1-D mask, ascending."""
    out = []
    for word_index, word in enumerate(mask.tolist()):
        base = word_index << 6
        while word:
            low = word & -word
            out.append(base + low.bit_length() - 1)
            word ^= low
    return [p for p in out if p < length]


def and_mask(words, idx):
    return _impl.and_mask(words, idx)


def or_mask(words, idx):
    return _impl.or_mask(words, idx)


def count_bits(mask):
    return int(_impl.count_bits(mask))


def level_supports(words, cands):
    return _impl.level_supports(words, cands)


def rows_within(words, mask):
    return _impl.rows_within(words, mask)
