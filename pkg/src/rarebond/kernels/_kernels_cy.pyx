# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels (hot path of support counting).

Same contracts as the pure backend; see ``_kernels_py``.
"""

import numpy as np

from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    """
    static inline int popcnt64(unsigned long long x) {
        return __builtin_popcountll(x);
    }
    """
    int popcnt64(uint64_t x) nogil


def and_mask(words, idx):
    cdef const uint64_t[:, ::1] w = words
    cdef const Py_ssize_t[::1] sel = np.ascontiguousarray(idx, dtype=np.intp)
    out = np.empty(w.shape[1], dtype=np.uint64)
    cdef uint64_t[::1] o = out
    cdef Py_ssize_t k, m, nk = w.shape[1], nm = sel.shape[0]
    cdef uint64_t acc
    with nogil:
        for k in range(nk):
            acc = w[sel[0], k]
            for m in range(1, nm):
                acc &= w[sel[m], k]
            o[k] = acc
    return out


def or_mask(words, idx):
    cdef const uint64_t[:, ::1] w = words
    cdef const Py_ssize_t[::1] sel = np.ascontiguousarray(idx, dtype=np.intp)
    out = np.empty(w.shape[1], dtype=np.uint64)
    cdef uint64_t[::1] o = out
    cdef Py_ssize_t k, m, nk = w.shape[1], nm = sel.shape[0]
    cdef uint64_t acc
    with nogil:
        for k in range(nk):
            acc = w[sel[0], k]
            for m in range(1, nm):
                acc |= w[sel[m], k]
            o[k] = acc
    return out


def count_bits(mask):
    cdef const uint64_t[::1] m = np.ascontiguousarray(mask, dtype=np.uint64)
    cdef Py_ssize_t k
    cdef int64_t total = 0
    with nogil:
        for k in range(m.shape[0]):
            total += popcnt64(m[k])
    return total


def level_supports(words, cands):
    cdef const uint64_t[:, ::1] w = words
    cdef const Py_ssize_t[:, ::1] c = np.ascontiguousarray(cands, dtype=np.intp)
    cdef Py_ssize_t nc = c.shape[0], nm = c.shape[1], nk = w.shape[1]
    conj = np.zeros(nc, dtype=np.int64)
    disj = np.zeros(nc, dtype=np.int64)
    cdef int64_t[::1] cj = conj
    cdef int64_t[::1] dj = disj
    cdef Py_ssize_t i, k, m
    cdef uint64_t a, o
    cdef int64_t ca, co
    with nogil:
        for i in range(nc):
            ca = 0
            co = 0
            for k in range(nk):
                a = w[c[i, 0], k]
                o = a
                for m in range(1, nm):
                    a &= w[c[i, m], k]
                    o |= w[c[i, m], k]
                ca += popcnt64(a)
                co += popcnt64(o)
            cj[i] = ca
            dj[i] = co
    return conj, disj


def rows_within(words, mask):
    cdef const uint64_t[:, ::1] w = words
    cdef const uint64_t[::1] m = np.ascontiguousarray(mask, dtype=np.uint64)
    out = np.zeros(w.shape[0], dtype=np.bool_)
    cdef unsigned char[::1] o = out.view(np.uint8)
    cdef Py_ssize_t i, k, nk = w.shape[1]
    cdef bint inside
    with nogil:
        for i in range(w.shape[0]):
            inside = True
            for k in range(nk):
                if w[i, k] & ~m[k]:
                    inside = False
                    break
            o[i] = inside
    return out
