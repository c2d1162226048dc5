# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: cumulative-table corner queries and the baseline
box loop. Mirrors satgrid._kernels_py exactly; the pure lane is the
reference, this lane is the fast path."""

from libc.stdint cimport int64_t


def box_query_i64(const int64_t[::1] cum,
                  const int64_t[::1] strides,
                  const int64_t[::1] origin,
                  lo, hi):
    """Inclusive box sum from a cumulative table via the 2^n corner rule."""
    cdef int nd = strides.shape[0]
    cdef int64_t clo[4]
    cdef int64_t chi[4]
    cdef int k, mask, bits
    cdef int64_t off, c, total = 0
    cdef bint skip
    for k in range(nd):
        clo[k] = lo[k]
        chi[k] = hi[k]
    for mask in range(1 << nd):
        off = 0
        bits = 0
        skip = False
        for k in range(nd):
            if mask & (1 << k):
                c = clo[k] - 1
                bits += 1
            else:
                c = chi[k]
            if c < origin[k]:
                skip = True
                break
            off += c * strides[k]
        if skip:
            continue
        if bits & 1:
            total -= cum[off]
        else:
            total += cum[off]
    return total


def box_query_f64(const double[::1] cum,
                  const int64_t[::1] strides,
                  const int64_t[::1] origin,
                  lo, hi):
    cdef int nd = strides.shape[0]
    cdef int64_t clo[4]
    cdef int64_t chi[4]
    cdef int k, mask, bits
    cdef int64_t off, c
    cdef double total = 0.0
    cdef bint skip
    for k in range(nd):
        clo[k] = lo[k]
        chi[k] = hi[k]
    for mask in range(1 << nd):
        off = 0
        bits = 0
        skip = False
        for k in range(nd):
            if mask & (1 << k):
                c = clo[k] - 1
                bits += 1
            else:
                c = chi[k]
            if c < origin[k]:
                skip = True
                break
            off += c * strides[k]
        if skip:
            continue
        if bits & 1:
            total -= cum[off]
        else:
            total += cum[off]
    return total


def naive_box_sum_i64(const int64_t[::1] values,
                      const int64_t[::1] strides,
                      lo, hi):
    """Direct-iteration box sum in compiled form (benchmark counterpart)."""
    cdef int nd = strides.shape[0]
    cdef int64_t clo[4]
    cdef int64_t chi[4]
    cdef int64_t idx[4]
    cdef int k, axis
    cdef int64_t off, total = 0
    for k in range(nd):
        clo[k] = lo[k]
        chi[k] = hi[k]
        idx[k] = clo[k]
    while True:
        off = 0
        for k in range(nd):
            off += idx[k] * strides[k]
        total += values[off]
        axis = nd - 1
        while axis >= 0:
            idx[axis] += 1
            if idx[axis] <= chi[axis]:
                break
            idx[axis] = clo[axis]
            axis -= 1
        if axis < 0:
            return total


def naive_box_sum_f64(const double[::1] values,
                      const int64_t[::1] strides,
                      lo, hi):
    cdef int nd = strides.shape[0]
    cdef int64_t clo[4]
    cdef int64_t chi[4]
    cdef int64_t idx[4]
    cdef int k, axis
    cdef int64_t off
    cdef double total = 0.0
    for k in range(nd):
        clo[k] = lo[k]
        chi[k] = hi[k]
        idx[k] = clo[k]
    while True:
        off = 0
        for k in range(nd):
            off += idx[k] * strides[k]
        total += values[off]
        axis = nd - 1
        while axis >= 0:
            idx[axis] += 1
            if idx[axis] <= chi[axis]:
                break
            idx[axis] = clo[axis]
            axis -= 1
        if axis < 0:
            return total
