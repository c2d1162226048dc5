"""Kernel lane selection.

The corner-query and baseline-loop kernels exist twice: a compiled
extension (satgrid._satcore, built from Cython when a toolchain is
available) and a pure-Python mirror below. This module picks the compiled
lane when it imports cleanly and falls back silently otherwise; both lanes
are importable individually so the benchmark can compare them.

``USING_COMPILED`` reports which lane backs the public API.
"""

from __future__ import annotations


def box_query_py(cum_list, strides, origin, lo, hi):
    """Pure-Python 2^n corner query over a flat cumulative table (list)."""
    nd = len(strides)
    total = 0 if isinstance(cum_list[0], int) else 0.0
    for mask in range(1 << nd):
        off = 0
        bits = 0
        skip = False
        for k in range(nd):
            if mask & (1 << k):
                c = lo[k] - 1
                bits += 1
            else:
                c = hi[k]
            if c < origin[k]:
                skip = True
                break
            off += c * strides[k]
        if skip:
            continue
        if bits & 1:
            total -= cum_list[off]
        else:
            total += cum_list[off]
    return total


def naive_box_sum_py(values_list, strides, lo, hi):
    """Pure-Python direct-iteration box sum over a flat value list."""
    nd = len(strides)
    idx = list(lo)
    total = 0 if isinstance(values_list[0], int) else 0.0
    while True:
        off = 0
        for k in range(nd):
            off += idx[k] * strides[k]
        total += values_list[off]
        axis = nd - 1
        while axis >= 0:
            idx[axis] += 1
            if idx[axis] <= hi[axis]:
                break
            idx[axis] = lo[axis]
            axis -= 1
        if axis < 0:
            return total


try:
    from . import _satcore as _compiled
except ImportError:
    _compiled = None

USING_COMPILED = _compiled is not None


def compiled_module():
    """The compiled kernel module, or None when only the pure lane exists."""
    return _compiled
