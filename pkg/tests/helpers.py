"""Shared generators for the test suite.

The generators here build seeded random fixtures with known structure:
integer fields, box unions whose boundary is a single simple loop, and
sampled walks with controlled step sizes.  Tests freeze seeds so every
run sees the same fixtures.
"""

import numpy as np

from satgrid.grid import GridField, LatticeBox
from satgrid import green


def random_field(rng, extents, low=-9, high=9, mode=None):
    """Return a GridField with values drawn uniformly from [low, high]."""
    values = rng.integers(low, high + 1, size=extents)
    if mode is None:
        return GridField(tuple(extents), values.ravel().tolist())
    return GridField(tuple(extents), values.ravel().tolist(), scalar_mode=mode)


def random_box(rng, extents):
    """Return a LatticeBox inside a grid of the given extents."""
    lo = tuple(int(rng.integers(0, e)) for e in extents)
    hi = tuple(int(l + rng.integers(0, e - l)) for l, e in zip(lo, extents))
    return LatticeBox(lo, hi)


def star_union(rng, extent, max_boxes=4, margin=0):
    """Return a 2-D domain built from boxes that all share one common cell.

    Every box contains the pivot cell, so the union is a star-shaped
    (hence simply connected) region whose boundary is one simple loop
    with no diagonally touching vertices.  ``margin`` keeps every cell
    at least that far from the low grid edge.
    """
    pivot = tuple(int(rng.integers(margin + 1, extent - 2)) for _ in range(2))
    boxes = []
    for _ in range(int(rng.integers(1, max_boxes + 1))):
        lo = tuple(int(rng.integers(margin, p + 1)) for p in pivot)
        hi = tuple(
            int(rng.integers(p, extent - 1)) for p in pivot
        )
        boxes.append(LatticeBox(lo, hi))
    return green.from_boxes(boxes, (extent, extent))


def boundary_loop(domain):
    """Trace the boundary of a simply connected domain as a CCW vertex loop.

    Each member cell contributes its four sides as directed edges with the
    interior kept on the left; edges shared by two member cells cancel.
    The remaining edges form one closed loop when the domain is simply
    connected and free of diagonal touches, which star unions guarantee.
    """
    edges = {}

    def toggle(a, b):
        if (b, a) in edges:
            del edges[(b, a)]
        else:
            edges[(a, b)] = True

    h, w = domain.extents
    for i in range(h):
        for j in range(w):
            if not domain.member((i, j)):
                continue
            toggle((i, j), (i + 1, j))
            toggle((i + 1, j), (i + 1, j + 1))
            toggle((i + 1, j + 1), (i, j + 1))
            toggle((i, j + 1), (i, j))

    out = {}
    for a, b in edges:
        if a in out:
            raise AssertionError(f"vertex {a} has two outgoing edges")
        out[a] = b
    start = min(out)
    loop = [start]
    cur = out[start]
    while cur != start:
        loop.append(cur)
        cur = out[cur]
    if len(loop) != len(out):
        raise AssertionError("boundary is not a single loop")
    return loop


def unit_walk(rng, length, allow_flat=True):
    """Return integer samples whose consecutive differences are -1, 0 or +1."""
    choices = (-1, 0, 1) if allow_flat else (-1, 1)
    y = [int(rng.integers(-3, 4))]
    for _ in range(length):
        y.append(y[-1] + int(rng.choice(choices)))
    return y

def runs_walk(rng, run_count, min_run=2, max_run=4):
    """Return a strictly zigzag walk whose monotone runs all span >= min_run steps."""
    y = [int(rng.integers(-2, 3))]
    direction = int(rng.choice((-1, 1)))
    for _ in range(run_count):
        for _ in range(int(rng.integers(min_run, max_run + 1))):
            y.append(y[-1] + direction)
        direction = -direction
    return y
