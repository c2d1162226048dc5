"""Rectilinear cell domains and corner-weight integration (2-D).

A RectilinearDomain is a set of unit cells on a 2-D grid; cell ``(i, j)``
spans vertices ``(i, j)`` to ``(i+1, j+1)``, so the vertex grid is one
larger than the cell grid on each axis.

Every vertex gets a corner weight ``alpha`` from the occupancy of the four
cells that touch it: ``alpha = m(-,-) + m(+,+) - m(+,-) - m(-,+)``. The
weight is 0 exactly when the four-cell pattern is uniform or a half-plane
(6 of the 16 patterns); the other 10 patterns carry ``alpha`` in
``{+1, -1, +2, -2}``.

The point of the weights: the sum of the field over the domain's cells
equals ``sum(alpha(v) * F(v))`` over the nonzero corners, where ``F(v)``
is the prefix sum through vertex ``v`` exclusive (the cumulative table
read at ``v - 1`` per axis, empty below the table origin). ``integrate``
evaluates that ledger; it is exact in exact-integer mode.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .grid import GridField, LatticeBox
from .sat import SummedAreaTable, corner_value

# Occupancy patterns are 4-bit codes (m(-,-), m(-,+), m(+,-), m(+,+)) from
# most to least significant bit.
_PATTERN_BITS = 4


def alpha_of_pattern(pattern: int) -> int:
    """Corner weight of a 4-bit occupancy pattern."""
    if not 0 <= pattern < 16:
        raise ValueError(f"pattern {pattern} not a 4-bit occupancy code")
    m_mm = (pattern >> 3) & 1
    m_mp = (pattern >> 2) & 1
    m_pm = (pattern >> 1) & 1
    m_pp = pattern & 1
    return m_mm + m_pp - m_pm - m_mp


class RectilinearDomain:
    """A set of unit cells stored as a boolean bitmap over the cell grid."""

    def __init__(self, extents: Sequence[int], cells: np.ndarray) -> None:
        extents = tuple(int(e) for e in extents)
        if len(extents) != 2:
            raise ValueError(f"unsupported ndim {len(extents)} for a cell domain (2-D only)")
        cells = np.asarray(cells, dtype=bool)
        if cells.shape != extents:
            raise ValueError(f"cell bitmap shape {cells.shape} does not match extents {extents}")
        self.extents = extents
        self.cells = cells

    @classmethod
    def empty(cls, extents: Sequence[int]) -> "RectilinearDomain":
        return cls(extents, np.zeros(tuple(int(e) for e in extents), dtype=bool))

    @property
    def cell_count(self) -> int:
        return int(self.cells.sum())

    def member(self, coords: Sequence[int]) -> bool:
        i, j = int(coords[0]), int(coords[1])
        if not (0 <= i < self.extents[0] and 0 <= j < self.extents[1]):
            return False
        return bool(self.cells[i, j])

    def translated(self, offset: Sequence[int], extents: Sequence[int]) -> "RectilinearDomain":
        """The same cell set shifted by ``offset`` inside a (new) frame."""
        di, dj = int(offset[0]), int(offset[1])
        out = RectilinearDomain.empty(extents)
        src = np.argwhere(self.cells)
        for i, j in src:
            ni, nj = int(i) + di, int(j) + dj
            if not (0 <= ni < out.extents[0] and 0 <= nj < out.extents[1]):
                raise ValueError(f"translation moves cell ({i},{j}) outside extents {tuple(extents)}")
            out.cells[ni, nj] = True
        return out

    def complement(self) -> "RectilinearDomain":
        return RectilinearDomain(self.extents, ~self.cells)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RectilinearDomain):
            return NotImplemented
        return self.extents == other.extents and bool(np.array_equal(self.cells, other.cells))

    def __repr__(self) -> str:
        return f"RectilinearDomain(extents={self.extents}, cells={self.cell_count})"


class CornerMap:
    """The nonzero corner weights of a domain.

    ``entries`` holds ``(vertex, alpha, pattern)`` triples sorted by vertex;
    vertices live on the vertex grid (one larger than the cell grid).
    """

    def __init__(self, entries: list[tuple[tuple[int, int], int, int]]) -> None:
        self.entries = sorted(entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def alpha_at(self, vertex: tuple[int, int]) -> int:
        for v, a, _ in self.entries:
            if v == vertex:
                return a
        return 0


def from_boxes(boxes: Iterable[LatticeBox], extents: Sequence[int]) -> RectilinearDomain:
    """The union of inclusive cell boxes. Unioning is idempotent."""
    dom = RectilinearDomain.empty(extents)
    for box in boxes:
        if box.ndim != 2:
            raise ValueError(f"domain boxes must be 2-D, got ndim {box.ndim}")
        for axis, (hi, e) in enumerate(zip(box.hi, dom.extents)):
            if box.lo[axis] < 0 or hi >= e:
                raise ValueError(
                    f"box out of bounds on axis {axis}: [{box.lo[axis]}, {hi}] not within [0, {e - 1}]"
                )
        dom.cells[box.lo[0] : box.hi[0] + 1, box.lo[1] : box.hi[1] + 1] = True
    return dom


def corners(domain: RectilinearDomain) -> CornerMap:
    """All vertices with nonzero corner weight, with weight and pattern."""
    h, w = domain.extents
    padded = np.zeros((h + 2, w + 2), dtype=np.int8)
    padded[1 : h + 1, 1 : w + 1] = domain.cells
    m_mm = padded[0 : h + 1, 0 : w + 1]
    m_mp = padded[0 : h + 1, 1 : w + 2]
    m_pm = padded[1 : h + 2, 0 : w + 1]
    m_pp = padded[1 : h + 2, 1 : w + 2]
    alpha = m_mm + m_pp - m_pm - m_mp
    pattern = (m_mm << 3) | (m_mp << 2) | (m_pm << 1) | m_pp
    entries = []
    for i, j in np.argwhere(alpha != 0):
        entries.append(((int(i), int(j)), int(alpha[i, j]), int(pattern[i, j])))
    return CornerMap(entries)


def domain_mass(domain: RectilinearDomain, sat: SummedAreaTable):
    """Sum of the table's base field over the domain's cells, by corner ledger.

    Valid whenever every member cell is at or above the table origin on both
    axes (reads below the origin are the empty prefix, which is exactly what
    the ledger needs there).
    """
    if sat.ndim != 2:
        raise ValueError(f"domain integration needs a 2-D table, got ndim {sat.ndim}")
    if tuple(sat.extents) != domain.extents:
        raise ValueError(f"table extents {sat.extents} do not match domain extents {domain.extents}")
    members = np.argwhere(domain.cells)
    if members.size:
        min_cell = members.min(axis=0)
        for axis in range(2):
            if int(min_cell[axis]) < sat.origin[axis]:
                raise ValueError(
                    f"table origin {sat.origin} exceeds domain cell minimum on axis {axis}"
                )
    total = 0 if sat.is_exact else 0.0
    for (vi, vj), a, _ in corners(domain):
        total += a * corner_value(sat, (vi - 1, vj - 1))
    return total


def integrate(domain: RectilinearDomain, sat: SummedAreaTable):
    """Exact integral of the base field over the domain via corner weights.

    Requires the table anchored at the grid minimum (the all-zeros origin),
    which makes every corner read well defined.
    """
    if any(o != 0 for o in sat.origin):
        raise ValueError(f"integrate requires table origin at the grid minimum, got {sat.origin}")
    return domain_mass(domain, sat)


def alpha_census(domain: RectilinearDomain) -> dict[int, dict[str, int]]:
    """Histogram of nonzero corner classes: pattern -> {alpha, count}."""
    census: dict[int, dict[str, int]] = {}
    for _, a, pattern in corners(domain):
        row = census.setdefault(pattern, {"alpha": a, "count": 0})
        row["count"] += 1
    return census


def domain_from_json(data: dict, extents: Sequence[int]) -> RectilinearDomain:
    """Read a domain from the ``{"boxes": [{"lo": [i,j], "hi": [i,j]}]}`` shape."""
    if not isinstance(data, dict) or "boxes" not in data:
        raise ValueError('domain JSON must be an object with a "boxes" list')
    boxes = []
    for k, entry in enumerate(data["boxes"]):
        try:
            boxes.append(LatticeBox(tuple(entry["lo"]), tuple(entry["hi"])))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"domain JSON: box {k} needs lo and hi lists: {exc}") from exc
    return from_boxes(boxes, extents)
