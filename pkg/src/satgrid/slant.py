"""Lattice curves, their tendencies, and slanted integrals (2-D).

A lattice curve walks unit steps between integer vertices. At each vertex
the walk induces a four-component tendency vector (outgoing and incoming
sign per axis, with a local-window fallback when the adjacent step is flat
on an axis): staircase corners where both axes move the same way tend -1,
corners where they move opposite ways tend +1, straight-run interiors and
one-sided endpoints tend 0.

``decompose`` cuts a curve into the fewest tended segments: pieces whose
interior vertices all share one tendency value ``beta``. ``slanted_integral``
integrates a grid field along a tended segment: the field mass of the
region between the segment and its axis-aligned elbow path, corrected by
cumulative reads at the elbow and half-weighted reads at the endpoints.
Axis-parallel segments integrate to zero, and reversing a segment flips
the sign. ``closed_curve_integral`` sums a closed loop by a corner ledger
(each turn vertex contributes +-1 times the cumulative read below it) and
equals the plain cell sum of the enclosed region, counterclockwise
positive.

Vertex coordinates are ``(axis0, axis1)``; the docstrings call axis 0 "x"
and axis 1 "y". Cell ``(i, j)`` spans vertices ``(i, j)`` to ``(i+1, j+1)``,
and ``F(v)`` below always means the cumulative table read through vertex
``v`` exclusive (the read at ``v - 1`` per axis, empty below the origin).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .green import RectilinearDomain, domain_mass
from .sat import SummedAreaTable, corner_value

Vertex = tuple[int, int]


def _sgn(v: int) -> int:
    return (v > 0) - (v < 0)


def _as_vertex(item: Sequence[int], where: str) -> Vertex:
    if len(item) != 2:
        raise ValueError(f"{where} must be a pair of integers, got {tuple(item)!r}")
    return (int(item[0]), int(item[1]))


def _check_step(u: Vertex, v: Vertex, index: int) -> Vertex:
    d = (v[0] - u[0], v[1] - u[1])
    if abs(d[0]) + abs(d[1]) != 1:
        raise ValueError(f"step {index} from {u} to {v} is not a unit lattice step")
    return d


def _validate_walk(vertices: tuple[Vertex, ...], closed: bool, allow_loop_repeat: bool = False) -> None:
    """Shared validation: unit steps, no backtracking, no revisits."""
    n = len(vertices)
    body = vertices
    if allow_loop_repeat and n >= 2 and vertices[0] == vertices[-1]:
        body = vertices[:-1]
    for i in range(len(vertices) - 1):
        _check_step(vertices[i], vertices[i + 1], i)
    if closed:
        if len(body) < 4:
            raise ValueError(f"a closed curve needs at least 4 distinct vertices, got {len(body)}")
        _check_step(body[-1], body[0], len(body) - 1)
    for i in range(len(body) - 2):
        if body[i] == body[i + 2]:
            raise ValueError(f"backtracking at vertex {i + 1}: step out undoes step in")
    if closed and len(body) >= 2:
        if body[-2] == body[0] or body[-1] == body[1]:
            raise ValueError("backtracking across the closing step")
    if len(set(body)) != len(body):
        seen: set[Vertex] = set()
        for k, v in enumerate(body):
            if v in seen:
                raise ValueError(f"curve revisits vertex {v} at position {k}")
            seen.add(v)


class LatticeCurve:
    """An oriented walk of unit lattice steps, open or closed.

    Closed curves store each vertex once; a trailing repeat of the first
    vertex in the input is accepted and stripped. ``orientation`` is the
    side marker (+1 or -1) used when pairing a segment with its elbow path;
    it does not change the vertex order.
    """

    def __init__(
        self,
        vertices: Sequence[Sequence[int]],
        closed: bool = False,
        orientation: int = 1,
    ) -> None:
        if orientation not in (1, -1):
            raise ValueError(f"orientation must be +1 or -1, got {orientation}")
        verts = tuple(_as_vertex(v, f"vertex {k}") for k, v in enumerate(vertices))
        if closed and len(verts) >= 2 and verts[0] == verts[-1]:
            verts = verts[:-1]
        _validate_walk(verts, closed)
        self.vertices = verts
        self.closed = bool(closed)
        self.orientation = int(orientation)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def step_count(self) -> int:
        if self.closed:
            return len(self.vertices)
        return max(len(self.vertices) - 1, 0)

    def step(self, i: int) -> Vertex:
        n = len(self.vertices)
        if self.closed:
            u, v = self.vertices[i % n], self.vertices[(i + 1) % n]
        else:
            u, v = self.vertices[i], self.vertices[i + 1]
        return (v[0] - u[0], v[1] - u[1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeCurve):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.closed == other.closed
            and self.orientation == other.orientation
        )

    def __repr__(self) -> str:
        kind = "closed" if self.closed else "open"
        return f"LatticeCurve({kind}, orientation={self.orientation:+d}, {len(self.vertices)} vertices)"


@dataclass(frozen=True)
class CurveTendencyVector:
    """Per-vertex step signs: (x_plus, x_minus, y_plus, y_minus).

    ``x_plus`` is the sign of the outgoing step on axis 0, falling back to
    the incoming sign when the outgoing step is flat on that axis;
    ``x_minus`` is minus the incoming sign with the symmetric fallback.
    A missing side (curve endpoint) contributes zeros.
    """

    x_plus: int
    x_minus: int
    y_plus: int
    y_minus: int

    @property
    def tendency(self) -> int:
        s1, s2, s3, s4 = self.x_plus, self.x_minus, self.y_plus, self.y_minus
        if s1 * s4 != 0 and s2 == s3:
            return 1
        if s2 * s3 != 0 and s1 == -s4:
            return -1
        return 0


def _component(primary: Vertex | None, fallback: Vertex | None, axis: int, sign: int) -> int:
    if primary is None:
        return 0
    s = _sgn(primary[axis])
    if s == 0 and fallback is not None:
        s = _sgn(fallback[axis])
    return sign * s


def _vector_from_steps(d_in: Vertex | None, d_out: Vertex | None) -> CurveTendencyVector:
    return CurveTendencyVector(
        x_plus=_component(d_out, d_in, 0, +1),
        x_minus=_component(d_in, d_out, 0, -1),
        y_plus=_component(d_out, d_in, 1, +1),
        y_minus=_component(d_in, d_out, 1, -1),
    )


def _walk_steps_at(vertices: tuple[Vertex, ...], index: int, closed: bool) -> tuple[Vertex | None, Vertex | None]:
    n = len(vertices)
    if not 0 <= index < n:
        raise ValueError(f"vertex index {index} out of range for {n} vertices")
    if n == 1:
        raise ValueError("isolated vertex has no tendency")
    if closed:
        u_prev = vertices[(index - 1) % n]
        u_next = vertices[(index + 1) % n]
        d_in = (vertices[index][0] - u_prev[0], vertices[index][1] - u_prev[1])
        d_out = (u_next[0] - vertices[index][0], u_next[1] - vertices[index][1])
        return d_in, d_out
    d_in = None
    d_out = None
    if index > 0:
        u = vertices[index - 1]
        d_in = (vertices[index][0] - u[0], vertices[index][1] - u[1])
    if index < n - 1:
        v = vertices[index + 1]
        d_out = (v[0] - vertices[index][0], v[1] - vertices[index][1])
    return d_in, d_out


def curve_tendency_vector(curve: LatticeCurve, index: int) -> CurveTendencyVector:
    """The four step signs of a curve at one vertex."""
    d_in, d_out = _walk_steps_at(curve.vertices, index, curve.closed)
    return _vector_from_steps(d_in, d_out)


def curve_tendency(curve: LatticeCurve, index: int) -> int:
    """The tendency of a curve at one vertex: +1, -1, or 0.

    Corners where both axes move the same way (up-right or down-left
    staircases) tend -1; corners where they move opposite ways tend +1;
    straight-run interiors and endpoints tend 0.
    """
    return curve_tendency_vector(curve, index).tendency


class TendedSegment:
    """An open run of unit steps whose interior vertices share one tendency.

    ``beta`` is that shared tendency (0 for runs without interior vertices,
    such as single edges). The end tendencies ``beta0`` and ``beta1`` equal
    ``beta`` by construction. A segment normally has distinct endpoints;
    the single degenerate form allowed is a whole closed loop written with
    its first vertex repeated at the end.
    """

    def __init__(
        self,
        vertices: Sequence[Sequence[int]],
        beta: int,
        orientation: int = 1,
        beta0: int | None = None,
        beta1: int | None = None,
    ) -> None:
        if beta not in (-1, 0, 1):
            raise ValueError(f"segment tendency must be -1, 0, or +1, got {beta}")
        if orientation not in (1, -1):
            raise ValueError(f"orientation must be +1 or -1, got {orientation}")
        beta0 = beta if beta0 is None else beta0
        beta1 = beta if beta1 is None else beta1
        if beta0 != beta or beta1 != beta:
            raise ValueError("segment end tendencies must equal its uniform tendency")
        verts = tuple(_as_vertex(v, f"vertex {k}") for k, v in enumerate(vertices))
        if len(verts) < 2:
            raise ValueError(f"a segment needs at least 2 vertices, got {len(verts)}")
        _validate_walk(verts, closed=False, allow_loop_repeat=True)
        for i in range(1, len(verts) - 1):
            d_in, d_out = _walk_steps_at(verts, i, closed=False)
            tau = _vector_from_steps(d_in, d_out).tendency
            if tau != beta:
                raise ValueError(
                    f"interior vertex {verts[i]} has tendency {tau}, segment claims {beta}"
                )
        self.vertices = verts
        self.beta = int(beta)
        self.beta0 = int(beta0)
        self.beta1 = int(beta1)
        self.orientation = int(orientation)

    @property
    def start(self) -> Vertex:
        return self.vertices[0]

    @property
    def end(self) -> Vertex:
        return self.vertices[-1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TendedSegment):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.beta == other.beta
            and self.orientation == other.orientation
        )

    def __repr__(self) -> str:
        return (
            f"TendedSegment({self.start}->{self.end}, beta={self.beta:+d}, "
            f"orientation={self.orientation:+d}, {len(self.vertices)} vertices)"
        )


def reverse(segment: TendedSegment) -> TendedSegment:
    """The same segment walked end to start.

    Reversal keeps the tendency: a staircase monotone in both axes stays
    monotone in both, an anti-monotone one stays anti-monotone.
    """
    return TendedSegment(
        tuple(reversed(segment.vertices)),
        segment.beta,
        orientation=segment.orientation,
    )


def decompose(curve: LatticeCurve) -> list[TendedSegment]:
    """Cut a curve into the fewest tended segments.

    Greedy scan: a segment absorbs vertices while every vertex that becomes
    interior keeps the tendency fixed by the segment's first interior
    vertex; on a mismatch the offending vertex becomes the shared junction
    where the next segment starts. Closed curves are rotated to start at a
    tendency change; a closed curve whose vertices all share one tendency
    comes back as a single whole-loop segment (first vertex repeated).
    """
    verts = curve.vertices
    n = len(verts)
    if curve.closed:
        taus = [curve_tendency(curve, i) for i in range(n)]
        if all(t == taus[0] for t in taus):
            loop = verts + (verts[0],)
            return [TendedSegment(loop, taus[0], orientation=curve.orientation)]
        start = next(i for i in range(n) if taus[i] != taus[(i - 1) % n])
        order = [(start + k) % n for k in range(n + 1)]
        walk = [verts[i % n] for i in order]
        walk_taus = [taus[i % n] for i in order]
        return _greedy_cut(walk, walk_taus, curve.orientation)
    if n < 2:
        raise ValueError("a curve with no steps has no segments")
    taus = [curve_tendency(curve, i) for i in range(n)]
    return _greedy_cut(list(verts), taus, curve.orientation)


def _greedy_cut(walk: list[Vertex], taus: list[int], orientation: int) -> list[TendedSegment]:
    segments: list[TendedSegment] = []
    start = 0
    beta: int | None = None
    for i in range(1, len(walk)):
        if i < len(walk) - 1:
            tau = taus[i]
            if beta is None:
                beta = tau
            elif tau != beta:
                segments.append(TendedSegment(walk[start : i + 1], beta, orientation=orientation))
                start = i
                beta = None
    final_beta = beta if beta is not None else 0
    segments.append(TendedSegment(walk[start:], final_beta, orientation=orientation))
    return segments


def _elbow_path(a: Vertex, b: Vertex, sign: int) -> tuple[Vertex, ...]:
    """Unit-step elbow from a to b: axis 0 first for +1, axis 1 first for -1."""
    if a == b:
        return ()
    first_axis = 0 if sign == 1 else 1
    elbow = (b[0], a[1]) if sign == 1 else (a[0], b[1])
    path = [a]
    cur = a
    for axis, target in ((first_axis, elbow), (1 - first_axis, b)):
        step = _sgn(target[axis] - cur[axis])
        while cur != target:
            nxt = list(cur)
            nxt[axis] += step
            cur = (nxt[0], nxt[1])
            path.append(cur)
    return tuple(path)


def straight_paths(segment: TendedSegment) -> tuple[LatticeCurve, LatticeCurve]:
    """The two axis-aligned elbow paths joining the segment's endpoints.

    The plus path runs axis 0 first (elbow at ``(end.x, start.y)``), the
    minus path axis 1 first (elbow at ``(start.x, end.y)``). For an
    axis-parallel segment both equal the segment itself; for coinciding
    endpoints both are empty.
    """
    a, b = segment.start, segment.end
    plus = LatticeCurve(_elbow_path(a, b, +1)) if a != b else LatticeCurve(())
    minus = LatticeCurve(_elbow_path(a, b, -1)) if a != b else LatticeCurve(())
    return plus, minus


def _default_extents(vertices: Sequence[Vertex]) -> tuple[int, int]:
    hi0 = max((v[0] for v in vertices), default=1)
    hi1 = max((v[1] for v in vertices), default=1)
    return (max(hi0, 1), max(hi1, 1))


def partial_domain(
    segment: TendedSegment,
    side: int,
    extents: Sequence[int] | None = None,
) -> RectilinearDomain:
    """The cells enclosed between the segment and one of its elbow paths.

    ``side=+1`` pairs the segment with the elbow path selected by its
    orientation, ``side=-1`` with the other one. Membership is by nonzero
    winding number of the closed walk segment-then-reversed-path, so the
    two sides of an axis-parallel segment are both empty. The domain frame
    defaults to the walk's bounding box.
    """
    if side not in (1, -1):
        raise ValueError(f"side must be +1 or -1, got {side}")
    a, b = segment.start, segment.end
    if extents is None:
        frame = _default_extents(segment.vertices)
    else:
        frame = (int(extents[0]), int(extents[1]))
    if a == b:
        return RectilinearDomain.empty(frame)
    path_sign = segment.orientation if side == 1 else -segment.orientation
    path = _elbow_path(a, b, path_sign)
    walk = list(segment.vertices) + list(reversed(path))[1:]
    winding = np.zeros(frame, dtype=np.int32)
    for u, v in zip(walk, walk[1:]):
        if u[1] == v[1]:
            continue
        col = min(u[1], v[1])
        sign = 1 if v[1] > u[1] else -1
        if not (0 <= col < frame[1] and u[0] <= frame[0]):
            raise ValueError(f"walk leaves the domain frame {frame} near vertex {u}")
        winding[0 : u[0], col] += sign
    return RectilinearDomain(frame, winding != 0)


def slanted_integral(segment: TendedSegment, sat: SummedAreaTable):
    """Integral of the table's base field along a tended segment.

    The value is the field mass of the region between the segment and its
    orientation-selected elbow path, minus ``beta`` times the cumulative
    read below the elbow, plus half of ``beta`` times the reads below the
    two endpoints. Exact-integer tables give a Fraction (halves are the
    finest denominator), float tables a float. Axis-parallel segments give
    zero and reversal flips the sign.
    """
    if sat.ndim != 2:
        raise ValueError(f"slanted integration needs a 2-D table, got ndim {sat.ndim}")
    a, b = segment.start, segment.end
    if a == b:
        raise ValueError("segment endpoints coincide; integrate the closed curve instead")
    for v in segment.vertices:
        for axis in range(2):
            if not 0 <= v[axis] <= sat.extents[axis]:
                raise ValueError(f"vertex {v} outside the vertex grid on axis {axis}")
    s = segment.orientation
    beta = segment.beta
    elbow = (b[0], a[1]) if s == 1 else (a[0], b[1])
    plus_region = partial_domain(segment, +1, extents=sat.extents)
    mass = domain_mass(plus_region, sat)
    f_elbow = corner_value(sat, (elbow[0] - 1, elbow[1] - 1))
    f_a = corner_value(sat, (a[0] - 1, a[1] - 1))
    f_b = corner_value(sat, (b[0] - 1, b[1] - 1))
    if sat.is_exact:
        return Fraction(2 * mass - 2 * beta * f_elbow + beta * (f_a + f_b), 2)
    return mass - beta * f_elbow + 0.5 * beta * (f_a + f_b)


def _junction_weight(d_in: Vertex, d_out: Vertex) -> int:
    in_axis = 0 if d_in[1] == 0 else 1
    out_axis = 0 if d_out[1] == 0 else 1
    if in_axis == out_axis:
        return 0
    return -1 if in_axis == 0 else 1


def closed_curve_integral(curve: LatticeCurve, sat: SummedAreaTable):
    """Integral of the base field around a closed curve, by corner ledger.

    Every vertex where the walk turns contributes its turn weight (-1 for
    an axis-0 step turning into axis 1, +1 the other way) times the
    cumulative read below the vertex; straight vertices contribute nothing.
    The total equals the plain cell sum over the enclosed region, positive
    for counterclockwise traversal, negated for clockwise, and does not
    depend on where the table origin sits as long as reads stay defined
    (the turn weights sum to zero, so shared offsets cancel).

    The same number is the sum of the slanted integrals of the curve's
    decomposition once each junction's full corner weight is restored;
    axis-parallel pieces carry no half-end corrections because their
    tendency is zero.
    """
    if not curve.closed:
        raise ValueError("closed curve integral needs a closed curve")
    if sat.ndim != 2:
        raise ValueError(f"closed curve integration needs a 2-D table, got ndim {sat.ndim}")
    verts = curve.vertices
    for v in verts:
        for axis in range(2):
            if not 0 <= v[axis] <= sat.extents[axis]:
                raise ValueError(f"vertex {v} outside the vertex grid on axis {axis}")
    n = len(verts)
    total = 0 if sat.is_exact else 0.0
    for i in range(n):
        d_in, d_out = _walk_steps_at(verts, i, closed=True)
        t = _junction_weight(d_in, d_out)
        if t != 0:
            total += t * corner_value(sat, (verts[i][0] - 1, verts[i][1] - 1))
    return total


def curve_to_json(curve: LatticeCurve) -> dict:
    return {
        "orientation": curve.orientation,
        "closed": curve.closed,
        "vertices": [list(v) for v in curve.vertices],
    }


def curve_from_json(data: dict) -> LatticeCurve:
    """Read a curve from the ``{"orientation", "closed", "vertices"}`` shape."""
    if not isinstance(data, dict) or "vertices" not in data:
        raise ValueError('curve JSON must be an object with a "vertices" list')
    orientation = data.get("orientation", 1)
    closed = data.get("closed", False)
    if not isinstance(closed, bool):
        raise ValueError('curve JSON field "closed" must be a boolean')
    return LatticeCurve(data["vertices"], closed=bool(closed), orientation=orientation)
