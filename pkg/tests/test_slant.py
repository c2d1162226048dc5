"""Unit tests for lattice curves, tended segments, and curve integrals."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satgrid.grid import FLOAT64, GridField, cell_sum
from satgrid.sat import build
from satgrid.slant import (
    LatticeCurve,
    TendedSegment,
    closed_curve_integral,
    curve_from_json,
    curve_tendency,
    curve_tendency_vector,
    curve_to_json,
    decompose,
    partial_domain,
    reverse,
    slanted_integral,
    straight_paths,
)

from helpers import boundary_loop, random_field, star_union

ONES_2X2 = build(GridField((2, 2), [1, 1, 1, 1]))
UP_STAIRS = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]


def staircase(rng, start, steps, dir0, dir1):
    """A random monotone staircase: axis-0 steps scaled by dir0, axis-1 by dir1."""
    verts = [start]
    for _ in range(steps):
        axis = int(rng.integers(0, 2))
        d = (dir0, 0) if axis == 0 else (0, dir1)
        v = verts[-1]
        verts.append((v[0] + d[0], v[1] + d[1]))
    return verts


def alternating_staircase(start, steps, dir0, dir1, first_axis=0):
    """A staircase that switches axis every step, so every interior is a corner."""
    verts = [start]
    for i in range(steps):
        axis = (first_axis + i) % 2
        d = (dir0, 0) if axis == 0 else (0, dir1)
        v = verts[-1]
        verts.append((v[0] + d[0], v[1] + d[1]))
    return verts


def test_curve_validation_messages():
    with pytest.raises(ValueError, match="not a unit lattice step"):
        LatticeCurve([(0, 0), (1, 1)])
    with pytest.raises(ValueError, match="backtracking at vertex 1"):
        LatticeCurve([(0, 0), (1, 0), (0, 0)])
    with pytest.raises(ValueError, match="at least 4 distinct vertices"):
        LatticeCurve([(0, 0), (1, 0)], closed=True)
    with pytest.raises(ValueError, match="revisits vertex"):
        LatticeCurve(
            [(0, 0), (1, 0), (1, 1), (0, 1), (0, 0), (-1, 0)], closed=False
        )


def test_closed_curve_strips_trailing_repeat():
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    a = LatticeCurve(square, closed=True)
    b = LatticeCurve(square + [(0, 0)], closed=True)
    assert a == b
    assert a.step_count == 4
    assert a.step(3) == (0, -1)


def test_tendency_of_staircase_corners():
    """Corners moving the same way on both axes tend to -1, opposite to +1."""
    up = LatticeCurve(UP_STAIRS)
    assert curve_tendency(up, 1) == -1
    assert curve_tendency(up, 2) == -1
    down = LatticeCurve([(0, 2), (1, 2), (1, 1), (2, 1), (2, 0)])
    assert curve_tendency(down, 1) == 1
    assert curve_tendency(down, 2) == 1


def test_tendency_of_straight_and_endpoints():
    line = LatticeCurve([(0, 0), (1, 0), (2, 0), (2, 1)])
    assert curve_tendency(line, 1) == 0
    assert curve_tendency(line, 0) == 0
    assert curve_tendency(line, 3) == 0
    assert curve_tendency(line, 2) == -1


def test_tendency_vector_components():
    up = LatticeCurve(UP_STAIRS)
    vec = curve_tendency_vector(up, 1)
    assert (vec.x_plus, vec.x_minus, vec.y_plus, vec.y_minus) == (1, -1, 1, -1)
    assert vec.tendency == -1


def test_tendency_wraps_on_closed_curves():
    square = LatticeCurve([(0, 0), (1, 0), (1, 1), (0, 1)], closed=True)
    taus = [curve_tendency(square, i) for i in range(4)]
    assert sorted(taus) == [-1, -1, 1, 1]
    assert taus[0] != taus[1]


def test_isolated_vertex_has_no_tendency():
    lone = LatticeCurve([(3, 3)])
    with pytest.raises(ValueError, match="isolated vertex"):
        curve_tendency(lone, 0)


def test_segment_validates_interior_tendency():
    TendedSegment(UP_STAIRS, beta=-1)
    with pytest.raises(ValueError, match=r"interior vertex \(1, 0\) has tendency -1"):
        TendedSegment(UP_STAIRS, beta=0)
    with pytest.raises(ValueError, match="must be -1, 0, or \\+1"):
        TendedSegment(UP_STAIRS, beta=2)
    with pytest.raises(ValueError, match="end tendencies"):
        TendedSegment(UP_STAIRS, beta=-1, beta0=0)
    with pytest.raises(ValueError, match="at least 2"):
        TendedSegment([(0, 0)], beta=0)


def test_single_edge_segment_has_zero_tendency():
    seg = TendedSegment([(0, 0), (1, 0)], beta=0)
    assert seg.beta == 0 and seg.beta0 == 0 and seg.beta1 == 0


def test_reverse_keeps_tendency():
    seg = TendedSegment(UP_STAIRS, beta=-1)
    back = reverse(seg)
    assert back.vertices == tuple(reversed(seg.vertices))
    assert back.beta == -1
    assert reverse(back) == seg


def test_decompose_open_staircase_is_single_segment():
    segs = decompose(LatticeCurve(UP_STAIRS))
    assert len(segs) == 1
    assert segs[0].beta == -1
    assert segs[0].vertices == tuple(UP_STAIRS)


def test_decompose_cuts_at_corner_between_straights():
    curve = LatticeCurve([(0, 0), (1, 0), (2, 0), (2, 1), (2, 2)])
    segs = decompose(curve)
    assert [s.beta for s in segs] == [0, 0]
    assert segs[0].end == (2, 0)
    assert segs[1].start == (2, 0)


def test_decompose_rectangle_boundary_into_four_sides():
    loop = [
        (0, 0), (1, 0), (2, 0), (3, 0),
        (3, 1), (3, 2),
        (2, 2), (1, 2), (0, 2),
        (0, 1),
    ]
    segs = decompose(LatticeCurve(loop, closed=True))
    assert len(segs) == 4
    assert all(s.beta == 0 for s in segs)
    assert segs[0].start == segs[-1].end
    for a, b in zip(segs, segs[1:]):
        assert a.end == b.start


def test_decompose_unit_square_into_two_corners():
    segs = decompose(LatticeCurve([(0, 0), (1, 0), (1, 1), (0, 1)], closed=True))
    assert len(segs) == 2
    assert all(s.beta == -1 for s in segs)
    assert segs[0].end == segs[1].start
    assert segs[1].end == segs[0].start


def test_decompose_chain_covers_every_step():
    rng = np.random.default_rng(83)
    for _ in range(20):
        loop = boundary_loop(star_union(rng, extent=10, max_boxes=3))
        curve = LatticeCurve(loop, closed=True)
        segs = decompose(curve)
        steps = sum(len(s.vertices) - 1 for s in segs)
        assert steps == curve.step_count
        for a, b in zip(segs, segs[1:]):
            assert a.end == b.start
        assert segs[-1].end == segs[0].start


def test_straight_paths_meet_at_elbows():
    seg = TendedSegment(UP_STAIRS, beta=-1)
    plus, minus = straight_paths(seg)
    assert plus.vertices == ((0, 0), (1, 0), (2, 0), (2, 1), (2, 2))
    assert minus.vertices == ((0, 0), (0, 1), (0, 2), (1, 2), (2, 2))
    axis = TendedSegment([(0, 0), (1, 0), (2, 0)], beta=0)
    p, m = straight_paths(axis)
    assert p.vertices == m.vertices == ((0, 0), (1, 0), (2, 0))


def _members(domain):
    return {
        (i, j)
        for i in range(domain.extents[0])
        for j in range(domain.extents[1])
        if domain.member((i, j))
    }


def test_partial_domains_of_staircase():
    seg = TendedSegment(UP_STAIRS, beta=-1)
    assert _members(partial_domain(seg, +1)) == {(1, 0)}
    assert _members(partial_domain(seg, -1)) == {(0, 0), (0, 1), (1, 1)}


def test_partial_domains_of_axis_parallel_segment_are_empty():
    seg = TendedSegment([(0, 0), (1, 0), (2, 0)], beta=0)
    assert partial_domain(seg, +1).cell_count == 0
    assert partial_domain(seg, -1).cell_count == 0
    with pytest.raises(ValueError, match="side"):
        partial_domain(seg, 0)


def test_orientation_swaps_partial_sides():
    plain = TendedSegment(UP_STAIRS, beta=-1)
    flipped = TendedSegment(UP_STAIRS, beta=-1, orientation=-1)
    assert partial_domain(plain, +1) == partial_domain(flipped, -1)
    assert partial_domain(plain, -1) == partial_domain(flipped, +1)


def test_slanted_integral_frozen_values():
    seg = TendedSegment(UP_STAIRS, beta=-1)
    assert slanted_integral(seg, ONES_2X2) == Fraction(-1)
    assert slanted_integral(reverse(seg), ONES_2X2) == Fraction(1)

    first = TendedSegment([(0, 0), (1, 0), (1, 1)], beta=-1)
    second = TendedSegment([(1, 1), (2, 1), (2, 2)], beta=-1)
    assert slanted_integral(first, ONES_2X2) == Fraction(-1, 2)
    assert slanted_integral(second, ONES_2X2) == Fraction(-1, 2)

    down = TendedSegment([(0, 2), (1, 2), (1, 1), (2, 1), (2, 0)], beta=1)
    assert slanted_integral(down, ONES_2X2) == Fraction(-3)


def test_slanted_integral_zero_for_axis_parallel():
    for verts in ([(0, 0), (1, 0), (2, 0)], [(1, 0), (1, 1), (1, 2)]):
        seg = TendedSegment(verts, beta=0)
        assert slanted_integral(seg, ONES_2X2) == 0
        assert slanted_integral(reverse(seg), ONES_2X2) == 0


def test_slanted_integral_antisymmetry_on_random_staircases():
    rng = np.random.default_rng(89)
    field = random_field(rng, (8, 8))
    sat = build(field)
    for _ in range(30):
        dir0 = int(rng.choice((-1, 1)))
        dir1 = int(rng.choice((-1, 1)))
        start = (
            int(rng.integers(2, 7)) if dir0 < 0 else int(rng.integers(0, 6)),
            int(rng.integers(2, 7)) if dir1 < 0 else int(rng.integers(0, 6)),
        )
        verts = alternating_staircase(start, 4, dir0, dir1, first_axis=int(rng.integers(0, 2)))
        beta = -1 if dir0 == dir1 else 1
        seg = TendedSegment(verts, beta=beta)
        value = slanted_integral(seg, sat)
        assert slanted_integral(reverse(seg), sat) == -value


def test_slanted_integral_additive_at_junction():
    rng = np.random.default_rng(97)
    field = random_field(rng, (4, 4))
    sat = build(field)
    whole = TendedSegment([(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3)], beta=-1)
    left = TendedSegment([(0, 0), (1, 0), (1, 1), (2, 1)], beta=-1)
    right = TendedSegment([(2, 1), (2, 2), (3, 2), (3, 3)], beta=-1)
    total = slanted_integral(whole, sat)
    assert slanted_integral(left, sat) + slanted_integral(right, sat) == total


def test_slanted_integral_rejects_off_grid_vertices():
    seg = TendedSegment([(2, 2), (3, 2), (3, 3)], beta=-1)
    with pytest.raises(ValueError, match="outside the vertex grid"):
        slanted_integral(seg, ONES_2X2)
    tall = build(GridField((1, 2), [1, 1]))
    with pytest.raises(ValueError, match="axis 0"):
        slanted_integral(TendedSegment(UP_STAIRS, beta=-1), tall)


def test_slanted_integral_float_mode():
    field = GridField((2, 2), [0.5, 1.5, 2.5, 3.5], scalar_mode=FLOAT64)
    sat = build(field)
    seg = TendedSegment(UP_STAIRS, beta=-1)
    value = slanted_integral(seg, sat)
    assert isinstance(value, float)
    assert abs(value + slanted_integral(reverse(seg), sat)) < 1e-12


def test_closed_integral_matches_cell_sum_on_loops():
    rng = np.random.default_rng(101)
    for _ in range(25):
        dom = star_union(rng, extent=9, max_boxes=3)
        field = random_field(rng, dom.extents)
        sat = build(field)
        loop = LatticeCurve(boundary_loop(dom), closed=True)
        assert closed_curve_integral(loop, sat) == cell_sum(field, dom.member)


def test_closed_integral_frozen_values():
    sat = build(GridField((2, 2), [1, 2, 3, 4]))
    full = LatticeCurve([(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)], closed=True)
    assert closed_curve_integral(full, sat) == 10
    unit = LatticeCurve([(1, 1), (2, 1), (2, 2), (1, 2)], closed=True)
    assert closed_curve_integral(unit, sat) == 4
    clockwise = LatticeCurve(list(reversed(unit.vertices)), closed=True)
    assert closed_curve_integral(clockwise, sat) == -4


def test_closed_integral_rotation_invariant():
    rng = np.random.default_rng(103)
    dom = star_union(rng, extent=8, max_boxes=3)
    field = random_field(rng, dom.extents)
    sat = build(field)
    loop = boundary_loop(dom)
    want = cell_sum(field, dom.member)
    for k in range(len(loop)):
        rotated = loop[k:] + loop[:k]
        assert closed_curve_integral(LatticeCurve(rotated, closed=True), sat) == want


def test_closed_integral_requires_closed_curve():
    with pytest.raises(ValueError, match="needs a closed curve"):
        closed_curve_integral(LatticeCurve(UP_STAIRS), ONES_2X2)


def test_decomposed_loop_segments_obey_sign_rules():
    """Every decomposed piece flips sign under reversal; flat pieces vanish."""
    rng = np.random.default_rng(107)
    for _ in range(10):
        dom = star_union(rng, extent=8, max_boxes=3)
        field = random_field(rng, dom.extents)
        sat = build(field)
        loop = LatticeCurve(boundary_loop(dom), closed=True)
        for seg in decompose(loop):
            value = slanted_integral(seg, sat)
            assert slanted_integral(reverse(seg), sat) == -value
            if seg.beta == 0:
                assert value == 0


@settings(max_examples=40)
@given(data=st.data())
def test_staircase_beta_from_directions(data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    dir0 = data.draw(st.sampled_from((-1, 1)))
    dir1 = data.draw(st.sampled_from((-1, 1)))
    start = (8 if dir0 < 0 else 0, 8 if dir1 < 0 else 0)
    verts = staircase(rng, start, 6, dir0, dir1)
    curve = LatticeCurve(verts)
    expect = -1 if dir0 == dir1 else 1
    for i in range(1, len(verts) - 1):
        tau = curve_tendency(curve, i)
        assert tau in (0, expect)
        if _corner_at(verts, i):
            assert tau == expect


def _corner_at(verts, i):
    din = (verts[i][0] - verts[i - 1][0], verts[i][1] - verts[i - 1][1])
    dout = (verts[i + 1][0] - verts[i][0], verts[i + 1][1] - verts[i][1])
    return (din[0] == 0) != (dout[0] == 0)


def test_curve_json_round_trip():
    curve = LatticeCurve(UP_STAIRS, closed=False, orientation=-1)
    back = curve_from_json(curve_to_json(curve))
    assert back == curve
    loop = LatticeCurve([(0, 0), (1, 0), (1, 1), (0, 1)], closed=True)
    assert curve_from_json(curve_to_json(loop)) == loop
    with pytest.raises(ValueError):
        curve_from_json({"vertices": [[0, 0], [2, 0]]})
