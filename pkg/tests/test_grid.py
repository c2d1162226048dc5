"""Unit tests for grid fields, lattice boxes, and the file codecs."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satgrid.grid import (
    EXACT_INTEGER,
    FLOAT64,
    SUM_LIMIT,
    GridField,
    LatticeBox,
    cell_sum,
    load_field,
    naive_box_sum,
    store_field,
)

from helpers import random_box, random_field


def test_box_validation_names_axis():
    with pytest.raises(ValueError, match=r"box lo exceeds hi on axis 1: 4 > 2"):
        LatticeBox((0, 4), (3, 2))


def test_box_shape_mismatch():
    with pytest.raises(ValueError):
        LatticeBox((0, 0), (1, 1, 1))


def test_box_volume_and_contains():
    box = LatticeBox((1, 2), (3, 4))
    assert box.volume == 9
    assert box.contains((1, 2))
    assert box.contains((3, 4))
    assert not box.contains((0, 2))
    assert not box.contains((3, 5))


def test_field_requires_matching_value_count():
    with pytest.raises(ValueError, match="value count mismatch"):
        GridField((2, 3), [1, 2, 3])


def test_field_rejects_empty_extent():
    with pytest.raises(ValueError):
        GridField((0, 3), [])


def test_exact_mode_rejects_floats():
    with pytest.raises(ValueError):
        GridField((2,), [1.5, 2.0], scalar_mode=EXACT_INTEGER)


def test_exact_mode_overflow_is_loud():
    with pytest.raises(OverflowError):
        GridField((2,), [2**60, 1], scalar_mode=EXACT_INTEGER)
    GridField((2,), [2**59, 1], scalar_mode=EXACT_INTEGER)


def test_float_mode_stores_floats():
    field = GridField((2,), [1.5, -2.25], scalar_mode=FLOAT64)
    assert field.scalar_mode == FLOAT64
    assert field.get((0,)) == 1.5


def test_default_mode_is_exact_integer():
    assert GridField((2,), [1, 2]).scalar_mode == EXACT_INTEGER
    assert GridField((2,), [1.0, 2.0]).scalar_mode == EXACT_INTEGER
    with pytest.raises(ValueError):
        GridField((2,), [1.0, 2.5])


def test_get_checks_bounds():
    field = GridField((2, 2), [1, 2, 3, 4])
    assert field.get((1, 0)) == 3
    with pytest.raises(ValueError):
        field.get((2, 0))
    with pytest.raises(ValueError):
        field.get((0, -1))


def test_naive_box_sum_hand_value():
    field = GridField((2, 2), [1, 2, 3, 4])
    assert naive_box_sum(field, LatticeBox((0, 0), (1, 1))) == 10
    assert naive_box_sum(field, LatticeBox((1, 0), (1, 1))) == 7
    assert naive_box_sum(field, LatticeBox((0, 1), (1, 1))) == 6


def test_naive_box_sum_rejects_out_of_range_box():
    field = GridField((2, 2), [1, 2, 3, 4])
    with pytest.raises(ValueError):
        naive_box_sum(field, LatticeBox((0, 0), (2, 1)))


def test_naive_box_sum_matches_numpy_slices():
    rng = np.random.default_rng(11)
    for extents in ((7,), (5, 6), (4, 3, 5)):
        arr = rng.integers(-9, 10, size=extents)
        field = GridField(extents, arr.ravel().tolist())
        for _ in range(40):
            box = random_box(rng, extents)
            sl = tuple(slice(l, h + 1) for l, h in zip(box.lo, box.hi))
            assert naive_box_sum(field, box) == int(arr[sl].sum())


@settings(max_examples=60)
@given(
    data=st.data(),
    extents=st.lists(st.integers(1, 5), min_size=1, max_size=3).map(tuple),
)
def test_box_sum_splits_along_any_axis(data, extents):
    """Summing two halves of a box equals summing the whole box."""
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    field = random_field(rng, extents)
    box = random_box(rng, extents)
    axis = data.draw(st.integers(0, len(extents) - 1))
    if box.lo[axis] == box.hi[axis]:
        return
    cut = data.draw(st.integers(box.lo[axis], box.hi[axis] - 1))
    low_hi = list(box.hi)
    low_hi[axis] = cut
    high_lo = list(box.lo)
    high_lo[axis] = cut + 1
    whole = naive_box_sum(field, box)
    parts = naive_box_sum(field, LatticeBox(box.lo, tuple(low_hi)))
    parts += naive_box_sum(field, LatticeBox(tuple(high_lo), box.hi))
    assert whole == parts


def test_cell_sum_counts_only_members():
    field = GridField((2, 2), [1, 2, 3, 4])
    assert cell_sum(field, lambda c: c[0] == c[1]) == 5
    assert cell_sum(field, lambda c: True) == 10
    assert cell_sum(field, lambda c: False) == 0


def test_store_and_load_integer_field(tmp_path):
    rng = np.random.default_rng(3)
    field = random_field(rng, (3, 4, 2))
    path = tmp_path / "field.grdf"
    store_field(field, path)
    back = load_field(path)
    assert back == field
    assert back.scalar_mode == EXACT_INTEGER


def test_store_and_load_float_field(tmp_path):
    field = GridField((2, 3), [0.5, -1.25, 3.0, 2.5, -0.75, 9.0], scalar_mode=FLOAT64)
    path = tmp_path / "field.grdf"
    store_field(field, path)
    back = load_field(path)
    assert back == field
    assert back.scalar_mode == FLOAT64


def test_store_and_load_big_integers(tmp_path):
    field = GridField((2,), [2**59 - 1, -(2**59 - 1)])
    path = tmp_path / "wide.grdf"
    store_field(field, path)
    assert load_field(path) == field


def test_csv_codec_round_trip(tmp_path):
    field = GridField((2, 3), [1.0, 2.0, 3.5, 4.0, 5.0, 6.25], scalar_mode=FLOAT64)
    path = tmp_path / "field.csv"
    store_field(field, path)
    text = path.read_text()
    assert len(text.strip().splitlines()) == 2
    back = load_field(path)
    assert back.extents == (2, 3)
    assert back.scalar_mode == FLOAT64
    assert all(
        math.isclose(back.get(c), field.get(c))
        for c in ((0, 0), (1, 2), (0, 2))
    )


def test_csv_codec_rejects_non_2d():
    field = GridField((2, 2, 2), [1] * 8)
    with pytest.raises(ValueError):
        store_field(field, "anything.csv")


def test_load_rejects_corrupt_magic(tmp_path):
    path = tmp_path / "bad.grdf"
    path.write_bytes(b"NOTAFIELD")
    with pytest.raises(ValueError):
        load_field(path)


def test_sum_limit_is_wide():
    assert SUM_LIMIT == 2**60
