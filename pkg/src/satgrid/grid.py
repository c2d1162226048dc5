"""Dense lattice scalar fields and box sums.

A GridField is a dense scalar sample grid on 1 to 4 axes, stored flat in
row-major order (last axis fastest). Two scalar modes are supported:

* ``exact-integer``: int64 storage with exact arithmetic. Construction
  fails loudly when ``sum(|f|)`` exceeds ``SUM_LIMIT`` so that every
  partial sum and every corner-difference stays far from int64 wrap.
* ``float64``: IEEE doubles; sums accumulate in float64.

The module also owns the two reference summation routines the rest of
the package is checked against: an inclusive box sum over an axis-aligned
box and a predicate-driven cell sum over an arbitrary membership map.

File formats:

* ``.grdf``: little-endian binary. Magic ``GRDF``, u16 version (1),
  u8 dtype (0 = int64, 1 = float64), u8 ndim, ndim u32 extents, then the
  flat values. Round-trips are bit exact, float64 payloads bitwise.
* ``.csv``: 2-D float64 only, rows are axis 0, no header row.
"""

from __future__ import annotations

import csv
import struct
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

EXACT_INTEGER = "exact-integer"
FLOAT64 = "float64"

MAX_NDIM = 4

# Exact-mode bound on sum(|values|). Keeps every cumulative entry and any
# alternating corner sum (up to 2^ndim terms) well inside int64 range in
# the compiled lane, and guards int64 serialization.
SUM_LIMIT = 2**60

_GRDF_MAGIC = b"GRDF"
_GRDS_MAGIC = b"GRDS"
_DTYPE_I64 = 0
_DTYPE_F64 = 1


@dataclass(frozen=True)
class LatticePoint:
    """An integer coordinate on the sample grid."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        coords = tuple(int(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)

    @property
    def ndim(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class LatticeBox:
    """An axis-aligned box with inclusive corners ``lo`` and ``hi``."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self) -> None:
        lo = tuple(int(c) for c in self.lo)
        hi = tuple(int(c) for c in self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if len(lo) != len(hi):
            raise ValueError(f"box corners disagree on rank: {len(lo)} vs {len(hi)}")
        if not 1 <= len(lo) <= MAX_NDIM:
            raise ValueError(f"unsupported ndim {len(lo)} for box (must be 1..{MAX_NDIM})")
        for axis, (a, b) in enumerate(zip(lo, hi)):
            if a > b:
                raise ValueError(f"box lo exceeds hi on axis {axis}: {a} > {b}")

    @property
    def ndim(self) -> int:
        return len(self.lo)

    @property
    def volume(self) -> int:
        v = 1
        for a, b in zip(self.lo, self.hi):
            v *= b - a + 1
        return v

    def contains(self, coords: Sequence[int]) -> bool:
        return all(a <= c <= b for a, b, c in zip(self.lo, self.hi, coords))


class GridField:
    """A dense scalar field sampled on a small integer lattice."""

    def __init__(
        self,
        extents: Sequence[int],
        values: Iterable,
        scalar_mode: str = EXACT_INTEGER,
    ) -> None:
        extents = tuple(int(e) for e in extents)
        if not 1 <= len(extents) <= MAX_NDIM:
            raise ValueError(f"unsupported ndim {len(extents)} (must be 1..{MAX_NDIM})")
        if any(e < 1 for e in extents):
            raise ValueError(f"extents must be positive, got {extents}")
        if scalar_mode not in (EXACT_INTEGER, FLOAT64):
            raise ValueError(f"unknown scalar_mode {scalar_mode!r}")

        count = 1
        for e in extents:
            count *= e
        arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
        if arr.ndim != 1:
            arr = arr.reshape(-1)
        if arr.size != count:
            raise ValueError(f"value count mismatch: extents {extents} need {count}, got {arr.size}")

        if scalar_mode == EXACT_INTEGER:
            if arr.dtype.kind not in "iu" and not all(
                float(v).is_integer() for v in arr.tolist()
            ):
                raise ValueError("exact-integer mode requires integer values")
            as_int = arr.astype(object)
            total = sum(abs(int(v)) for v in as_int)
            if total > SUM_LIMIT:
                raise OverflowError(
                    f"exact-integer field too large: sum(|values|) = {total} exceeds {SUM_LIMIT}"
                )
            arr = arr.astype(np.int64)
        else:
            arr = arr.astype(np.float64)

        self.extents = extents
        self.values = arr
        self.scalar_mode = scalar_mode
        self._flat_list: list | None = None

    @property
    def ndim(self) -> int:
        return len(self.extents)

    @property
    def nd(self) -> np.ndarray:
        """The values viewed as an ndarray of shape ``extents``."""
        return self.values.reshape(self.extents)

    @property
    def is_exact(self) -> bool:
        return self.scalar_mode == EXACT_INTEGER

    @property
    def flat(self) -> list:
        """The values as a cached plain-Python list (read only)."""
        if self._flat_list is None:
            self._flat_list = self.values.tolist()
        return self._flat_list

    def zero(self):
        """The additive identity in this field's scalar mode."""
        return 0 if self.is_exact else 0.0

    def get(self, coords: Sequence[int]):
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.ndim:
            raise ValueError(
                f"coordinate rank {len(coords)} does not match field rank {self.ndim}"
            )
        for axis, (c, e) in enumerate(zip(coords, self.extents)):
            if not 0 <= c < e:
                raise ValueError(f"coordinate {c} outside extent {e} on axis {axis}")
        v = self.nd[coords]
        return int(v) if self.is_exact else float(v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GridField):
            return NotImplemented
        return (
            self.extents == other.extents
            and self.scalar_mode == other.scalar_mode
            and np.array_equal(
                self.values.view(np.uint64) if not self.is_exact else self.values,
                other.values.view(np.uint64) if not other.is_exact else other.values,
            )
        )

    def __repr__(self) -> str:
        return f"GridField(extents={self.extents}, scalar_mode={self.scalar_mode!r})"


def _check_box(field: GridField, box: LatticeBox) -> None:
    if box.ndim != field.ndim:
        raise ValueError(f"box rank {box.ndim} does not match field rank {field.ndim}")
    for axis, (lo, hi, extent) in enumerate(zip(box.lo, box.hi, field.extents)):
        if lo < 0 or hi >= extent:
            raise ValueError(
                f"box out of bounds on axis {axis}: [{lo}, {hi}] not within [0, {extent - 1}]"
            )


def naive_box_sum(field: GridField, box: LatticeBox):
    """Inclusive sum of the field over an axis-aligned box, by direct iteration.

    This is the reference implementation: it visits every sample in the box
    one by one, so its cost grows with box volume. The cumulative tables are
    verified against it, and the benchmark measures it as the baseline.
    """
    _check_box(field, box)
    flat = field.flat
    exact = field.is_exact
    total = 0 if exact else 0.0

    strides = [1] * field.ndim
    for axis in range(field.ndim - 2, -1, -1):
        strides[axis] = strides[axis + 1] * field.extents[axis + 1]

    ranges = [range(lo, hi + 1) for lo, hi in zip(box.lo, box.hi)]
    idx = list(box.lo)
    n = field.ndim
    while True:
        off = 0
        for axis in range(n):
            off += idx[axis] * strides[axis]
        total += flat[off]
        axis = n - 1
        while axis >= 0:
            idx[axis] += 1
            if idx[axis] <= ranges[axis].stop - 1:
                break
            idx[axis] = ranges[axis].start
            axis -= 1
        if axis < 0:
            return total


def cell_sum(field: GridField, member: Callable[[tuple[int, ...]], bool]):
    """Sum of the field over all sample positions accepted by ``member``.

    An empty selection returns the additive identity of the scalar mode.
    """
    nd = field.nd
    total = 0 if field.is_exact else 0.0
    for coords in np.ndindex(*field.extents):
        if member(coords):
            v = nd[coords]
            total += int(v) if field.is_exact else float(v)
    return total


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------


def _encode_raw(
    magic: bytes,
    extents: tuple[int, ...],
    values: np.ndarray,
    exact: bool,
    origin: tuple[int, ...] | None,
) -> bytes:
    ndim = len(extents)
    dtype_code = _DTYPE_I64 if exact else _DTYPE_F64
    head = [magic, struct.pack("<H", 1), struct.pack("<BB", dtype_code, ndim)]
    head.append(struct.pack(f"<{ndim}I", *extents))
    if origin is not None:
        head.append(struct.pack(f"<{ndim}I", *origin))
    payload = np.ascontiguousarray(values).astype("<i8" if exact else "<f8").tobytes()
    return b"".join(head) + payload


def _decode_raw(blob: bytes, magic: bytes, with_origin: bool, source: str):
    """Parse a GRDF/GRDS blob into (extents, flat array, scalar_mode, origin)."""
    name = magic.decode("ascii")
    if len(blob) < 8 or blob[:4] != magic:
        raise ValueError(f"{name} load ({source}): bad magic {blob[:4]!r}")
    (version,) = struct.unpack_from("<H", blob, 4)
    if version != 1:
        raise ValueError(f"{name} load ({source}): unsupported version {version}")
    dtype_code, ndim = struct.unpack_from("<BB", blob, 6)
    if dtype_code not in (_DTYPE_I64, _DTYPE_F64):
        raise ValueError(f"{name} load ({source}): unsupported dtype code {dtype_code}")
    if not 1 <= ndim <= MAX_NDIM:
        raise ValueError(f"{name} load ({source}): unsupported ndim {ndim}")
    off = 8
    need = 4 * ndim * (2 if with_origin else 1)
    if len(blob) < off + need:
        raise ValueError(f"{name} load ({source}): truncated header")
    extents = struct.unpack_from(f"<{ndim}I", blob, off)
    off += 4 * ndim
    origin: tuple[int, ...] | None = None
    if with_origin:
        origin = struct.unpack_from(f"<{ndim}I", blob, off)
        off += 4 * ndim
    count = 1
    for e in extents:
        count *= e
    dt = np.dtype("<i8") if dtype_code == _DTYPE_I64 else np.dtype("<f8")
    body = blob[off:]
    if len(body) != count * 8:
        raise ValueError(
            f"{name} load ({source}): value count mismatch, "
            f"extents {tuple(extents)} need {count * 8} bytes, got {len(body)}"
        )
    arr = np.frombuffer(body, dtype=dt).copy()
    mode = EXACT_INTEGER if dtype_code == _DTYPE_I64 else FLOAT64
    return tuple(int(e) for e in extents), arr, mode, origin


def store_field(field: GridField, path: str) -> None:
    """Write a field to ``path``; ``.csv`` gets the text codec, else GRDF."""
    if str(path).endswith(".csv"):
        if field.ndim != 2:
            raise ValueError(f"CSV store: unsupported ndim {field.ndim} (CSV is 2-D only)")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            for row in field.nd.astype(np.float64):
                writer.writerow([repr(float(v)) for v in row])
        return
    with open(path, "wb") as fh:
        fh.write(_encode_raw(_GRDF_MAGIC, field.extents, field.values, field.is_exact, origin=None))


def load_field(path: str) -> GridField:
    """Read a field from ``path``; ``.csv`` gets the text codec, else GRDF."""
    if str(path).endswith(".csv"):
        rows: list[list[float]] = []
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh)):
                if not row:
                    continue
                try:
                    rows.append([float(v) for v in row])
                except ValueError as exc:
                    raise ValueError(f"CSV load ({path}): bad value on row {lineno}: {exc}") from exc
        if not rows:
            raise ValueError(f"CSV load ({path}): empty file")
        width = len(rows[0])
        for lineno, row in enumerate(rows):
            if len(row) != width:
                raise ValueError(
                    f"CSV load ({path}): value count mismatch on row {lineno}: "
                    f"{len(row)} values, expected {width}"
                )
        flat = np.asarray(rows, dtype=np.float64).reshape(-1)
        return GridField((len(rows), width), flat, scalar_mode=FLOAT64)
    with open(path, "rb") as fh:
        blob = fh.read()
    extents, arr, mode, _ = _decode_raw(blob, _GRDF_MAGIC, with_origin=False, source=str(path))
    return GridField(extents, arr, scalar_mode=mode)
