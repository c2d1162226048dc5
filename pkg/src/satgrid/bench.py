"""Timing comparisons: cumulative-table reads against direct summation.

Every comparison runs both contestants over one shared, seeded query set
and first verifies that they return identical answers; only then does it
time them. Reports carry the median with the 10th and 90th percentiles so
flatness claims (table reads cost the same no matter how large the box)
can be judged by interval overlap, and a speed ratio where a comparison
makes sense.

Numbers are reported, never judged here: a 1-by-1 box costs the direct
method almost nothing, so its ratio sits near 1 by construction, and the
sign-versus-quotient comparison depends on interpreter details. Callers
decide what to assert.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np

from .grid import GridField, LatticeBox, naive_box_sum
from . import _kernels
from .sat import SummedAreaTable, box_query, build
from .detach import sign


@dataclass
class CostReport:
    """Timing summary of one labeled operation."""

    label: str
    samples: int
    median_ns: float
    p10_ns: float
    p90_ns: float
    ratio: float | None = None

    def overlaps(self, other: "CostReport") -> bool:
        """Whether the p10..p90 spans of two reports intersect."""
        return self.p10_ns <= other.p90_ns and other.p10_ns <= self.p90_ns

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "samples": self.samples,
            "median_ns": self.median_ns,
            "p10_ns": self.p10_ns,
            "p90_ns": self.p90_ns,
            "ratio": self.ratio,
        }


def _measure(fn, label: str, samples: int, warmup: int) -> CostReport:
    if samples < 2:
        raise ValueError(f"need at least 2 timing samples, got {samples}")
    for _ in range(warmup):
        fn()
    times = []
    for _ in range(samples):
        t0 = time.perf_counter_ns()
        fn()
        times.append(time.perf_counter_ns() - t0)
    times.sort()
    p10 = times[round(0.10 * (samples - 1))]
    p90 = times[round(0.90 * (samples - 1))]
    return CostReport(
        label=label,
        samples=samples,
        median_ns=float(statistics.median(times)),
        p10_ns=float(p10),
        p90_ns=float(p90),
        ratio=None,
    )


def _seeded_field(ndim: int, extent: int, seed: int) -> GridField:
    rng = np.random.default_rng(seed)
    extents = (extent,) * ndim
    count = extent**ndim
    return GridField(extents, rng.integers(-9, 10, size=count).tolist())


def _seeded_boxes(ndim: int, extent: int, box_extent: int, queries: int, rng) -> list[LatticeBox]:
    if box_extent > extent:
        raise ValueError(f"box extent {box_extent} exceeds field extent {extent}")
    boxes = []
    for _ in range(queries):
        lo = tuple(int(rng.integers(0, extent - box_extent + 1)) for _ in range(ndim))
        hi = tuple(l + box_extent - 1 for l in lo)
        boxes.append(LatticeBox(lo, hi))
    return boxes


def bench_box_sum(
    ndim: int = 2,
    extent: int = 256,
    box_extents=(1, 4, 16, 64),
    queries: int = 8,
    samples: int = 120,
    warmup: int = 8,
    seed: int = 20260814,
) -> list[CostReport]:
    """Time direct box summation against table reads, box size by box size.

    For every box extent the same seeded query set feeds both methods, and
    the two result lists must agree exactly before any clock starts. Each
    table report carries ``ratio`` = direct median / table median. Direct
    cost grows with box volume while table reads stay flat, so the ratio
    climbs from about 1 at single-cell boxes.
    """
    field = _seeded_field(ndim, extent, seed)
    sat = build(field)
    rng = np.random.default_rng(seed + 1)
    reports: list[CostReport] = []
    for box_extent in box_extents:
        boxes = _seeded_boxes(ndim, extent, box_extent, queries, rng)
        direct_answers = [naive_box_sum(field, b) for b in boxes]
        table_answers = [box_query(sat, b) for b in boxes]
        if direct_answers != table_answers:
            raise AssertionError(
                f"direct and table answers disagree on box extent {box_extent}"
            )
        direct = _measure(
            lambda: [naive_box_sum(field, b) for b in boxes],
            f"direct-{ndim}d-box{box_extent}",
            samples,
            warmup,
        )
        table = _measure(
            lambda: [box_query(sat, b) for b in boxes],
            f"table-{ndim}d-box{box_extent}",
            samples,
            warmup,
        )
        table.ratio = direct.median_ns / table.median_ns if table.median_ns else None
        reports.append(direct)
        reports.append(table)
    return reports


def bench_lanes(
    ndim: int = 2,
    extent: int = 256,
    box_extent: int = 64,
    queries: int = 8,
    samples: int = 120,
    warmup: int = 8,
    seed: int = 20260814,
) -> list[CostReport]:
    """Time the compiled query kernel against the pure-Python one.

    Returns one report when only the pure lane is importable, two when
    both are; with both, the pure report carries ``ratio`` = pure median /
    compiled median. Answers are cross-checked before timing.
    """
    field = _seeded_field(ndim, extent, seed)
    sat = build(field)
    rng = np.random.default_rng(seed + 1)
    boxes = _seeded_boxes(ndim, extent, box_extent, queries, rng)

    def pure_all():
        return [
            _kernels.box_query_py(sat.cum_flat, sat.strides, sat.origin, b.lo, b.hi)
            for b in boxes
        ]

    reports = []
    pure_answers = pure_all()
    compiled = None
    if _kernels.USING_COMPILED:
        compiled_answers = [box_query(sat, b) for b in boxes]
        if [int(v) for v in compiled_answers] != [int(v) for v in pure_answers]:
            raise AssertionError("compiled and pure lanes disagree")
        compiled = _measure(
            lambda: [box_query(sat, b) for b in boxes],
            f"query-compiled-{ndim}d-box{box_extent}",
            samples,
            warmup,
        )
        reports.append(compiled)
    pure = _measure(pure_all, f"query-pure-{ndim}d-box{box_extent}", samples, warmup)
    if compiled is not None and compiled.median_ns:
        pure.ratio = pure.median_ns / compiled.median_ns
    reports.append(pure)
    return reports


def bench_sign_vs_quotient(
    stream=None,
    count: int = 4096,
    samples: int = 120,
    warmup: int = 8,
    seed: int = 20260814,
) -> list[CostReport]:
    """Time sign extraction against the quotient v / |v| on one stream.

    The default stream is seeded nonzero floats (the quotient needs them
    nonzero). The quotient report carries ``ratio`` = quotient median /
    sign median. The outcome is informational; neither direction is a
    correctness claim.
    """
    if stream is None:
        rng = np.random.default_rng(seed)
        stream = [float(v) for v in rng.uniform(-10.0, 10.0, size=count) if v != 0.0]
    else:
        stream = list(stream)
    if not stream:
        raise ValueError("empty stream")
    sign_answers = [sign(v) for v in stream]
    quotient_answers = [v / abs(v) for v in stream]
    if sign_answers != quotient_answers:
        raise AssertionError("sign and quotient disagree on the stream")
    sign_report = _measure(lambda: [sign(v) for v in stream], "sign-of-value", samples, warmup)
    quot_report = _measure(
        lambda: [v / abs(v) for v in stream], "quotient-of-value", samples, warmup
    )
    if sign_report.median_ns:
        quot_report.ratio = quot_report.median_ns / sign_report.median_ns
    return [sign_report, quot_report]


def reports_to_csv(reports) -> str:
    """Flatten reports to CSV with a header row."""
    lines = ["label,samples,median_ns,p10_ns,p90_ns,ratio"]
    for r in reports:
        ratio = "" if r.ratio is None else repr(float(r.ratio))
        lines.append(f"{r.label},{r.samples},{r.median_ns!r},{r.p10_ns!r},{r.p90_ns!r},{ratio}")
    return "\n".join(lines) + "\n"
