"""Command-line front end: one verb per task, one JSON object per line.

Output is deterministic for fixed inputs and seed (the bench verb is the
one exception: it prints wall-clock timings). Floats print with 17
significant digits, exact non-integer ratios as "numerator/denominator"
strings, and object keys in sorted order.

Exit codes: 0 on success, 1 when the data refuses the operation
(ValueError or OverflowError from the library), 2 when the invocation is
malformed (the message names the offending flag).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import bench as bench_mod
from . import detach as detach_mod
from . import green as green_mod
from . import grid as grid_mod
from . import sat as sat_mod
from . import slant as slant_mod


class UsageError(Exception):
    """A malformed flag value; names the flag it came from."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def _fmt(value) -> str:
    """Serialize to deterministic JSON: sorted keys, 17-digit floats."""
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return json.dumps(f"{value.numerator}/{value.denominator}")
    if isinstance(value, (float, np.floating)):
        text = f"{float(value):.17g}"
        if "inf" in text or "nan" in text:
            raise ValueError(f"cannot serialize non-finite float {value}")
        return text
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        inner = ",".join(
            f"{json.dumps(str(k))}:{_fmt(value[k])}" for k in sorted(value, key=str)
        )
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_fmt(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _emit(obj, out) -> None:
    out.write(_fmt(obj) + "\n")


def _parse_box(text: str) -> grid_mod.LatticeBox:
    lo, hi = [], []
    for axis, part in enumerate(text.split(",")):
        pieces = part.split(":")
        if len(pieces) != 2:
            raise UsageError("--box", f"axis {axis} needs lo:hi, got {part!r}")
        try:
            lo.append(int(pieces[0]))
            hi.append(int(pieces[1]))
        except ValueError:
            raise UsageError("--box", f"axis {axis} needs integer lo:hi, got {part!r}") from None
    try:
        return grid_mod.LatticeBox(tuple(lo), tuple(hi))
    except ValueError as exc:
        raise UsageError("--box", str(exc)) from None


def _parse_ints(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(flag, f"needs comma-separated integers, got {text!r}") from None


def _parse_abscissa(text: str):
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError("--at", f"needs a number, got {text!r}") from None


def _load_json_file(path: str, flag: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{flag} file {path} is not valid JSON: {exc}") from None


def _maybe_float(value, mode: str):
    if mode == "float":
        return float(value)
    return value


def _pick_mode(args, field: grid_mod.GridField) -> str:
    if getattr(args, "exact", False):
        if not field.is_exact:
            raise UsageError("--exact", "field stores float64 values")
        return "exact"
    if getattr(args, "float_mode", False):
        return "float"
    return "exact" if field.is_exact else "float"


def _cmd_sat_build(args, out) -> int:
    field = grid_mod.load_field(args.field)
    origin = _parse_ints(args.origin, "--origin") if args.origin else None
    table = sat_mod.build(field, origin=origin)
    sat_mod.store_sat(table, args.sat)
    _emit(
        {
            "extents": list(table.extents),
            "mode": table.scalar_mode,
            "origin": list(table.origin),
            "written": args.sat,
        },
        out,
    )
    return 0


def _cmd_sat_query(args, out) -> int:
    table = sat_mod.load_sat(args.sat)
    for text in args.box:
        box = _parse_box(text)
        value = sat_mod.box_query(table, box)
        _emit({"box": {"lo": list(box.lo), "hi": list(box.hi)}, "value": value}, out)
    return 0


def _cmd_green(args, out) -> int:
    field = grid_mod.load_field(args.field)
    domain = green_mod.domain_from_json(
        _load_json_file(args.domain, "--domain"), field.extents
    )
    table = sat_mod.build(field)
    integral = green_mod.integrate(domain, table)
    census = {
        format(pattern, "04b"): row
        for pattern, row in green_mod.alpha_census(domain).items()
    }
    _emit({"cell_count": domain.cell_count, "census": census, "integral": integral}, out)
    return 0


def _cmd_slant(args, out) -> int:
    field = grid_mod.load_field(args.field)
    mode = _pick_mode(args, field)
    curve = slant_mod.curve_from_json(_load_json_file(args.curve, "--curve"))
    table = sat_mod.build(field)
    segments = slant_mod.decompose(curve)
    total = Fraction(0) if field.is_exact else 0.0
    for k, seg in enumerate(segments):
        if seg.start == seg.end:
            value = None
        else:
            value = slant_mod.slanted_integral(seg, table)
            total += value
        _emit(
            {
                "beta": seg.beta,
                "end": list(seg.end),
                "integral": None if value is None else _maybe_float(value, mode),
                "segment": k,
                "start": list(seg.start),
            },
            out,
        )
    if curve.closed:
        total = slant_mod.closed_curve_integral(curve, table)
    _emit({"closed": curve.closed, "total": _maybe_float(total, mode)}, out)
    return 0


def _cmd_detach(args, out) -> int:
    fn = detach_mod.SampledFunction.from_csv(args.csv)
    x = _parse_abscissa(args.at)
    report = detach_mod.classify(fn, x, seed=args.seed)
    _emit(
        {
            "x": x,
            "sup_plus": report.sup_plus,
            "inf_plus": report.inf_plus,
            "sup_minus": report.sup_minus,
            "inf_minus": report.inf_minus,
            "detachment": report.detachment,
            "signposted": report.signposted_detachment,
            "types": list(report.disdetachment_types),
            "tendency": list(report.tendency_vector.bits),
            "monotony": sorted(report.monotony),
        },
        out,
    )
    return 0


def _cmd_extrema(args, out) -> int:
    fn = detach_mod.SampledFunction.from_csv(args.csv)
    found = detach_mod.find_extrema(fn)
    for e in found:
        _emit(
            {
                "index": e.index,
                "kind": e.kind,
                "left": e.left_sign,
                "right": e.right_sign,
                "x": e.x,
            },
            out,
        )
    _emit({"count": len(found)}, out)
    return 0


def _cmd_bench(args, out) -> int:
    reports = []
    reports.extend(
        bench_mod.bench_box_sum(
            extent=128,
            box_extents=(1, 4, 16, 32),
            samples=args.samples,
            seed=args.seed,
        )
    )
    reports.extend(
        bench_mod.bench_lanes(extent=128, box_extent=32, samples=args.samples, seed=args.seed)
    )
    reports.extend(bench_mod.bench_sign_vs_quotient(samples=args.samples, seed=args.seed))
    for r in reports:
        _emit(r.as_dict(), out)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(bench_mod.reports_to_csv(reports))
    return 0


def _selftest_table(seed: int) -> int:
    rng = np.random.default_rng(seed)
    cases = 0
    for ndim in (1, 2, 3):
        extents = tuple(int(rng.integers(2, 6)) for _ in range(ndim))
        count = int(np.prod(extents))
        field = grid_mod.GridField(extents, rng.integers(-9, 10, size=count).tolist())
        table = sat_mod.build(field)
        for _ in range(5):
            lo = tuple(int(rng.integers(0, e)) for e in extents)
            hi = tuple(int(rng.integers(l, e)) for l, e in zip(lo, extents))
            box = grid_mod.LatticeBox(lo, hi)
            if sat_mod.box_query(table, box) != grid_mod.naive_box_sum(field, box):
                raise AssertionError(f"table disagrees with direct sum on {box}")
            cases += 1
    return cases


def _selftest_corners(seed: int) -> int:
    rng = np.random.default_rng(seed + 1)
    cases = 0
    for _ in range(5):
        boxes = []
        for _ in range(int(rng.integers(1, 4))):
            lo = tuple(int(v) for v in rng.integers(0, 6, size=2))
            hi = tuple(int(l + rng.integers(0, 6 - l)) for l in lo)
            boxes.append(grid_mod.LatticeBox(lo, hi))
        domain = green_mod.from_boxes(boxes, (6, 6))
        field = grid_mod.GridField((6, 6), rng.integers(-9, 10, size=36).tolist())
        table = sat_mod.build(field)
        if green_mod.integrate(domain, table) != grid_mod.cell_sum(field, domain.member):
            raise AssertionError("corner ledger disagrees with cell sum")
        cases += 1
    return cases


def _selftest_curves(seed: int) -> int:
    ones = grid_mod.GridField((2, 2), [1, 1, 1, 1])
    table = sat_mod.build(ones)
    seg = slant_mod.TendedSegment([(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)], beta=-1)
    if slant_mod.slanted_integral(seg, table) != Fraction(-1):
        raise AssertionError("staircase integral is off")
    if slant_mod.slanted_integral(slant_mod.reverse(seg), table) != Fraction(1):
        raise AssertionError("reversal fails to flip the sign")
    rng = np.random.default_rng(seed + 2)
    cases = 2
    for _ in range(5):
        lo = tuple(int(v) for v in rng.integers(0, 3, size=2))
        hi = tuple(int(l + rng.integers(1, 4)) for l in lo)
        extent = max(hi) + 1
        field = grid_mod.GridField(
            (extent, extent), rng.integers(-9, 10, size=extent * extent).tolist()
        )
        table = sat_mod.build(field)
        loop = (
            [(i, lo[1]) for i in range(lo[0], hi[0] + 1)]
            + [(hi[0], j) for j in range(lo[1] + 1, hi[1] + 1)]
            + [(i, hi[1]) for i in range(hi[0] - 1, lo[0] - 1, -1)]
            + [(lo[0], j) for j in range(hi[1] - 1, lo[1], -1)]
        )
        curve = slant_mod.LatticeCurve(loop, closed=True)
        box = grid_mod.LatticeBox(lo, (hi[0] - 1, hi[1] - 1))
        if slant_mod.closed_curve_integral(curve, table) != grid_mod.naive_box_sum(field, box):
            raise AssertionError("loop ledger disagrees with the boxed sum")
        cases += 1
    return cases


def _selftest_signs(seed: int) -> int:
    report = detach_mod.classify(detach_mod.absolute_value_probe(), Fraction(0))
    if report.detachment != 1 or report.disdetachment_types != (1, 2):
        raise AssertionError("absolute value classification is off")
    report = detach_mod.classify(detach_mod.step_probe(), Fraction(0))
    if report.disdetachment_types != (1, 2, 3, 4) or not report.null_disdetachment:
        raise AssertionError("step classification is off")
    report = detach_mod.classify(detach_mod.oscillating_square_probe(), Fraction(0))
    if report.disdetachment_types != (1, 2, 5, 6):
        raise AssertionError("oscillation classification is off")
    if detach_mod.approx_partial_limits([(-1) ** n for n in range(512)]) != {-1, 1}:
        raise AssertionError("alternating limits are off")
    rng = np.random.default_rng(seed + 3)
    cases = 4
    for _ in range(5):
        bits = [0] * 6
        bits[int(rng.integers(0, 3))] = 1
        bits[3 + int(rng.integers(0, 3))] = 1
        vector = detach_mod.TendencyVector(tuple(bits))
        vane = detach_mod.weather_vane(vector)
        if detach_mod.classify(vane, Fraction(0)).tendency_vector != vector:
            raise AssertionError(f"weather vane fails to round-trip {vector.bits}")
        cases += 1
    return cases


_SELFTEST_SUITES = (
    ("table-queries", _selftest_table),
    ("corner-ledger", _selftest_corners),
    ("curve-integrals", _selftest_curves),
    ("sign-limits", _selftest_signs),
)


def _cmd_selftest(args, out) -> int:
    failed = False
    for name, fn in _SELFTEST_SUITES:
        try:
            cases = fn(args.seed)
            _emit({"cases": cases, "ok": True, "suite": name}, out)
        except Exception as exc:
            failed = True
            _emit({"error": str(exc), "ok": False, "suite": name}, out)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satgrid",
        description="Cumulative grid tables, corner-ledger integrals, and sign-limit reports.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("sat-build", help="build a cumulative table from a field file")
    p.add_argument("--field", required=True, help="field file (binary or .csv)")
    p.add_argument("--sat", required=True, help="output table file")
    p.add_argument("--origin", help="table origin as comma-separated integers")
    p.set_defaults(fn=_cmd_sat_build)

    p = sub.add_parser("sat-query", help="sum boxes against a stored table")
    p.add_argument("--sat", required=True, help="table file")
    p.add_argument("--box", required=True, action="append", help="inclusive box lo:hi[,lo:hi...]")
    p.set_defaults(fn=_cmd_sat_query)

    p = sub.add_parser("green", help="integrate a field over a rectilinear domain")
    p.add_argument("--field", required=True, help="2-D field file")
    p.add_argument("--domain", required=True, help='JSON file {"boxes": [{"lo": [i,j], "hi": [i,j]}]}')
    p.set_defaults(fn=_cmd_green)

    p = sub.add_parser("slant", help="integrate a field along a lattice curve")
    p.add_argument("--field", required=True, help="2-D field file")
    p.add_argument("--curve", required=True, help='JSON file {"orientation", "closed", "vertices"}')
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact arithmetic (integer fields only)")
    mode.add_argument("--float", dest="float_mode", action="store_true", help="float output")
    p.set_defaults(fn=_cmd_slant)

    p = sub.add_parser("detach", help="classify a point of a sampled function")
    p.add_argument("--csv", required=True, help="two-column CSV of samples")
    p.add_argument("--at", required=True, help="abscissa to classify")
    p.add_argument("--seed", type=int, default=None, help="probe subsampling seed")
    p.set_defaults(fn=_cmd_detach)

    p = sub.add_parser("extrema", help="report non-monotone interior samples")
    p.add_argument("--csv", required=True, help="two-column CSV of samples")
    p.set_defaults(fn=_cmd_extrema)

    p = sub.add_parser("bench", help="time table reads against direct summation")
    p.add_argument("--samples", type=int, default=40, help="timing samples per report")
    p.add_argument("--seed", type=int, default=20260814, help="query-set seed")
    p.add_argument("--csv", default=None, help="also write reports to this CSV file")
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("selftest", help="run the embedded reduced checks")
    p.add_argument("--seed", type=int, default=20260814, help="case-generation seed")
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args, out)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OverflowError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1
