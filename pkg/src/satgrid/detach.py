"""One-sided sign limits, detachments, and tendency classification.

The central question: on each side of a point, what signs does
``f(x +- h) - f(x)`` settle into as ``h`` shrinks? A probe function answers
it by familes of exact offsets (each family models one way of approaching
the point); a sampled function answers it by its adjacent secants.

From the supremum and infimum of the settled signs on each side the point
gets a classification:

* detachable: all four agree; the common sign is the detachment.
* signposted: each side settles on one sign and the sides are opposite;
  the right sign is the signposted detachment (strictly monotone points).
* six disdetachment types record which of the defining equalities fail;
  a point whose two sides each settle but disagree in both the plain and
  the mirrored comparison is a null disdetachment (jumps).

A six-bit tendency vector records which signs occur on each side, and a
small literal table maps a handful of vectors to monotony verdicts.
``weather_vane`` inverts the map: given any admissible vector it builds a
probe function that reproduces it exactly.
"""

from __future__ import annotations

import bisect
import csv
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

# Window parameters (m_min, m_max, k_min, k_max): a stabilization scan
# consumes at most m_min * k_max terms, clusters values at resolution
# 1 / m_max, and accepts a cluster once its count reaches k_max - k_min
# (capped at three quarters of the terms actually consumed, so short
# families can still settle).
DEFAULT_WINDOW = (4, 64, 8, 128)

_SIDE_NAMES = {1: "right", -1: "left"}


def sign(r, zero_band=0):
    """Sign of a real number, with an optional dead band around zero."""
    if r != r:
        raise ValueError("sign of NaN is undefined")
    if zero_band < 0:
        raise ValueError(f"zero_band must be nonnegative, got {zero_band}")
    if r > zero_band:
        return 1
    if r < -zero_band:
        return -1
    return 0


def _check_window(window) -> tuple[int, int, int, int]:
    if len(window) != 4:
        raise ValueError(f"window needs 4 entries (m_min, m_max, k_min, k_max), got {len(window)}")
    m_min, m_max, k_min, k_max = (int(w) for w in window)
    if not 0 < m_min <= m_max:
        raise ValueError(f"window needs 0 < m_min <= m_max, got ({m_min}, {m_max})")
    if not 0 <= k_min < k_max:
        raise ValueError(f"window needs 0 <= k_min < k_max, got ({k_min}, {k_max})")
    return m_min, m_max, k_min, k_max


def approx_partial_limits(seq: Iterable, window=DEFAULT_WINDOW, seed=None) -> set:
    """The values a sequence keeps returning to, within window resolution.

    Consumes at most ``m_min * k_max`` terms, optionally subsamples three
    quarters of them (seeded, order kept), then clusters the observed
    values: sorted values chain together while consecutive gaps stay
    within ``1 / m_max``. A cluster qualifies when its occurrence count
    reaches ``k_max - k_min``, capped at three quarters of the consumed
    terms. Each qualifying cluster is reported by its most frequent exact
    value, smallest first on ties.

    A sequence eventually alternating between -1 and +1 gives ``{-1, 1}``;
    a constant sequence gives its constant; a vanishing positive tail
    clusters near zero and is reported by its smallest member.
    """
    m_min, m_max, k_min, k_max = _check_window(window)
    budget = m_min * k_max
    terms = []
    for v in seq:
        terms.append(v)
        if len(terms) >= budget:
            break
    if not terms:
        raise ValueError("empty sequence has no partial limits")
    if seed is not None:
        rng = random.Random(seed)
        keep = max(1, (3 * len(terms)) // 4)
        idx = sorted(rng.sample(range(len(terms)), keep))
        terms = [terms[i] for i in idx]
    threshold = min(k_max - k_min, max(1, (3 * len(terms)) // 4))
    resolution = Fraction(1, m_max)
    counts: dict = {}
    for v in terms:
        counts[v] = counts.get(v, 0) + 1
    ordered = sorted(counts)
    clusters: list[list] = [[ordered[0]]]
    for a, b in zip(ordered, ordered[1:]):
        if b - a <= resolution:
            clusters[-1].append(b)
        else:
            clusters.append([b])
    out = set()
    for members in clusters:
        total = sum(counts[v] for v in members)
        if total >= threshold:
            top = max(counts[v] for v in members)
            out.add(min(v for v in members if counts[v] == top))
    return out


class UnstableProbeError(ValueError):
    """No probe family settled on a single sign; carries the evidence."""

    def __init__(self, message: str, histogram: dict):
        super().__init__(message)
        self.histogram = histogram


class ProbeFunction:
    """A function probed along tagged families of exact offsets.

    ``value(x)`` is the value at the base point. ``families(x, side)``
    names the approach families on one side (+1 right, -1 left) and gives
    each a sequence of positive offsets shrinking toward zero.
    ``probe(x, side, tag, offset)`` evaluates the function at the probe
    point ``x + side * offset`` as seen along that family; families let a
    single fixture model approaches the rationals alone cannot reach.
    """

    def __init__(
        self,
        value_fn: Callable,
        families_fn: Callable,
        probe_fn: Callable,
        name: str = "",
    ) -> None:
        self._value_fn = value_fn
        self._families_fn = families_fn
        self._probe_fn = probe_fn
        self.name = name

    def value(self, x):
        return self._value_fn(x)

    def families(self, x, side: int) -> dict:
        if side not in (1, -1):
            raise ValueError(f"side must be +1 or -1, got {side}")
        fams = dict(self._families_fn(x, side))
        if not fams:
            raise ValueError(f"no probe families on the {_SIDE_NAMES[side]} side of {x}")
        for tag, offsets in fams.items():
            if not offsets:
                raise ValueError(f"probe family {tag!r} has no offsets")
        return fams

    def probe(self, x, side: int, tag: str, offset):
        return self._probe_fn(x, side, tag, offset)

    @classmethod
    def from_callable(cls, fn: Callable, offsets=None, tag: str = "direct", name: str = "") -> "ProbeFunction":
        """Wrap a plain function: one family per side, probed by evaluation."""
        offs = _DEFAULT_OFFSETS if offsets is None else tuple(offsets)
        return cls(
            value_fn=fn,
            families_fn=lambda x, side: {tag: offs},
            probe_fn=lambda x, side, _tag, h: fn(x + side * h),
            name=name or getattr(fn, "__name__", ""),
        )

    def __repr__(self) -> str:
        return f"ProbeFunction({self.name or 'anonymous'})"


class SampledFunction:
    """A function known only at finitely many strictly increasing abscissae.

    Between samples it reads as the straight-line interpolant, so one-sided
    sign limits are the signs of the adjacent secants: at a sample, the
    difference toward the neighbouring sample; strictly between samples,
    the slope sign of the containing interval (negated on the left side).
    """

    def __init__(self, xs: Sequence, ys: Sequence) -> None:
        xs = tuple(xs)
        ys = tuple(ys)
        if len(xs) != len(ys):
            raise ValueError(f"sample count mismatch: {len(xs)} abscissae, {len(ys)} values")
        if len(xs) < 2:
            raise ValueError(f"need at least 2 samples, got {len(xs)}")
        for a, b in zip(xs, xs[1:]):
            if not a < b:
                raise ValueError(f"sample abscissae must strictly increase, got {a} before {b}")
        self.xs = xs
        self.ys = ys

    @classmethod
    def from_csv(cls, path) -> "SampledFunction":
        """Read two unlabeled columns: abscissa, value."""
        xs, ys = [], []
        with open(path, newline="") as fh:
            for row_num, row in enumerate(csv.reader(fh)):
                if not row:
                    continue
                if len(row) != 2:
                    raise ValueError(f"sample row {row_num} needs 2 columns, got {len(row)}")
                xs.append(float(row[0]))
                ys.append(float(row[1]))
        return cls(xs, ys)

    @property
    def domain(self):
        return (self.xs[0], self.xs[-1])

    def sample_index(self, x):
        """Index of x among the samples, or None."""
        i = bisect.bisect_left(self.xs, x)
        if i < len(self.xs) and self.xs[i] == x:
            return i
        return None

    def value(self, x):
        """Straight-line interpolant value inside the sampled range."""
        if x < self.xs[0] or x > self.xs[-1]:
            raise ValueError(f"{x} outside the sampled range {self.domain}")
        i = self.sample_index(x)
        if i is not None:
            return self.ys[i]
        j = bisect.bisect_left(self.xs, x)
        x0, x1 = self.xs[j - 1], self.xs[j]
        y0, y1 = self.ys[j - 1], self.ys[j]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def one_sided_sign(self, x, side: int) -> int:
        """The settled sign of f(x + side*h) - f(x) for small h."""
        if side not in (1, -1):
            raise ValueError(f"side must be +1 or -1, got {side}")
        if x < self.xs[0] or x > self.xs[-1]:
            raise ValueError(f"{x} outside the sampled range {self.domain}")
        i = self.sample_index(x)
        if i is not None:
            j = i + (1 if side == 1 else -1)
            if j < 0 or j >= len(self.xs):
                raise ValueError(f"no samples on the {_SIDE_NAMES[side]} side of {x}")
            return sign(self.ys[j] - self.ys[i])
        j = bisect.bisect_left(self.xs, x)
        slope_sign = sign(self.ys[j] - self.ys[j - 1])
        return slope_sign if side == 1 else -slope_sign

    def nearest_samples(self, x, k: int = 16):
        """The k samples nearest x (diagnostic probe family)."""
        order = sorted(range(len(self.xs)), key=lambda i: (abs(self.xs[i] - x), self.xs[i]))
        return tuple((self.xs[i], self.ys[i]) for i in order[: max(0, k)])

    def __repr__(self) -> str:
        return f"SampledFunction({len(self.xs)} samples on [{self.xs[0]}, {self.xs[-1]}])"


_MONOTONY_TABLE = {
    (1, 0, 0, 1, 0, 0): frozenset({0}),
    (0, 0, 1, 0, 0, 1): frozenset({0}),
    (0, 0, 0, 0, 0, 0): frozenset({0}),
    (0, 0, 1, 1, 0, 0): frozenset({1}),
    (1, 0, 0, 0, 0, 1): frozenset({-1}),
}


def monotony_of(bits: Sequence[int]) -> frozenset:
    """The monotony verdict of a raw six-bit occurrence tuple.

    Both-sides-above or both-sides-below (and the degenerate all-zero row)
    give {0} (an extremum pattern); below-then-above gives {+1} (rising);
    above-then-below gives {-1} (falling); anything else gives the empty
    set.
    """
    key = tuple(int(b) for b in bits)
    if len(key) != 6 or any(b not in (0, 1) for b in key):
        raise ValueError(f"monotony needs six 0/1 bits, got {bits!r}")
    return _MONOTONY_TABLE.get(key, frozenset())


@dataclass(frozen=True)
class TendencyVector:
    """Which difference signs occur on each side of a point.

    ``bits`` holds six 0/1 flags: occurrence of +1, 0, -1 on the left
    side, then of +1, 0, -1 on the right side. Every admissible vector
    has at least one flag set per side (an approach always settles on
    some sign), which leaves 49 admissible vectors.
    """

    bits: tuple[int, int, int, int, int, int]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) != 6 or any(b not in (0, 1) for b in bits):
            raise ValueError(f"tendency vector needs six 0/1 bits, got {self.bits!r}")
        if sum(bits[:3]) == 0:
            raise ValueError("tendency vector needs at least one left-side bit")
        if sum(bits[3:]) == 0:
            raise ValueError("tendency vector needs at least one right-side bit")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_occurs(cls, minus_occurs, plus_occurs) -> "TendencyVector":
        m = set(minus_occurs)
        p = set(plus_occurs)
        return cls(
            (
                int(1 in m), int(0 in m), int(-1 in m),
                int(1 in p), int(0 in p), int(-1 in p),
            )
        )

    @property
    def left_bits(self) -> tuple[int, int, int]:
        return self.bits[:3]

    @property
    def right_bits(self) -> tuple[int, int, int]:
        return self.bits[3:]

    @property
    def monotony(self) -> frozenset:
        return monotony_of(self.bits)


@dataclass(frozen=True)
class DetachmentReport:
    """Full one-point classification from the settled signs of both sides."""

    x: object
    sup_plus: int
    inf_plus: int
    sup_minus: int
    inf_minus: int
    detachment: int | None
    signposted_detachment: int | None
    disdetachment_types: tuple[int, ...]
    null_disdetachment: bool
    tendency_vector: TendencyVector
    monotony: frozenset
    occurs_plus: tuple[int, ...]
    occurs_minus: tuple[int, ...]

    @property
    def tau(self) -> int | None:
        """Interior tendency: 0 where the sides agree, else the right sign.

        Defined only when each side settles on a single sign.
        """
        if 5 in self.disdetachment_types or 6 in self.disdetachment_types:
            return None
        return 0 if self.sup_plus == self.sup_minus else self.sup_plus


def _classify_from_occurs(x, minus_occurs, plus_occurs) -> DetachmentReport:
    plus = sorted(set(plus_occurs))
    minus = sorted(set(minus_occurs))
    sup_p, inf_p = plus[-1], plus[0]
    sup_m, inf_m = minus[-1], minus[0]
    types = []
    if sup_p != -sup_m:
        types.append(1)
    if inf_p != -inf_m:
        types.append(2)
    if sup_p != sup_m:
        types.append(3)
    if inf_p != inf_m:
        types.append(4)
    if sup_p != inf_p:
        types.append(5)
    if sup_m != inf_m:
        types.append(6)
    tset = set(types)
    detachment = sup_p if not tset & {3, 4, 5, 6} else None
    signposted = sup_p if not tset & {1, 2, 5, 6} else None
    null = (not tset & {5, 6}) and bool(tset & {3, 4}) and bool(tset & {1, 2})
    vector = TendencyVector.from_occurs(minus, plus)
    return DetachmentReport(
        x=x,
        sup_plus=sup_p,
        inf_plus=inf_p,
        sup_minus=sup_m,
        inf_minus=inf_m,
        detachment=detachment,
        signposted_detachment=signposted,
        disdetachment_types=tuple(types),
        null_disdetachment=null,
        tendency_vector=vector,
        monotony=vector.monotony,
        occurs_plus=tuple(plus),
        occurs_minus=tuple(minus),
    )


def _probe_occurs(fn: ProbeFunction, x, side: int, labeler, window, seed) -> list[int]:
    """Settled labels of the families on one side; unstable families drop out."""
    base = fn.value(x)
    stabilized = {}
    histogram = {}
    for tag, offsets in sorted(fn.families(x, side).items()):
        labels = [labeler(fn.probe(x, side, tag, h) - base) for h in offsets]
        counts: dict = {}
        for s in labels:
            counts[s] = counts.get(s, 0) + 1
        histogram[tag] = dict(sorted(counts.items()))
        settled = approx_partial_limits(labels, window=window, seed=seed)
        if len(settled) == 1:
            stabilized[tag] = next(iter(settled))
    if not stabilized:
        raise UnstableProbeError(
            f"no probe family settles on a single sign on the {_SIDE_NAMES[side]} side of {x}",
            histogram,
        )
    return sorted(set(stabilized.values()))


def _occurs_for(fn, x, side: int, labeler, window, seed) -> list[int]:
    if isinstance(fn, ProbeFunction):
        return _probe_occurs(fn, x, side, labeler, window, seed)
    if isinstance(fn, SampledFunction):
        return [fn.one_sided_sign(x, side)]
    raise TypeError(f"need a ProbeFunction or SampledFunction, got {type(fn).__name__}")


def one_sided_sign_limits(fn, x, side: int, window=DEFAULT_WINDOW, seed=None) -> tuple[int, int]:
    """(sup, inf) of the signs that one side settles into."""
    occurs = _occurs_for(fn, x, side, sign, window, seed)
    return occurs[-1], occurs[0]


def classify(fn, x, window=DEFAULT_WINDOW, seed=None) -> DetachmentReport:
    """Classify an interior point from both of its one-sided sign limits."""
    minus = _occurs_for(fn, x, -1, sign, window, seed)
    plus = _occurs_for(fn, x, 1, sign, window, seed)
    return _classify_from_occurs(x, minus, plus)


def tendency(fn, x, domain=None, window=DEFAULT_WINDOW, seed=None) -> int:
    """The tendency of f at x: 0 at agreeing sides, else the right sign.

    At the left end of the domain only the right side exists and the
    tendency is that sign; at the right end it is minus the left sign.
    Each probed side must settle on a single sign.
    """
    if domain is None and isinstance(fn, SampledFunction):
        domain = fn.domain
    if domain is not None:
        lo, hi = domain
        if not lo <= x <= hi:
            raise ValueError(f"{x} outside the domain [{lo}, {hi}]")
        if not lo < hi:
            raise ValueError(f"domain [{lo}, {hi}] has no interior")
    left_present = domain is None or x > domain[0]
    right_present = domain is None or x < domain[1]

    def settled(side: int) -> int:
        occurs = _occurs_for(fn, x, side, sign, window, seed)
        if len(occurs) != 1:
            raise ValueError(
                f"the {_SIDE_NAMES[side]} side of {x} settles on several signs {tuple(occurs)};"
                " tendency is undefined"
            )
        return occurs[0]

    if left_present and right_present:
        d_minus = settled(-1)
        d_plus = settled(1)
        return 0 if d_plus == d_minus else d_plus
    if right_present:
        return settled(1)
    return -settled(-1)


@dataclass(frozen=True)
class Extremum:
    """An interior sample that does not pass straight through its level."""

    index: int
    x: object
    kind: str
    left_sign: int
    right_sign: int


def find_extrema(fn: SampledFunction) -> list[Extremum]:
    """Interior samples where the walk fails to be strictly monotone.

    A sample passes when one neighbour sits strictly below and the other
    strictly above. Everything else is reported: a maximum when no
    neighbour is above and one is below, a minimum in the mirror case,
    and a plateau when both neighbours sit level.
    """
    out = []
    for i in range(1, len(fn.xs) - 1):
        d_left = sign(fn.ys[i - 1] - fn.ys[i])
        d_right = sign(fn.ys[i + 1] - fn.ys[i])
        if (d_left, d_right) in ((-1, 1), (1, -1)):
            continue
        if d_left <= 0 and d_right <= 0 and (d_left < 0 or d_right < 0):
            kind = "max"
        elif d_left >= 0 and d_right >= 0 and (d_left > 0 or d_right > 0):
            kind = "min"
        else:
            kind = "plateau"
        out.append(Extremum(i, fn.xs[i], kind, d_left, d_right))
    return out


STANDARD_PARTITION: dict[int, Callable] = {
    1: lambda d: d > 0,
    0: lambda d: d == 0,
    -1: lambda d: d < 0,
}


def eps_band(eps) -> dict[int, Callable]:
    """A sign partition whose zero label swallows differences within eps."""
    if not eps > 0:
        raise ValueError(f"eps_band needs a positive width, got {eps}")
    return {
        1: lambda d, e=eps: d > e,
        0: lambda d, e=eps: -e <= d <= e,
        -1: lambda d, e=eps: d < -e,
    }


def _partition_labeler(partition: Mapping[int, Callable]) -> Callable:
    labels = sorted(partition)
    if any(label not in (-1, 0, 1) for label in labels):
        raise ValueError(f"partition labels must be -1, 0, or +1, got {labels}")
    if not labels:
        raise ValueError("partition has no labels")

    def labeler(value):
        hits = [label for label in labels if partition[label](value)]
        if not hits:
            raise ValueError(f"partition does not cover difference {value!r}")
        if len(hits) > 1:
            raise ValueError(f"partition overlaps at difference {value!r}: labels {hits}")
        return hits[0]

    return labeler


def generalized_detachment(
    fn: ProbeFunction,
    x,
    partition: Mapping[int, Callable] = STANDARD_PARTITION,
    window=DEFAULT_WINDOW,
    seed=None,
) -> DetachmentReport:
    """Classify with a custom sign partition in place of the plain sign.

    The partition maps each probed difference to exactly one of the labels
    -1, 0, +1 (checked on every probe); everything downstream of the
    labeling is the ordinary classification.
    """
    if not isinstance(fn, ProbeFunction):
        raise TypeError("generalized detachment needs probe families")
    labeler = _partition_labeler(partition)
    minus = _probe_occurs(fn, x, -1, labeler, window, seed)
    plus = _probe_occurs(fn, x, 1, labeler, window, seed)
    return _classify_from_occurs(x, minus, plus)


_WEATHER_TAGS = ("above", "equal", "below")
_WEATHER_DELTAS = {"above": 1, "equal": 0, "below": -1}


def weather_vane(vector) -> ProbeFunction:
    """A probe function around 0 whose sign occurrences equal the vector.

    Each set bit becomes one approach family: probes sit above, at, or
    below the base value as the bit dictates, and the offsets 1/1, 1/2,
    1/3, ... on each side are dealt round-robin to that side's active
    families. Classifying the result at 0 returns the same vector.
    """
    if not isinstance(vector, TendencyVector):
        vector = TendencyVector(tuple(vector))
    offsets = tuple(Fraction(1, m) for m in range(1, 385))
    families: dict[int, dict[str, tuple]] = {}
    for side, bits in ((-1, vector.left_bits), (1, vector.right_bits)):
        active = [tag for tag, on in zip(_WEATHER_TAGS, bits) if on]
        dealt = {tag: [] for tag in active}
        for k, h in enumerate(offsets):
            dealt[active[k % len(active)]].append(h)
        families[side] = {
            f"{_SIDE_NAMES[side]}-{tag}": tuple(dealt[tag]) for tag in active
        }

    def probe(x, side, tag, h):
        kind = tag.rsplit("-", 1)[-1]
        return _WEATHER_DELTAS[kind] * h

    return ProbeFunction(
        value_fn=lambda x: Fraction(0),
        families_fn=lambda x, side: families[side],
        probe_fn=probe,
        name=f"weather-vane-{''.join(str(b) for b in vector.bits)}",
    )


def classify_joint(fn: SampledFunction, x) -> str:
    """How the two secants meet at a sample: none, first, second, or third.

    Slopes that agree to one part in a million are no joint at all.
    Otherwise distinct slopes of equal sign are a joint of the first kind,
    opposite nonzero signs one of the second kind, and a flat side against
    a sloped one a joint of the third kind.
    """
    if not isinstance(fn, SampledFunction):
        raise TypeError("joint classification needs a sampled function")
    i = fn.sample_index(x)
    if i is None:
        raise ValueError(f"{x} is not a sample abscissa")
    if i == 0 or i == len(fn.xs) - 1:
        raise ValueError(f"{x} is a boundary sample; a joint needs both secants")
    slope_left = (fn.ys[i] - fn.ys[i - 1]) / (fn.xs[i] - fn.xs[i - 1])
    slope_right = (fn.ys[i + 1] - fn.ys[i]) / (fn.xs[i + 1] - fn.xs[i])
    scale = max(1.0, abs(slope_left), abs(slope_right))
    if abs(slope_left - slope_right) <= 1e-6 * scale:
        return "none"
    s_left = sign(slope_left)
    s_right = sign(slope_right)
    if s_left == s_right:
        return "first"
    if s_left * s_right != 0:
        return "second"
    return "third"


def is_pseudo_continuous(
    fn: ProbeFunction,
    x,
    window=DEFAULT_WINDOW,
    seed=None,
) -> tuple[bool, bool]:
    """Whether each side's probe values crowd around the base value.

    Per side, the base value and every probed value are clustered with a
    gap tolerance of ``2 / m_max``; the side is pseudo-continuous when one
    cluster holds everything. Returns (left, right).
    """
    if not isinstance(fn, ProbeFunction):
        raise TypeError("pseudo-continuity needs probe families")
    _, m_max, _, k_max = _check_window(window)
    tolerance = Fraction(2, m_max)
    base = fn.value(x)
    verdicts = []
    for side in (-1, 1):
        values = [base]
        for tag, offsets in sorted(fn.families(x, side).items()):
            values.extend(fn.probe(x, side, tag, h) for h in offsets)
        ordered = sorted(values)
        single = all(b - a <= tolerance for a, b in zip(ordered, ordered[1:]))
        verdicts.append(single)
    return verdicts[0], verdicts[1]


# --------------------------------------------------------------------------
# Probe fixtures. Families with tags like "rational" and "irrational" model
# approaches through those sets with exact bookkeeping offsets; fixtures
# tagged "direct" really evaluate their function at the probe points.

_DEFAULT_OFFSETS = tuple(Fraction(1, m) for m in range(4, 260))


def _two_family(value_fn, rational_fn, irrational_fn, name) -> ProbeFunction:
    fams = {"rational": _DEFAULT_OFFSETS, "irrational": _DEFAULT_OFFSETS}

    def probe(x, side, tag, h):
        point = x + side * h
        return rational_fn(point) if tag == "rational" else irrational_fn(point)

    return ProbeFunction(
        value_fn=value_fn,
        families_fn=lambda x, side: fams,
        probe_fn=probe,
        name=name,
    )


def dirichlet_probe(rational_base: bool = True) -> ProbeFunction:
    """Indicator of the rationals, probed at a base point of either kind."""
    base = Fraction(1 if rational_base else 0)
    return _two_family(
        value_fn=lambda x: base,
        rational_fn=lambda p: Fraction(1),
        irrational_fn=lambda p: Fraction(0),
        name="rational-indicator" + ("" if rational_base else "-at-irrational"),
    )


def riemann_probe(base_denominator: int | None = None, denominator_cap: int = 10**4) -> ProbeFunction:
    """1/q at rationals p/q in lowest terms, 0 elsewhere.

    ``base_denominator`` q places the base point at a rational with that
    denominator; None places it at an irrational (value 0). Probe points
    along the rational family have denominators that grow with the
    approach; denominators above the cap read as 0.
    """
    if base_denominator is not None and base_denominator < 1:
        raise ValueError(f"base denominator must be positive, got {base_denominator}")
    q = base_denominator

    def probe(x, side, tag, h):
        if tag == "irrational":
            return Fraction(0)
        d = h.denominator if q is None else q * h.denominator
        return Fraction(1, d) if d <= denominator_cap else Fraction(0)

    fams = {"rational": _DEFAULT_OFFSETS, "irrational": _DEFAULT_OFFSETS}
    return ProbeFunction(
        value_fn=lambda x: Fraction(0) if q is None else Fraction(1, q),
        families_fn=lambda x, side: fams,
        probe_fn=probe,
        name=f"thomae-like-q{q or 'irr'}",
    )


def oscillating_square_probe() -> ProbeFunction:
    """Square-enveloped oscillation around 0: crests at +h^2, troughs at -h^2."""
    fams = {"crest": _DEFAULT_OFFSETS, "trough": _DEFAULT_OFFSETS}

    def probe(x, side, tag, h):
        return h * h if tag == "crest" else -h * h

    return ProbeFunction(
        value_fn=lambda x: Fraction(0),
        families_fn=lambda x, side: fams,
        probe_fn=probe,
        name="square-envelope-oscillation",
    )


def absolute_value_probe() -> ProbeFunction:
    """|t|, probed by direct evaluation."""
    return ProbeFunction.from_callable(lambda t: abs(t), name="absolute-value")


def step_probe() -> ProbeFunction:
    """0 below zero, 1 from zero on; the model jump."""
    return ProbeFunction.from_callable(
        lambda t: Fraction(1) if t >= 0 else Fraction(0), name="unit-step"
    )


def poly_rise_probe() -> ProbeFunction:
    """t^2 + t, probed by direct evaluation; turns at t = -1/2."""
    return ProbeFunction.from_callable(lambda t: t * t + t, name="square-plus-identity")


def tangent_like_probe() -> ProbeFunction:
    """t^3 + t: strictly rising everywhere, so signposted at every point."""
    return ProbeFunction.from_callable(lambda t: t * t * t + t, name="strictly-rising-cubic")


def reciprocal_pair_probe() -> ProbeFunction:
    """1/t along the rationals, -1/t off them (for positive rational bases)."""

    def value(x):
        if x <= 0:
            raise ValueError(f"this fixture wants a positive base point, got {x}")
        return Fraction(1) / x

    return _two_family(
        value_fn=value,
        rational_fn=lambda p: Fraction(1) / p,
        irrational_fn=lambda p: Fraction(-1) / p,
        name="reciprocal-sign-split",
    )


def integer_indicator_probe() -> ProbeFunction:
    """1 on the integers, 0 elsewhere, probed by direct evaluation."""
    return ProbeFunction.from_callable(
        lambda t: Fraction(1) if Fraction(t).denominator == 1 else Fraction(0),
        name="integer-indicator",
    )


def rational_shift_probe() -> ProbeFunction:
    """t + 1/4 on the rationals, t - 1/4 off them (rational base points)."""
    quarter = Fraction(1, 4)
    return _two_family(
        value_fn=lambda x: x + quarter,
        rational_fn=lambda p: p + quarter,
        irrational_fn=lambda p: p - quarter,
        name="split-shift",
    )
