"""Dimension-1 realizations with exact rational endpoints.

Every coordinate is a fractions.Fraction, so membership of elementary
pieces, atom equality and the epsilon-transformations below are decided
exactly; introducing floats anywhere here would corrupt the derived code.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from ncode.codes import Code, maximal_codewords


class Mode(enum.Enum):
    OPEN = "open"
    CLOSED = "closed"
    CONVEX = "convex"


class RealizationError(ValueError):
    """Realization violates a structural invariant."""


RationalLike = Union[int, str, Fraction]


def _frac(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Interval1D:
    """Interval with per-endpoint closure flags; a == b only when closed."""

    a: Fraction
    b: Fraction
    left_closed: bool
    right_closed: bool

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))
        if self.a > self.b:
            raise RealizationError(f"interval endpoints out of order: {self}")
        if self.a == self.b and not (self.left_closed and self.right_closed):
            raise RealizationError("a degenerate interval must be a closed point")

    @classmethod
    def open(cls, a: RationalLike, b: RationalLike) -> "Interval1D":
        return cls(_frac(a), _frac(b), False, False)

    @classmethod
    def closed(cls, a: RationalLike, b: RationalLike) -> "Interval1D":
        return cls(_frac(a), _frac(b), True, True)

    @classmethod
    def point(cls, x: RationalLike) -> "Interval1D":
        return cls(_frac(x), _frac(x), True, True)

    @property
    def is_singleton(self) -> bool:
        return self.a == self.b

    @property
    def length(self) -> Fraction:
        return self.b - self.a

    def contains_point(self, x: Fraction) -> bool:
        if self.a < x < self.b:
            return True
        if x == self.a and self.left_closed:
            return True
        if x == self.b and self.right_closed:
            return True
        return False

    def covers_span(self, lo: Fraction, hi: Fraction) -> bool:
        """Whether the open span (lo, hi) lies inside this interval.

        Valid when no endpoint of any interval lies strictly inside
        (lo, hi), which holds for gaps between consecutive endpoint values.
        """
        return self.a <= lo and hi <= self.b

    def __str__(self) -> str:
        lb = "[" if self.left_closed else "("
        rb = "]" if self.right_closed else ")"
        return f"{lb}{self.a}, {self.b}{rb}"


@dataclass(frozen=True)
class Realization1D:
    """n receptive sets on the line; None marks an empty receptive set."""

    n: int
    intervals: tuple[Optional[Interval1D], ...]
    mode: Mode

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(self.intervals))
        if len(self.intervals) != self.n:
            raise RealizationError(
                f"expected {self.n} intervals, got {len(self.intervals)}"
            )

    def validate(self) -> None:
        for idx, iv in enumerate(self.intervals, start=1):
            if iv is None:
                continue
            if self.mode is Mode.OPEN:
                if iv.left_closed or iv.right_closed or iv.is_singleton:
                    raise RealizationError(
                        f"interval {idx} is not an open interval: {iv}"
                    )
            elif self.mode is Mode.CLOSED:
                if not (iv.left_closed and iv.right_closed):
                    raise RealizationError(
                        f"interval {idx} is not a closed interval: {iv}"
                    )

    def present(self) -> list[tuple[int, Interval1D]]:
        """(index, interval) pairs for the non-empty receptive sets, 0-based."""
        return [(i, iv) for i, iv in enumerate(self.intervals) if iv is not None]

    def replace(self, idx: int, iv: Optional[Interval1D]) -> "Realization1D":
        items = list(self.intervals)
        items[idx] = iv
        return Realization1D(self.n, tuple(items), self.mode)

    def with_mode(self, mode: Mode) -> "Realization1D":
        return Realization1D(self.n, self.intervals, mode)


# ---------------------------------------------------------------------------
# elementary pieces, derived code, atoms


def _endpoint_values(real: Realization1D) -> list[Fraction]:
    vals = set()
    for _, iv in real.present():
        vals.add(iv.a)
        vals.add(iv.b)
    return sorted(vals)


def pieces(real: Realization1D) -> Iterator[tuple[Interval1D, int]]:
    """Elementary pieces (points and gaps) with their membership masks.

    The pieces partition the convex hull of all endpoints; together the
    non-zero-mask pieces partition the union of the receptive sets.
    """
    real.validate()
    present = real.present()
    vals = _endpoint_values(real)
    for t, v in enumerate(vals):
        mask = 0
        for i, iv in present:
            if iv.contains_point(v):
                mask |= 1 << i
        yield Interval1D.point(v), mask
        if t + 1 < len(vals):
            hi = vals[t + 1]
            gmask = 0
            for i, iv in present:
                if iv.covers_span(v, hi):
                    gmask |= 1 << i
            yield Interval1D(v, hi, False, False), gmask


def code_of(real: Realization1D) -> Code:
    """The code read off a realization: non-empty membership patterns.

    Words come out mask-ascending.  A realization whose receptive sets are
    all empty codes exactly the empty codeword, returned as a one-word code.
    """
    masks = sorted({mask for _, mask in pieces(real) if mask})
    if not masks:
        return Code(real.n, [0])
    return Code(real.n, masks)


@dataclass(frozen=True)
class AtomTable:
    """Disjoint pieces per codeword; keys are exactly the derived code."""

    n: int
    entries: dict[int, tuple[Interval1D, ...]]

    def words(self) -> list[int]:
        return sorted(self.entries)

    def merged(self, word: int) -> list[Interval1D]:
        return merge_pieces(self.entries[word])


def atoms(real: Realization1D) -> AtomTable:
    table: dict[int, list[Interval1D]] = {}
    for piece, mask in pieces(real):
        if mask:
            table.setdefault(mask, []).append(piece)
    return AtomTable(real.n, {w: tuple(ps) for w, ps in table.items()})


def merge_pieces(ps: Sequence[Interval1D]) -> list[Interval1D]:
    """Normalize a disjoint piece list into maximal intervals.

    Adjacent pieces fuse when they share an endpoint and at least one side
    reaches it (e.g. {v} followed by (v, w)); overlaps cannot occur for
    atom pieces.
    """
    out: list[Interval1D] = []
    for p in sorted(ps, key=lambda q: (q.a, q.b)):
        if out:
            last = out[-1]
            if last.b == p.a and (last.right_closed or p.left_closed):
                out[-1] = Interval1D(
                    last.a, p.b, last.left_closed, p.right_closed
                )
                continue
        out.append(p)
    return out


def check_maximal_atoms(real: Realization1D) -> bool:
    """Whether each maximal codeword's atom equals the full intersection of
    its receptive sets (as exact point sets)."""
    table = atoms(real)
    words = table.words()
    if not words:
        return True
    code = Code(real.n, words)
    for tau in maximal_codewords(code).words:
        inter = _intersection(real, tau)
        if inter is None:
            return False
        if table.merged(tau) != [inter]:
            return False
    return True


def _intersection(real: Realization1D, word: int) -> Optional[Interval1D]:
    """Exact intersection of the receptive sets named by `word`."""
    chosen = [
        real.intervals[i] for i in range(real.n) if word >> i & 1
    ]
    if any(iv is None for iv in chosen) or not chosen:
        return None
    lo = max(iv.a for iv in chosen)
    hi = min(iv.b for iv in chosen)
    lo_closed = all(iv.left_closed for iv in chosen if iv.a == lo)
    hi_closed = all(iv.right_closed for iv in chosen if iv.b == hi)
    if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
        return None
    return Interval1D(lo, hi, lo_closed, hi_closed)


# ---------------------------------------------------------------------------
# epsilon distance and the code-preserving transformations


def epsilon_distance(
    real: Realization1D, include_self: bool = False
) -> Union[Fraction, float]:
    """Minimum distance between a right endpoint and a left endpoint.

    Self-pairs (an interval's own length) are excluded by default; pass
    include_self=True for the variant that counts them.  With fewer than
    two intervals and self-pairs excluded there is no pair at all and
    math.inf is returned.
    """
    present = real.present()
    best: Optional[Fraction] = None
    for i, iv in present:
        for j, jv in present:
            if i == j and not include_self:
                continue
            d = abs(iv.b - jv.a)
            if best is None or d < best:
                best = d
    return best if best is not None else math.inf


def _conversion_epsilon(real: Realization1D) -> Fraction:
    """Shrink/grow margin for the open<->closed conversions.

    The minimum runs over all right-left endpoint distances including each
    interval's own length, so the margin never exceeds the shortest
    interval; a single-interval realization falls back to min(1, length).
    """
    eps = epsilon_distance(real, include_self=False)
    candidates = [iv.length for _, iv in real.present()]
    if eps is not math.inf:
        candidates.append(eps)
    else:
        candidates.append(Fraction(1))
    return min(candidates)


def _coincidence_points(real: Realization1D) -> list[Fraction]:
    """Values where some interval ends exactly where another begins."""
    present = real.present()
    rights = {}
    lefts = {}
    for i, iv in present:
        rights.setdefault(iv.b, set()).add(i)
        lefts.setdefault(iv.a, set()).add(i)
    points = []
    for v, ends in rights.items():
        starts = lefts.get(v, set())
        # starts and ends are disjoint once singletons are gone, so any
        # start meeting an end is a genuine two-interval coincidence
        if starts - ends:
            points.append(v)
    return sorted(points)


def _delta_below(real: Realization1D, point: Fraction, shrinking: Interval1D) -> Fraction:
    """Half the gap from `point` down to the nearest endpoint below it."""
    below = [v for v in _endpoint_values(real) if v < point]
    if below:
        return (point - max(below)) / 2
    # no witness below: any positive shrink smaller than the interval works
    return shrinking.length / 4


def normalize_open_epsilon(real: Realization1D) -> Realization1D:
    """Shrink right endpoints so no right endpoint meets a left endpoint.

    Preserves the derived code; the result has positive epsilon distance.
    """
    if real.mode is not Mode.OPEN:
        raise RealizationError("normalize_open_epsilon expects an open realization")
    real.validate()
    points = _coincidence_points(real)
    if not points:
        return real
    out = list(real.intervals)
    for p in points:
        for i, iv in real.present():
            if iv.b == p:
                delta = _delta_below(real, p, iv)
                out[i] = Interval1D(iv.a, iv.b - delta, False, False)
    return Realization1D(real.n, tuple(out), Mode.OPEN)


def desingularize_closed(real: Realization1D) -> Realization1D:
    """Replace singleton receptive sets by short closed intervals.

    Case split on how the singleton sits against the other intervals:
    interior or isolated points widen symmetrically; a point on nested
    right (left) boundaries grows left (right); a pinch point between
    abutting intervals grows left together with every interval that starts
    there.  The derived code is unchanged.
    """
    if real.mode is not Mode.CLOSED:
        raise RealizationError("desingularize_closed expects a closed realization")
    real.validate()
    current = real
    while True:
        singles = [
            (i, iv) for i, iv in current.present() if iv.is_singleton
        ]
        if not singles:
            return current
        j, sj = singles[0]
        x = sj.a
        current = _fix_singleton(current, x)


def _fix_singleton(real: Realization1D, x: Fraction) -> Realization1D:
    present = real.present()
    fix_set = [i for i, iv in present if iv.is_singleton and iv.a == x]
    left_touch = [
        i for i, iv in present if not iv.is_singleton and iv.b == x
    ]
    right_touch = [
        i for i, iv in present if not iv.is_singleton and iv.a == x
    ]
    values = _endpoint_values(real)
    below = [v for v in values if v < x]
    above = [v for v in values if v > x]
    out = list(real.intervals)

    if not left_touch and not right_touch:
        near = [abs(v - x) for v in values if v != x]
        delta = min(near) / 2 if near else Fraction(1, 2)
        for i in fix_set:
            out[i] = Interval1D.closed(x - delta, x + delta)
    elif left_touch and right_touch:
        delta = (x - max(below)) / 2
        for i in right_touch:
            iv = real.intervals[i]
            out[i] = Interval1D.closed(x - delta, iv.b)
        for i in fix_set:
            out[i] = Interval1D.closed(x - delta, x)
    elif left_touch:
        delta = (x - max(below)) / 2
        for i in fix_set:
            out[i] = Interval1D.closed(x - delta, x)
    else:
        delta = (min(above) - x) / 2
        for i in fix_set:
            out[i] = Interval1D.closed(x, x + delta)
    return Realization1D(real.n, tuple(out), Mode.CLOSED)


def normalize_closed_epsilon(real: Realization1D) -> Realization1D:
    """Remove singletons, then pull left endpoints off coinciding right ones.

    Preserves the derived code; the result has positive epsilon distance.
    """
    if real.mode is not Mode.CLOSED:
        raise RealizationError(
            "normalize_closed_epsilon expects a closed realization"
        )
    current = desingularize_closed(real)
    points = _coincidence_points(current)
    if not points:
        return current
    out = list(current.intervals)
    for p in points:
        for j, jv in current.present():
            if jv.a == p and any(
                i != j and iv.b == p for i, iv in current.present()
            ):
                delta = _delta_below(current, p, jv)
                out[j] = Interval1D.closed(jv.a - delta, jv.b)
    return Realization1D(current.n, tuple(out), Mode.CLOSED)


def open_to_closed(real: Realization1D) -> Realization1D:
    """Closed realization of the same code: pull each end in by a third of
    the (positive) epsilon margin."""
    if real.mode is not Mode.OPEN:
        raise RealizationError("open_to_closed expects an open realization")
    norm = normalize_open_epsilon(real)
    eps = _conversion_epsilon(norm)
    out: list[Optional[Interval1D]] = []
    for iv in norm.intervals:
        if iv is None:
            out.append(None)
            continue
        a = iv.a + eps / 3
        b = iv.b - eps / 3
        assert a < b, "normalization left an interval shorter than 2/3 epsilon"
        out.append(Interval1D.closed(a, b))
    return Realization1D(norm.n, tuple(out), Mode.CLOSED)


def closed_to_open(real: Realization1D) -> Realization1D:
    """Open realization of the same code: push each end out by a third of
    the (positive) epsilon margin, after removing singletons."""
    if real.mode is not Mode.CLOSED:
        raise RealizationError("closed_to_open expects a closed realization")
    norm = normalize_closed_epsilon(real)
    eps = _conversion_epsilon(norm)
    out: list[Optional[Interval1D]] = []
    for iv in norm.intervals:
        if iv is None:
            out.append(None)
            continue
        out.append(Interval1D.open(iv.a - eps / 3, iv.b + eps / 3))
    return Realization1D(norm.n, tuple(out), Mode.OPEN)


# ---------------------------------------------------------------------------
# JSON form


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def realization_to_json_dict(real: Realization1D) -> dict:
    items: list = []
    for iv in real.intervals:
        if iv is None:
            items.append("empty")
        else:
            items.append(
                {
                    "a": _frac_str(iv.a),
                    "b": _frac_str(iv.b),
                    "lc": iv.left_closed,
                    "rc": iv.right_closed,
                }
            )
    return {"n": real.n, "mode": real.mode.value, "intervals": items}


def realization_from_json_dict(obj: dict) -> Realization1D:
    try:
        n = int(obj["n"])
        mode = Mode(obj["mode"])
        items = obj["intervals"]
    except (KeyError, ValueError, TypeError) as e:
        raise RealizationError(f"bad realization JSON: {e}")
    intervals: list[Optional[Interval1D]] = []
    for item in items:
        if item == "empty":
            intervals.append(None)
        else:
            intervals.append(
                Interval1D(
                    Fraction(item["a"]),
                    Fraction(item["b"]),
                    bool(item["lc"]),
                    bool(item["rc"]),
                )
            )
    real = Realization1D(n, tuple(intervals), mode)
    real.validate()
    return real
