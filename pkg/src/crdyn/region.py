"""Exact 1-D sets over the rationals.

Everything here is a finite union of closed intervals (possibly degenerate)
with Fraction endpoints.  All predicates are decided exactly; no floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Piece = tuple[Fraction, Fraction]  # closed interval, lo <= hi; lo == hi is a point


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _canonical(pieces: Iterable[Piece]) -> tuple[Piece, ...]:
    """Sort, drop empties, merge overlapping or touching closed intervals."""
    items = sorted((lo, hi) for lo, hi in pieces if lo <= hi)
    merged: list[Piece] = []
    for lo, hi in items:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return tuple(merged)


class Region1D:
    """Canonical finite union of disjoint closed rational intervals and points."""

    __slots__ = ("pieces",)

    def __init__(self, pieces: Iterable[Piece] = ()):
        norm = []
        for lo, hi in pieces:
            lo = _as_fraction(lo)
            hi = _as_fraction(hi)
            norm.append((lo, hi))
        object.__setattr__(self, "pieces", _canonical(norm))

    def __setattr__(self, *a):
        raise AttributeError("Region1D is immutable")

    @staticmethod
    def empty() -> "Region1D":
        return Region1D(())

    @staticmethod
    def point(x) -> "Region1D":
        x = _as_fraction(x)
        return Region1D(((x, x),))

    @staticmethod
    def interval(lo, hi) -> "Region1D":
        return Region1D(((_as_fraction(lo), _as_fraction(hi)),))

    @staticmethod
    def from_points(points: Iterable) -> "Region1D":
        return Region1D(tuple((_as_fraction(p), _as_fraction(p)) for p in points))

    def __eq__(self, other) -> bool:
        return isinstance(other, Region1D) and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash(self.pieces)

    def __repr__(self) -> str:
        def fmt(piece):
            lo, hi = piece
            return f"{{{lo}}}" if lo == hi else f"[{lo},{hi}]"

        body = " u ".join(fmt(p) for p in self.pieces) if self.pieces else "empty"
        return f"Region1D({body})"

    def is_empty(self) -> bool:
        return not self.pieces

    def union(self, other: "Region1D") -> "Region1D":
        return Region1D(self.pieces + other.pieces)

    def intersect(self, other: "Region1D") -> "Region1D":
        out: list[Piece] = []
        for alo, ahi in self.pieces:
            for blo, bhi in other.pieces:
                lo, hi = max(alo, blo), min(ahi, bhi)
                if lo <= hi:
                    out.append((lo, hi))
        return Region1D(out)

    def contains_point(self, x) -> bool:
        x = _as_fraction(x)
        return any(lo <= x <= hi for lo, hi in self.pieces)

    def contains_region(self, other: "Region1D") -> bool:
        return other.intersect(self) == other

    def intersects(self, other: "Region1D") -> bool:
        return not self.intersect(other).is_empty()

    def intersects_open_interval(self, lo, hi) -> bool:
        """True when the region meets the OPEN interval (lo, hi)."""
        lo = _as_fraction(lo)
        hi = _as_fraction(hi)
        if lo >= hi:
            return False
        return any(phi > lo and plo < hi for plo, phi in self.pieces)

    def isolated_points(self) -> tuple[Fraction, ...]:
        return tuple(lo for lo, hi in self.pieces if lo == hi)

    def proper_intervals(self) -> tuple[Piece, ...]:
        return tuple(p for p in self.pieces if p[0] < p[1])

    def total_point_count(self) -> int | None:
        """Number of elements when the region is finite, else None."""
        if any(lo < hi for lo, hi in self.pieces):
            return None
        return len(self.pieces)

    def distance_to(self, x) -> Fraction | None:
        """Exact distance from the number x to the region; None when empty."""
        x = _as_fraction(x)
        if not self.pieces:
            return None
        best: Fraction | None = None
        for lo, hi in self.pieces:
            if lo <= x <= hi:
                return Fraction(0)
            d = lo - x if x < lo else x - hi
            if best is None or d < best:
                best = d
        return best


class Space1D:
    """A compact subset of the line: disjoint closed intervals plus isolated points.

    The listed isolated points are exactly the topologically isolated points;
    interval endpoints are not isolated.
    """

    __slots__ = ("intervals", "isolated")

    def __init__(self, intervals: Sequence = (), isolated: Sequence = ()):
        norm_iv = []
        for lo, hi in intervals:
            lo, hi = _as_fraction(lo), _as_fraction(hi)
            if lo > hi:
                raise ValueError(f"interval bounds out of order: [{lo},{hi}]")
            norm_iv.append((lo, hi))
        pts = sorted(_as_fraction(p) for p in isolated)
        # degenerate intervals are isolated points topologically
        real_iv = [p for p in norm_iv if p[0] < p[1]]
        pts = sorted(set(pts) | {p[0] for p in norm_iv if p[0] == p[1]})
        merged = _canonical(real_iv)
        if len(merged) != len(real_iv):
            raise ValueError("space intervals overlap or touch")
        for p in pts:
            if any(lo <= p <= hi for lo, hi in merged):
                raise ValueError(f"isolated point {p} lies inside an interval")
        if not merged and not pts:
            raise ValueError("space must be non-empty")
        object.__setattr__(self, "intervals", merged)
        object.__setattr__(self, "isolated", tuple(pts))

    def __setattr__(self, *a):
        raise AttributeError("Space1D is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Space1D)
            and self.intervals == other.intervals
            and self.isolated == other.isolated
        )

    def __hash__(self) -> int:
        return hash((self.intervals, self.isolated))

    def __repr__(self) -> str:
        parts = [f"[{lo},{hi}]" for lo, hi in self.intervals]
        parts += [f"{{{p}}}" for p in self.isolated]
        return "Space1D(" + " u ".join(parts) + ")"

    def region(self) -> Region1D:
        return Region1D(self.intervals + tuple((p, p) for p in self.isolated))

    def contains_point(self, x) -> bool:
        return self.region().contains_point(x)

    def contains_region(self, r: Region1D) -> bool:
        return self.region().contains_region(r)


def eps_dense(space: Space1D, covered: Region1D, eps) -> bool:
    """Decide whether every point of the space is within eps of the region.

    Exact: the farthest point of a space component from `covered` is either a
    component endpoint or the midpoint of a gap between consecutive pieces of
    `covered`, so only finitely many rational candidates need checking.  The
    scan is kept linear in the number of covered pieces.
    """
    import bisect

    eps = _as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if covered.is_empty():
        return False
    pieces = covered.pieces
    starts = [p[0] for p in pieces]

    def dist(x: Fraction) -> Fraction:
        i = bisect.bisect_right(starts, x) - 1
        best = None
        if i >= 0:
            plo, phi = pieces[i]
            if x <= phi:
                return Fraction(0)
            best = x - phi
        if i + 1 < len(pieces):
            d = pieces[i + 1][0] - x
            if best is None or d < best:
                best = d
        assert best is not None
        return best

    for lo, hi in space.intervals + tuple((p, p) for p in space.isolated):
        if dist(lo) > eps or dist(hi) > eps:
            return False
        # gap midpoints strictly inside [lo, hi]
        j = max(bisect.bisect_right(starts, lo) - 1, 0)
        while j + 1 < len(pieces):
            phi = pieces[j][1]
            if phi >= hi:
                break
            qlo = pieces[j + 1][0]
            mid = (phi + qlo) / 2
            if lo <= mid <= hi and mid - phi > eps:
                return False
            j += 1
    return True


def grid_cells(space: Space1D, delta) -> list[Piece]:
    """Closed cells of width <= delta covering the space, ascending.

    Each space interval is cut into equal cells; each isolated point becomes a
    degenerate cell.
    """
    delta = _as_fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    cells: list[Piece] = []
    for lo, hi in space.intervals:
        width = hi - lo
        k = -((-width) // delta)  # ceil(width / delta)
        k = max(int(k), 1)
        step = width / k
        for i in range(k):
            cells.append((lo + i * step, lo + (i + 1) * step))
    for p in space.isolated:
        cells.append((p, p))
    cells.sort()
    return cells


def format_fraction(x: Fraction) -> str:
    """Canonical text form: plain integer when the denominator is 1."""
    x = _as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text) -> Fraction:
    """Accept an int, or a 'p/q' / integer string; reject floats."""
    if isinstance(text, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {text!r}") from exc
    raise ValueError(f"rationals must be integers or 'p/q' strings, got {text!r}")
