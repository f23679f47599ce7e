"""Piecewise-linear map graphs and surrogate dense-orbit points.

The tent family and the staircase approximations cover every figure-style
relation this library ships.  True transitive points of these maps are
irrational and not finitely representable, so gallery instances use dyadic
surrogates: points whose finite orbit prefix provably hits every eps-cell of
the target interval.  A surrogate certifies exactly that prefix fact and
nothing more.
"""

from __future__ import annotations

from fractions import Fraction

from .classify import BudgetExceededError
from .region import Region1D, Space1D, _as_fraction, eps_dense, grid_cells
from .symbolic import Segment

F = Fraction


def tent_map_graph() -> list[Segment]:
    """Graph of the full tent map on [0,1]."""
    return [Segment(0, 0, F(1, 2), 1), Segment(F(1, 2), 1, 1, 0)]


def left_half_tent_graph() -> list[Segment]:
    """Tent-like map of [0,1/2] onto itself (2t, then 1-2t)."""
    return [Segment(0, 0, F(1, 4), F(1, 2)), Segment(F(1, 4), F(1, 2), F(1, 2), 0)]


def right_half_tent_graph() -> list[Segment]:
    """Tent-like map of [1/2,1] onto itself (2t-1/2, then 5/2-2t)."""
    return [Segment(F(1, 2), F(1, 2), F(3, 4), 1), Segment(F(3, 4), 1, 1, F(1, 2))]


def cantor_stage_intervals(level: int) -> list[tuple[Fraction, Fraction]]:
    """The 2^level closed intervals of the level-th Cantor construction stage."""
    if level < 0:
        raise ValueError("level must be non-negative")
    intervals = [(F(0), F(1))]
    for _ in range(level):
        nxt = []
        for a, b in intervals:
            third = (b - a) / 3
            nxt.append((a, a + third))
            nxt.append((b - third, b))
        intervals = nxt
    return intervals


def cantor_staircase(level: int) -> list[Segment]:
    """Level-n piecewise-linear approximation of the devil's staircase.

    Ramps rise over the 2^n stage intervals; flats join them over the removed
    gaps.  This approximates the true Cantor function (which is not a finite
    union of segments) and converges to it as the level grows.
    """
    stages = cantor_stage_intervals(level)
    n = len(stages)
    segments: list[Segment] = []
    for k, (a, b) in enumerate(stages):
        y0 = F(k, n)
        y1 = F(k + 1, n)
        segments.append(Segment(a, y0, b, y1))
        if k + 1 < n:
            na, _ = stages[k + 1]
            segments.append(Segment(b, y1, na, y1))
    return segments


def map_value(segments: list[Segment], t) -> Fraction:
    """Evaluate a single-valued piecewise-linear graph at t."""
    t = _as_fraction(t)
    values = set()
    for seg in segments:
        lo, hi = seg.x_extent()
        if lo <= t <= hi:
            if seg.x1 == seg.x2:
                raise ValueError("vertical segment: not a function graph")
            slope = (seg.y2 - seg.y1) / (seg.x2 - seg.x1)
            values.add(seg.y1 + (t - seg.x1) * slope)
    if len(values) != 1:
        raise ValueError(f"map is not single-valued at {t}: {sorted(values)}")
    return values.pop()


def forward_orbit(segments: list[Segment], start, steps: int) -> list[Fraction]:
    """[start, f(start), ..., f^steps(start)] for a single-valued graph."""
    orbit = [_as_fraction(start)]
    for _ in range(steps):
        orbit.append(map_value(segments, orbit[-1]))
    return orbit


def map_preimages(segments: list[Segment], y) -> list[Fraction]:
    """All exact t with f(t) = y, by solving each linear piece."""
    y = _as_fraction(y)
    out = set()
    for seg in segments:
        ylo, yhi = seg.y_extent()
        if not ylo <= y <= yhi:
            continue
        if seg.y1 == seg.y2:
            raise ValueError("map has a flat piece at this value; preimages are not finite")
        t = seg.x1 + (y - seg.y1) * (seg.x2 - seg.x1) / (seg.y2 - seg.y1)
        out.add(t)
    return sorted(out)


def density_threshold_steps(
    lo,
    hi,
    step_batches: list[list[Fraction]],
    eps_values: list[Fraction],
) -> dict[Fraction, int | None]:
    """First step index at which the accumulated points are eps-dense in [lo, hi].

    step_batches[n] lists the points added at step n.  Returns, per eps, the
    least n whose cumulative point set has covering radius <= eps (None when
    never reached).  Incremental: a sorted list plus a lazy max-gap heap keep
    the whole scan near-linear even for thousands of exact rational points.
    """
    import bisect
    import heapq

    lo, hi = _as_fraction(lo), _as_fraction(hi)
    eps_values = sorted((_as_fraction(e) for e in eps_values), reverse=True)
    out: dict[Fraction, int | None] = {e: None for e in eps_values}
    pending = list(eps_values)  # descending; satisfied in order
    xs: list[Fraction] = []
    next_of: dict[Fraction, Fraction] = {}
    gap_heap: list[tuple[Fraction, Fraction, Fraction]] = []

    def covering_radius() -> Fraction | None:
        if not xs:
            return None
        best_gap = Fraction(0)
        while gap_heap:
            neg, a, b = gap_heap[0]
            if next_of.get(a) == b:
                best_gap = -neg
                break
            heapq.heappop(gap_heap)
        return max(xs[0] - lo, hi - xs[-1], best_gap / 2)

    for n, batch in enumerate(step_batches):
        for v in batch:
            v = _as_fraction(v)
            if not lo <= v <= hi:
                continue
            i = bisect.bisect_left(xs, v)
            if i < len(xs) and xs[i] == v:
                continue
            left = xs[i - 1] if i > 0 else None
            right = xs[i] if i < len(xs) else None
            xs.insert(i, v)
            if left is not None and right is not None:
                del next_of[left]
            if left is not None:
                next_of[left] = v
                heapq.heappush(gap_heap, (-(v - left), left, v))
            if right is not None:
                next_of[v] = right
                heapq.heappush(gap_heap, (-(right - v), v, right))
        radius = covering_radius()
        while pending and radius is not None and radius <= pending[0]:
            out[pending[0]] = n
            pending.pop(0)
        if not pending:
            break
    return out


def _backward_path_into(
    segments: list[Segment],
    w: Fraction,
    lo: Fraction,
    hi: Fraction,
    cell: tuple[Fraction, Fraction],
    max_depth: int,
) -> list[Fraction] | None:
    """Shortest preimage chain from w landing inside `cell`, or None.

    Chains [p1, p2, ..., pk] satisfy f(p1) = w and f(p_{i+1}) = p_i, so
    appending one to a backward chain keeps it a valid backward orbit.
    """
    a, b = cell
    frontier: list[tuple[Fraction, list[Fraction]]] = [(w, [])]
    for _ in range(max_depth):
        nxt: list[tuple[Fraction, list[Fraction]]] = []
        for v, path in frontier:
            for p in map_preimages(segments, v):
                if not lo <= p <= hi:
                    continue
                new_path = path + [p]
                if a <= p <= b:
                    return new_path
                nxt.append((p, new_path))
        frontier = nxt
        if not frontier:
            return None
    return None


def dense_prefix_point(
    segments: list[Segment],
    target: tuple,
    eps,
    horizon: int,
    min_denominator_bits: int = 360,
    attempts: int = 64,
    seed: int = 1,
) -> Fraction:
    """A dyadic point whose first `horizon` iterates hit every eps-cell of target.

    Built backward from a fine dyadic seed: at each step the exact preimage
    hitting a still-unhit cell is preferred; when neither branch is fresh, a
    short targeted preimage chain jumps into the farthest unhit cell.  The
    candidate's forward orbit is then re-verified cell by cell, so the return
    value carries a checked guarantee: its length-`horizon` orbit prefix is
    eps-dense in the target interval.  Denominators start huge so the forward
    orbit stays clear of finitely representable fold points well past the
    prefix.

    Raises BudgetExceededError when no candidate works within the budget;
    this generator does NOT claim to produce a true transitive point.
    """
    import random as _random

    eps = _as_fraction(eps)
    lo, hi = _as_fraction(target[0]), _as_fraction(target[1])
    if lo >= hi:
        raise ValueError("target must be a proper interval")
    space = Space1D(intervals=[(lo, hi)])
    cells = grid_cells(space, eps)
    if len(cells) > horizon + 1:
        raise BudgetExceededError(
            f"{len(cells)} cells cannot be hit by {horizon + 1} orbit points"
        )
    jump_depth = max(2, len(cells).bit_length() + 3)
    width = (hi - lo) / len(cells)  # grid_cells cuts one interval evenly

    def cell_of(v: Fraction) -> int:
        i = int((v - lo) / width)
        return min(max(i, 0), len(cells) - 1)

    def cell_hits(v: Fraction, unhit: set[int]) -> list[int]:
        i = cell_of(v)
        out = [j for j in (i - 1, i, i + 1) if j in unhit and cells[j][0] <= v <= cells[j][1]]
        return out

    bits = min_denominator_bits + horizon

    for attempt in range(attempts):
        rng = _random.Random((seed << 16) + attempt)
        numerator = rng.getrandbits(bits) | 1
        z = lo + (hi - lo) * F(numerator, 2**bits)
        if not lo < z < hi:
            continue
        chain = [z]
        unhit = set(range(len(cells)))
        for i in cell_hits(z, unhit):
            unhit.discard(i)
        failed = False
        while unhit and len(chain) - 1 < horizon:
            try:
                pres = [p for p in map_preimages(segments, chain[-1]) if lo <= p <= hi]
            except ValueError:
                failed = True
                break
            if not pres:
                failed = True
                break
            scored = sorted(
                ((-len(cell_hits(p, unhit)), p) for p in pres),
            )
            gain, best = scored[0]
            if gain < 0:
                chain.append(best)
                for i in cell_hits(best, unhit):
                    unhit.discard(i)
                continue
            # no fresh cell in reach: jump into the unhit cell farthest from here
            here = cell_of(chain[-1])
            far = max(unhit, key=lambda i: (abs(i - here), -i))
            path = _backward_path_into(segments, chain[-1], lo, hi, cells[far], jump_depth)
            if path is None or len(chain) - 1 + len(path) > horizon:
                failed = True
                break
            for p in path:
                chain.append(p)
                for i in cell_hits(p, unhit):
                    unhit.discard(i)
        if failed or unhit:
            continue
        candidate = chain[-1]
        # verify the forward prefix independently of the construction
        orbit = forward_orbit(segments, candidate, horizon)
        region = Region1D.from_points(orbit)
        hit = set()
        for v in orbit:
            i = cell_of(v)
            for j in (i - 1, i, i + 1):
                if 0 <= j < len(cells) and cells[j][0] <= v <= cells[j][1]:
                    hit.add(j)
        if len(hit) == len(cells) and eps_dense(space, region, eps):
            return candidate
    raise BudgetExceededError(
        f"no eps-dense prefix point found in {attempts} attempts"
    )
