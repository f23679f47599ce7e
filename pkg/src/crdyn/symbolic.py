"""Exact relations on unions of rational intervals plus isolated points.

A relation is a finite set of planar primitives: line segments (vertical ones
encode set-valued columns) and single points, all with Fraction coordinates.
Images, preimages, reach sets, projections, grid discretizations, and the
bounded walk searches are computed exactly; when a question cannot be decided
at a finite horizon the answer says so instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .classify import BudgetExceededError, Certainty
from .density import EpsNet
from .finite import FiniteRelation, FiniteSpace
from .region import (
    Region1D,
    Space1D,
    _as_fraction,
    eps_dense,
    grid_cells,
)


@dataclass(frozen=True)
class Segment:
    """Closed planar segment; may be vertical, horizontal, or sloped."""

    x1: Fraction
    y1: Fraction
    x2: Fraction
    y2: Fraction

    def __post_init__(self):
        for f in ("x1", "y1", "x2", "y2"):
            object.__setattr__(self, f, _as_fraction(getattr(self, f)))
        if (self.x1, self.y1) == (self.x2, self.y2):
            raise ValueError("degenerate segment; use SinglePoint")

    def x_extent(self) -> tuple[Fraction, Fraction]:
        return (min(self.x1, self.x2), max(self.x1, self.x2))

    def y_extent(self) -> tuple[Fraction, Fraction]:
        return (min(self.y1, self.y2), max(self.y1, self.y2))

    def mirrored(self) -> "Segment":
        return Segment(self.y1, self.x1, self.y2, self.x2)


@dataclass(frozen=True)
class SinglePoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _as_fraction(self.x))
        object.__setattr__(self, "y", _as_fraction(self.y))

    def mirrored(self) -> "SinglePoint":
        return SinglePoint(self.y, self.x)


Primitive = Segment | SinglePoint


class SymbolicRelation:
    """A closed relation on a Space1D given by finitely many primitives."""

    __slots__ = ("space", "primitives")

    def __init__(self, space: Space1D, primitives: Sequence[Primitive]):
        primitives = tuple(primitives)
        if not primitives:
            raise ValueError("relations are non-empty by definition")
        region = space.region()
        for prim in primitives:
            if isinstance(prim, Segment):
                px = Region1D.interval(*prim.x_extent())
                py = Region1D.interval(*prim.y_extent())
            else:
                px = Region1D.point(prim.x)
                py = Region1D.point(prim.y)
            if not region.contains_region(px) or not region.contains_region(py):
                raise ValueError(f"primitive {prim} leaves the space")
        self.space = space
        self.primitives = primitives

    def mirrored(self) -> "SymbolicRelation":
        return SymbolicRelation(self.space, [p.mirrored() for p in self.primitives])

    def __repr__(self) -> str:
        return f"SymbolicRelation({self.space!r}, {len(self.primitives)} primitives)"


# ---------------------------------------------------------------------------
# images and reach


def _segment_image_over(seg: Segment, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction] | None:
    """Image interval of the x-window [lo, hi] under one segment, or None."""
    if seg.x1 == seg.x2:
        if lo <= seg.x1 <= hi:
            return seg.y_extent()
        return None
    (ax, ay), (bx, by) = ((seg.x1, seg.y1), (seg.x2, seg.y2))
    if ax > bx:
        ax, ay, bx, by = bx, by, ax, ay
    c, d = max(ax, lo), min(bx, hi)
    if c > d:
        return None
    slope = (by - ay) / (bx - ax)
    yc = ay + (c - ax) * slope
    yd = ay + (d - ax) * slope
    return (min(yc, yd), max(yc, yd))


def sym_image(R: SymbolicRelation, A: Region1D) -> Region1D:
    """Exact one-step image of a region."""
    pieces = []
    for prim in R.primitives:
        for lo, hi in A.pieces:
            if isinstance(prim, Segment):
                got = _segment_image_over(prim, lo, hi)
                if got is not None:
                    pieces.append(got)
            else:
                if lo <= prim.x <= hi:
                    pieces.append((prim.y, prim.y))
    return Region1D(pieces)


def sym_preimage(R: SymbolicRelation, A: Region1D) -> Region1D:
    """Exact one-step preimage: the image under the mirrored relation."""
    return sym_image(R.mirrored(), A)


def projections(R: SymbolicRelation) -> tuple[Region1D, Region1D]:
    """(p1, p2): exact first and second coordinate projections."""
    xs, ys = [], []
    for prim in R.primitives:
        if isinstance(prim, Segment):
            xs.append(prim.x_extent())
            ys.append(prim.y_extent())
        else:
            xs.append((prim.x, prim.x))
            ys.append((prim.y, prim.y))
    return Region1D(xs), Region1D(ys)


def region_difference_closure(a: Region1D, b: Region1D) -> Region1D:
    """Closure of a minus b; exact on closed pieces (endpoints are kept)."""
    out: list[tuple[Fraction, Fraction]] = []
    for lo, hi in a.pieces:
        cur = [(lo, hi)]
        for blo, bhi in b.pieces:
            nxt = []
            for clo, chi in cur:
                if bhi < clo or blo > chi:
                    nxt.append((clo, chi))
                    continue
                if blo > clo:
                    nxt.append((clo, min(chi, blo)))
                if bhi < chi:
                    nxt.append((max(clo, bhi), chi))
            cur = nxt
        out.extend(cur)
    return Region1D(out)


def sym_reach(
    R: SymbolicRelation, start: Region1D, max_iter: int
) -> tuple[Region1D, bool]:
    """Cumulative reach start u G(start) u ...; stabilized reports exactness.

    Only the frontier (closure of the newly added part) is imaged each step,
    which is exact because images distribute over unions.
    """
    if max_iter < 0:
        raise ValueError("max_iter must be non-negative")
    acc = start
    frontier = start
    for _ in range(max_iter):
        img = sym_image(R, frontier)
        nxt = acc.union(img)
        if nxt == acc:
            return acc, True
        frontier = region_difference_closure(nxt, acc)
        acc = nxt
    # one more image to detect stabilization exactly at the boundary
    return acc, acc.union(sym_image(R, frontier)) == acc


def sym_reach_chain(R: SymbolicRelation, start: Region1D, max_iter: int) -> list[Region1D]:
    """Cumulative regions [R_0, R_1, ...] up to max_iter or stabilization."""
    acc = start
    frontier = start
    chain = [acc]
    for _ in range(max_iter):
        nxt = acc.union(sym_image(R, frontier))
        chain.append(nxt)
        if nxt == acc:
            break
        frontier = region_difference_closure(nxt, acc)
        acc = nxt
    return chain


def is_total(R: SymbolicRelation) -> bool:
    """Every point has a successor; then every point is legal."""
    p1, _ = projections(R)
    return p1.contains_region(R.space.region())


# ---------------------------------------------------------------------------
# discretization


def _segment_meets_box(seg: Segment, x0, x1, y0, y1) -> bool:
    """Exact closed segment vs closed axis box test (Liang-Barsky clipping)."""
    px, py = seg.x1, seg.y1
    dx, dy = seg.x2 - seg.x1, seg.y2 - seg.y1
    t0, t1 = Fraction(0), Fraction(1)
    for p, q in (
        (-dx, px - x0),
        (dx, x1 - px),
        (-dy, py - y0),
        (dy, y1 - py),
    ):
        if p == 0:
            if q < 0:
                return False
        else:
            r = Fraction(q, 1) / p
            if p < 0:
                if r > t0:
                    t0 = r
            else:
                if r < t1:
                    t1 = r
    return t0 <= t1


def discretize(
    R: SymbolicRelation, delta, box_cap: int = 4096
) -> tuple[FiniteRelation, EpsNet]:
    """Sound grid outer approximation.

    Boxes of width <= delta cover the space; a box pair becomes an edge when
    its product rectangle meets some primitive, so every true walk shadows a
    box walk.  Negative verdicts about the boxes therefore transfer to the
    relation; positive ones need symbolic witnesses.  The returned eps-net
    predicate measures density of box unions at eps = delta.
    """
    delta = _as_fraction(delta)
    cells = grid_cells(R.space, delta)
    if len(cells) > box_cap:
        raise BudgetExceededError(
            f"{len(cells)} grid boxes exceed the cap of {box_cap}"
        )
    labels = [f"b{i}" for i in range(len(cells))]
    edges = []
    for i, (ax0, ax1) in enumerate(cells):
        for j, (bx0, bx1) in enumerate(cells):
            hit = False
            for prim in R.primitives:
                if isinstance(prim, Segment):
                    if _segment_meets_box(prim, ax0, ax1, bx0, bx1):
                        hit = True
                        break
                else:
                    if ax0 <= prim.x <= ax1 and bx0 <= prim.y <= bx1:
                        hit = True
                        break
            if hit:
                edges.append((i, j))
    space = FiniteSpace(labels)
    finite = FiniteRelation(space, edges)
    predicate = EpsNet(R.space, cells, delta)
    return finite, predicate


# ---------------------------------------------------------------------------
# exact walk machinery


def point_successors(
    R: SymbolicRelation, p: Fraction
) -> tuple[list[Fraction], list[tuple[Fraction, Fraction]]]:
    """(single-valued images, interval-valued choice ranges) at an exact point."""
    p = _as_fraction(p)
    singles: list[Fraction] = []
    ranges: list[tuple[Fraction, Fraction]] = []
    for prim in R.primitives:
        if isinstance(prim, SinglePoint):
            if prim.x == p:
                singles.append(prim.y)
        elif prim.x1 == prim.x2:
            if prim.x1 == p:
                ranges.append(prim.y_extent())
        else:
            got = _segment_image_over(prim, p, p)
            if got is not None:
                singles.append(got[0])
    # dedupe, stable ascending
    singles = sorted(set(singles))
    return singles, ranges


def _range_choices(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    """Dyadic-grid choice points inside [lo, hi], endpoints included."""
    out = {lo, hi}
    # first multiple of step at or above lo
    k = -((-lo) // step)
    v = k * step
    while v <= hi:
        if v >= lo:
            out.add(v)
        v += step
    return sorted(out)


def successor_choices(
    R: SymbolicRelation, p: Fraction, choice_step: Fraction
) -> list[Fraction]:
    singles, ranges = point_successors(R, p)
    out = set(singles)
    for lo, hi in ranges:
        out.update(_range_choices(lo, hi, choice_step))
    return sorted(out)


@dataclass(frozen=True)
class WalkSearchResult:
    """Outcome of a bounded exact walk search.

    status is "found" (witness is a certified walk of the true relation),
    "exhausted" (the whole sampled family was searched; no witness at this
    horizon and sampling resolution), or "budget" (node budget hit first).
    """

    status: str
    witness: tuple[Fraction, ...] | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"

    @property
    def certainty(self) -> Certainty:
        return Certainty.CERTIFIED if self.found else Certainty.UNKNOWN_AT_HORIZON


def bounded_walk_search(
    R: SymbolicRelation,
    x,
    eps,
    horizon: int,
    choice_step=None,
    budget: int = 100000,
) -> WalkSearchResult:
    """Search for an exact walk from x whose orbit is an eps-net of the space.

    Interval-valued successors are sampled on a dyadic grid (choice_step,
    default eps/2); every emitted witness is an exact walk of the relation.
    Gap-filling successors are explored first, so dense witnesses are found
    quickly when they exist at this horizon.
    """
    x = _as_fraction(x)
    eps = _as_fraction(eps)
    if not R.space.contains_point(x):
        raise ValueError(f"{x} is not a point of the space")
    step = _as_fraction(choice_step) if choice_step is not None else eps / 2
    nodes = 0
    best: dict[tuple[Fraction, frozenset], int] = {}
    stack: list[tuple[tuple[Fraction, ...], frozenset]] = [((x,), frozenset([x]))]
    while stack:
        walk, orbit = stack.pop()
        used = len(walk) - 1
        key = (walk[-1], orbit)
        prev = best.get(key)
        if prev is not None and prev <= used:
            continue
        best[key] = used
        nodes += 1
        if nodes > budget:
            return WalkSearchResult("budget", None, nodes)
        if eps_dense(R.space, Region1D.from_points(orbit), eps):
            return WalkSearchResult("found", walk, nodes)
        if used >= horizon:
            continue
        covered = Region1D.from_points(orbit)
        succs = successor_choices(R, walk[-1], step)
        # explore the farthest-from-covered successor first (LIFO: push last)
        def gain(v: Fraction) -> Fraction:
            d = covered.distance_to(v)
            return d if d is not None else Fraction(0)

        ordered = sorted(succs, key=lambda v: (gain(v), -v))
        for v in ordered:
            stack.append((walk + (v,), orbit | {v}))
    return WalkSearchResult("exhausted", None, nodes)


@dataclass(frozen=True)
class LoopSearchResult:
    """A walk revisiting a point while its orbit is still not an eps-net.

    Such a walk extends to a periodic infinite walk with the same orbit, so a
    find certifies that not every infinite walk from the start is eps-dense.
    """

    status: str  # "found" / "exhausted" / "budget"
    witness: tuple[Fraction, ...] | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"


def nondense_loop_search(
    R: SymbolicRelation,
    x,
    eps,
    horizon: int,
    choice_step=None,
    budget: int = 100000,
) -> LoopSearchResult:
    x = _as_fraction(x)
    eps = _as_fraction(eps)
    if not R.space.contains_point(x):
        raise ValueError(f"{x} is not a point of the space")
    step = _as_fraction(choice_step) if choice_step is not None else eps / 2
    nodes = 0
    best: dict[tuple[Fraction, frozenset], int] = {}
    stack: list[tuple[tuple[Fraction, ...], frozenset]] = [((x,), frozenset([x]))]
    while stack:
        walk, orbit = stack.pop()
        nodes += 1
        if nodes > budget:
            return LoopSearchResult("budget", None, nodes)
        if eps_dense(R.space, Region1D.from_points(orbit), eps):
            continue  # orbits only grow; nothing non-dense lies beyond
        if len(walk) > 1 and walk[-1] in walk[:-1]:
            return LoopSearchResult("found", walk, nodes)
        used = len(walk) - 1
        key = (walk[-1], orbit)
        prev = best.get(key)
        if prev is not None and prev <= used:
            continue
        best[key] = used
        if used >= horizon:
            continue
        for v in sorted(successor_choices(R, walk[-1], step), reverse=True):
            stack.append((walk + (v,), orbit | {v}))
    return LoopSearchResult("exhausted", None, nodes)


@dataclass(frozen=True)
class SymbolicCoverResult:
    size: int | None
    witnesses: tuple[tuple[Fraction, ...], ...]
    horizon: int
    certainty: Certainty


def sym_branch_cover(
    R: SymbolicRelation,
    x,
    eps,
    horizon: int,
    choice_step=None,
    budget: int = 50000,
    max_candidates: int = 128,
) -> SymbolicCoverResult:
    """Minimum number of exact walks from x whose joint orbit is an eps-net.

    Maximal walks (horizon steps or stuck) are enumerated over the sampled
    choice family; the minimum is exact over that family, hence a certified
    upper bound for the relation and exact at this horizon and resolution.
    """
    x = _as_fraction(x)
    eps = _as_fraction(eps)
    step = _as_fraction(choice_step) if choice_step is not None else eps / 2
    nodes = 0
    best: dict[tuple[Fraction, frozenset], int] = {}
    # every visited state contributes its orbit; a revisit with fewer steps
    # used gets re-explored, so walks achieving any maximal orbit survive the
    # pruning (a pruned prefix could be spliced with an earlier, shorter one)
    achieved: dict[frozenset, tuple[Fraction, ...]] = {}
    stack: list[tuple[tuple[Fraction, ...], frozenset]] = [((x,), frozenset([x]))]
    while stack:
        walk, orbit = stack.pop()
        used = len(walk) - 1
        key = (walk[-1], orbit)
        prev = best.get(key)
        if prev is not None and prev <= used:
            continue
        best[key] = used
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError("walk family too large for branch cover search")
        known = achieved.get(orbit)
        if known is None or (len(walk), walk) < (len(known), known):
            achieved[orbit] = walk
        if used >= horizon:
            continue
        for v in sorted(successor_choices(R, walk[-1], step), reverse=True):
            stack.append((walk + (v,), orbit | {v}))

    # drop dominated orbits, keep lexicographically least walk per orbit
    pairs = sorted(achieved.items(), key=lambda item: item[1])
    kept: list[tuple[frozenset, tuple[Fraction, ...]]] = []
    for orbit, walk in pairs:
        if any(orbit < other for other, _ in kept):
            continue
        kept = [(o, w) for o, w in kept if not (o < orbit)]
        kept.append((orbit, walk))
    if len(kept) > max_candidates:
        raise BudgetExceededError("too many candidate walks for branch cover search")
    kept.sort(key=lambda item: item[1])

    def dense_union(idx: Iterable[int]) -> bool:
        pts: set[Fraction] = set()
        for i in idx:
            pts |= kept[i][0]
        return eps_dense(R.space, Region1D.from_points(pts), eps)

    if not kept or not dense_union(range(len(kept))):
        return SymbolicCoverResult(None, (), horizon, Certainty.UNKNOWN_AT_HORIZON)
    import itertools

    for k in range(1, len(kept) + 1):
        for combo in itertools.combinations(range(len(kept)), k):
            if dense_union(combo):
                witnesses = tuple(kept[i][1] for i in combo)
                return SymbolicCoverResult(k, witnesses, horizon, Certainty.CERTIFIED)
    return SymbolicCoverResult(None, (), horizon, Certainty.UNKNOWN_AT_HORIZON)


# ---------------------------------------------------------------------------
# open-set transitivity at grid scale


@dataclass(frozen=True)
class GridTransitivityReport:
    """Outcome of the exact image-chase over a delta-grid of open sets."""

    transitive: bool
    max_steps_needed: int
    misses: tuple[tuple[int, int], ...]  # (U cell index, V cell index)
    cells: tuple[tuple[Fraction, Fraction], ...]


def grid_transitivity_check(
    R: SymbolicRelation, delta, horizon: int, positive_only: bool = False
) -> GridTransitivityReport:
    """For every grid cell pair (U, V): does some G^n(U) meet V, n <= horizon?

    U is chased as a closed cell (its image chain is computed exactly); V is
    met when the chain intersects the open cell interior, or contains the
    point for degenerate cells.  positive_only starts the chase at n = 1.
    """
    delta = _as_fraction(delta)
    cells = grid_cells(R.space, delta)
    misses: list[tuple[int, int]] = []
    max_steps = 0
    for ui, (ulo, uhi) in enumerate(cells):
        pending = set(range(len(cells)))
        acc = Region1D.interval(ulo, uhi)
        frontier = acc
        if positive_only:
            img = sym_image(R, frontier)
            acc, frontier = img, img
            steps = 1
        else:
            steps = 0

        def mark(region: Region1D):
            done = []
            for vi in pending:
                vlo, vhi = cells[vi]
                if vlo == vhi:
                    if region.contains_point(vlo):
                        done.append(vi)
                elif region.intersects_open_interval(vlo, vhi):
                    done.append(vi)
            pending.difference_update(done)

        mark(acc)
        while pending and steps < horizon:
            img = sym_image(R, frontier)
            nxt = acc.union(img)
            if nxt == acc:
                break  # stabilized: no new cell can ever be met
            frontier = region_difference_closure(nxt, acc)
            acc = nxt
            steps += 1
            mark(frontier)
        if pending:
            misses.extend((ui, vi) for vi in sorted(pending))
        max_steps = max(max_steps, steps)
    return GridTransitivityReport(
        transitive=not misses,
        max_steps_needed=max_steps,
        misses=tuple(misses),
        cells=tuple(cells),
    )


def forward_union(
    R: SymbolicRelation, U: Region1D, horizon: int, include_start: bool
) -> Region1D:
    """Union of G^k(U): k from 0 (include_start) or 1, up to the horizon."""
    if include_start:
        acc = U
        frontier = U
        start = 0
    else:
        acc = sym_image(R, U)
        frontier = acc
        start = 1
    for _ in range(start, horizon):
        img = sym_image(R, frontier)
        nxt = acc.union(img)
        if nxt == acc:
            break
        frontier = region_difference_closure(nxt, acc)
        acc = nxt
    return acc
