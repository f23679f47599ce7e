"""Finite-depth transitivity trees and their branch structure.

The literal tree of all walks from a point is exponentially large, so trees
are stored as level-indexed unfoldings with node identity (point, level); a
point reached twice at the same level is one shared node.  Every branch
statistic is computed structurally from the relation instead of enumerating
branches.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import (
    Condensation,
    _trans1_bounded,
    _trans1_exhaustive,
    _trans2_bounded,
    _trans2_exhaustive,
    legal_by_cycle_reach,
    reach,
)
from .density import DensityPredicate, Exhaustive
from .finite import FiniteRelation, image


class TransTree:
    """Memoized unfolding of the walk tree from a root, to a fixed depth."""

    __slots__ = ("relation", "root", "depth", "levels")

    def __init__(self, relation: FiniteRelation, root: int, depth: int):
        if not 0 <= root < relation.space.size:
            raise ValueError("root outside the space")
        if depth < 0:
            raise ValueError("depth must be non-negative")
        self.relation = relation
        self.root = root
        self.depth = depth
        levels = [frozenset([root])]
        for _ in range(depth):
            levels.append(image(relation, levels[-1], 1))
        self.levels = tuple(levels)

    def level(self, n: int) -> frozenset:
        return self.levels[n]

    def cumulative_level(self, n: int) -> frozenset:
        out: frozenset = frozenset()
        for lvl in self.levels[: n + 1]:
            out |= lvl
        return out

    def nodes(self) -> list[tuple[int, int]]:
        """(point, level) pairs, sorted by level then point index."""
        return [(p, l) for l, lvl in enumerate(self.levels) for p in sorted(lvl)]

    def node_count(self) -> int:
        return sum(len(lvl) for lvl in self.levels)

    def child_edges(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        out = []
        for l in range(self.depth):
            nxt = self.levels[l + 1]
            for p in sorted(self.levels[l]):
                for q in self.relation.successors(p):
                    if q in nxt:
                        out.append(((p, l), (q, l + 1)))
        return out


def build_tree(G: FiniteRelation, x: int, depth: int) -> TransTree:
    return TransTree(G, x, depth)


@dataclass(frozen=True)
class BranchSummary:
    """Branch facts about the full (unbounded) tree from a root.

    finite_branch_count is None when loops make the number of dead-ending
    walks unbounded; max_finite_branch_length is None in that case or when
    there is no finite branch at all.  height is None exactly when some
    branch is infinite, which happens exactly for legal roots.  The two
    density booleans may be None when a bounded eps-net search was
    inconclusive.
    """

    root: int
    is_legal: bool
    finite_branch_count: int | None
    max_finite_branch_length: int | None
    height: int | None
    infinite_branch_cover: frozenset
    all_infinite_branches_dense: bool | None
    exists_infinite_dense_branch: bool | None
    cover_dense: bool
    intransitive: bool


def _finite_branch_stats(G: FiniteRelation, x: int) -> tuple[int | None, int | None]:
    """(number, max length) of walks from x ending at successor-free points."""
    reachable = reach(G, x)
    dead = frozenset(v for v in reachable if not G.successors(v))
    if not dead:
        return 0, None
    # vertices lying on some walk from x to a dead end
    back: set[int] = set(dead)
    changed = True
    while changed:
        changed = False
        for v in reachable:
            if v in back:
                continue
            if any(w in back for w in G.successors(v)):
                back.add(v)
                changed = True
    relevant = back & set(reachable)
    # a cycle among relevant vertices makes the walk family unbounded
    order: list[int] = []
    state: dict[int, int] = {}
    for start in sorted(relevant):
        if start in state:
            continue
        stack = [(start, iter([w for w in G.successors(start) if w in relevant]))]
        state[start] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                s = state.get(w)
                if s == 1:
                    return None, None
                if s is None:
                    state[w] = 1
                    stack.append((w, iter([z for z in G.successors(w) if z in relevant])))
                    advanced = True
                    break
            if not advanced:
                state[v] = 2
                order.append(v)
                stack.pop()
    # DAG: count walks and longest walk from x by dynamic programming
    counts = {v: (1 if v in dead else 0) for v in relevant}
    longest = {v: 0 for v in relevant}
    for v in order:  # reverse topological: successors are finished first
        for w in G.successors(v):
            if w in relevant:
                counts[v] += counts[w]
                longest[v] = max(longest[v], longest[w] + 1)
    if x not in relevant:
        return 0, None
    return counts[x], longest[x]


def tree_height(G: FiniteRelation, x: int) -> int | None:
    """Height of the full tree: None when infinite (legal root)."""
    if x in legal_by_cycle_reach(G):
        return None
    _, longest = _finite_branch_stats(G, x)
    return longest if longest is not None else 0


def branch_summary(
    G: FiniteRelation,
    x: int,
    dense: DensityPredicate | None = None,
    search_budget: int = 20000,
) -> BranchSummary:
    """Branch-based restatement of the classification of x.

    The cover of infinite branches is computed from cycle reachability; the
    per-branch density booleans delegate to the classify decisions so that
    one algorithm answers both views.
    """
    if dense is None:
        dense = Exhaustive(G.space.size)
    legal_pts = legal_by_cycle_reach(G)
    is_legal = x in legal_pts
    cover = reach(G, x) & legal_pts
    count, max_len = _finite_branch_stats(G, x)
    cover_dense = bool(cover) and dense.dense(cover)
    if not is_legal:
        some_dense: bool | None = False
        all_dense: bool | None = False
    elif isinstance(dense, Exhaustive):
        cond = Condensation(G)
        some_dense = _trans2_exhaustive(G, x, cond)
        all_dense = some_dense and _trans1_exhaustive(G, x)
    else:
        cond = Condensation(G)
        some_dense = _trans2_bounded(G, x, dense, cond, search_budget)
        if some_dense is False:
            all_dense = False
        else:
            all_dense = _trans1_bounded(G, x, dense, search_budget)
            if all_dense and some_dense is None:
                some_dense = True  # every branch dense and one exists
    return BranchSummary(
        root=x,
        is_legal=is_legal,
        finite_branch_count=count,
        max_finite_branch_length=max_len,
        height=tree_height(G, x),
        infinite_branch_cover=cover,
        all_infinite_branches_dense=all_dense,
        exists_infinite_dense_branch=some_dense,
        cover_dense=cover_dense,
        intransitive=is_legal and not cover_dense,
    )


def unique_branch(G: FiniteRelation, x: int) -> bool:
    """|branches of T(x)| = 1: every point reachable from x has at most one successor."""
    return all(len(G.successors(v)) <= 1 for v in reach(G, x))


def unique_infinite_branch(G: FiniteRelation, x: int) -> bool:
    """|infinite branches of T(x)| = 1, decided on the legal part of the reach set."""
    legal_pts = legal_by_cycle_reach(G)
    if x not in legal_pts:
        return False
    seen = {x}
    work = [x]
    while work:
        v = work.pop()
        legal_succ = [w for w in G.successors(v) if w in legal_pts]
        if len(legal_succ) != 1:
            return False
        w = legal_succ[0]
        if w not in seen:
            seen.add(w)
            work.append(w)
    return True


def function_graph_tests(G: FiniteRelation) -> tuple[bool, bool]:
    """(partial single-valued, total single-valued) successor-count tests."""
    counts = [len(G.successors(v)) for v in range(G.space.size)]
    return all(c <= 1 for c in counts), all(c == 1 for c in counts)


def dot_export(tree: TransTree) -> str:
    """Deterministic DOT rendering: one node per (point, level), ranked by level."""
    labels = tree.relation.space.labels
    lines = ["digraph transitivity_tree {", "  rankdir=TB;"]
    for p, l in tree.nodes():
        lines.append(f'  p{p}_l{l} [label="{labels[p]}"];')
    for l, lvl in enumerate(tree.levels):
        if not lvl:
            continue
        ids = " ".join(f"p{p}_l{l};" for p in sorted(lvl))
        lines.append(f"  {{ rank=same; {ids} }}")
    for (p, l), (q, m) in tree.child_edges():
        lines.append(f"  p{p}_l{l} -> p{q}_l{m};")
    lines.append("}")
    return "\n".join(lines) + "\n"
