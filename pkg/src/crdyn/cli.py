"""Command-line surface.

Subcommands: classify, tree, transitive, reach, mahavier, discretize,
gallery.  Exit codes: 0 success (unknown-at-horizon results are marked in
the output but still exit 0), 1 expectation or assertion failure, 2 usage
or parse errors.  All reports are deterministic and record the parameters
they were produced with.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import gallery
from .classify import (
    BudgetExceededError,
    IllegalPointError,
    characterization_suite,
    classify_point,
    reach_chain,
    system_transitive,
)
from .density import Exhaustive
from .finite import FiniteRelation, InvalidInstanceError, mahavier_count, mahavier_enumerate
from .io import parse_document, serialize_instance
from .region import Region1D, eps_dense, format_fraction, parse_fraction
from .symbolic import (
    SymbolicRelation,
    bounded_walk_search,
    grid_transitivity_check,
    nondense_loop_search,
    projections,
    sym_image,
    sym_reach_chain,
)
from .tree import build_tree, dot_export

DEFAULT_EPS = Fraction(1, 64)
DEFAULT_HORIZON = 200
DEFAULT_DELTA = Fraction(1, 64)


class _UsageError(Exception):
    pass


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    return parse_document(text)


def _fraction_arg(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _finite_point(relation: FiniteRelation, name: str) -> int:
    if name not in relation.space.index:
        raise _UsageError(f"unknown point {name!r}; points: {list(relation.space.labels)}")
    return relation.space.index[name]


def _header(cmd: str, **params) -> str:
    parts = [f"# crdyn {cmd}"]
    for key, value in params.items():
        if isinstance(value, Fraction):
            value = format_fraction(value)
        parts.append(f"{key}={value}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# classify


def _cmd_classify(args) -> int:
    relation, density = _load(args.file)
    eps = _fraction_arg(args.eps) if args.eps else DEFAULT_EPS
    horizon = args.horizon if args.horizon is not None else DEFAULT_HORIZON
    print(_header("classify", file=args.file, eps=eps, horizon=horizon))
    if isinstance(relation, FiniteRelation):
        if density is not None:
            predicate = density.with_eps(eps) if args.eps else density
        else:
            predicate = Exhaustive(relation.space.size)
        points = (
            [_finite_point(relation, args.point)]
            if args.point is not None
            else range(relation.space.size)
        )
        print(f"{'point':>10}  {'verdict':<13} {'grade':<6} certainty")
        for x in points:
            tag = classify_point(relation, x, predicate, search_budget=max(horizon * 100, 20000))
            grade = tag.reach_grade if tag.reach_grade is not None else "-"
            print(
                f"{relation.space.labels[x]:>10}  {tag.verdict.value:<13} "
                f"{grade!s:<6} {tag.certainty.value}"
            )
        return 0
    if args.point is None:
        raise _UsageError("interval instances need --point")
    x = _fraction_arg(args.point)
    if not relation.space.contains_point(x):
        raise _UsageError(f"{args.point} is not a point of the space")
    rows = _symbolic_point_rows(relation, x, eps, horizon)
    print(f"{'claim':<22} {'status':<20} detail")
    for claim, status, detail in rows:
        print(f"{claim:<22} {status:<20} {detail}")
    return 0


def _symbolic_point_rows(R: SymbolicRelation, x: Fraction, eps: Fraction, horizon: int):
    rows = []
    p1, _ = projections(R)
    total = p1.contains_region(R.space.region())
    if total:
        rows.append(("legal", "certified", "every point has a successor"))
        legal = True
    else:
        images = Region1D.point(x)
        legal = None
        for n in range(1, horizon + 1):
            images = sym_image(R, images)
            if images.is_empty():
                rows.append(("legal", "refuted", f"images die out at step {n}"))
                legal = False
                break
        if legal is None:
            rows.append(("legal", "unknown-at-horizon", "images stay non-empty"))
    if legal is False:
        rows.append(("verdict", "illegal", ""))
        return rows

    chain = sym_reach_chain(R, Region1D.point(x), horizon)
    stabilized = len(chain) >= 2 and chain[-1] == chain[-2]
    grade = None
    for n, region in enumerate(chain):
        if n >= 1 and eps_dense(R.space, region, eps):
            grade = n
            break
    if grade is not None:
        rows.append(("trans3-at-eps", "certified", f"reach dense at step {grade}"))
        rows.append(("reach-grade", str(grade), "least step with an eps-dense reach"))
    elif stabilized:
        rows.append(("trans3-at-eps", "refuted", "reach stabilized below density"))
        rows.append(("verdict", "intransitive-at-eps" if legal else "unknown", ""))
        return rows
    else:
        rows.append(("trans3-at-eps", "unknown-at-horizon", "reach still growing"))

    found = bounded_walk_search(R, x, eps, horizon)
    if found.found:
        rows.append(("trans2-at-eps", "certified", f"witness of {len(found.witness) - 1} steps"))
    else:
        rows.append(("trans2-at-eps", "unknown-at-horizon", f"search {found.status}"))
    loop = nondense_loop_search(R, x, eps, horizon)
    if loop.found:
        rows.append(("trans1-at-eps", "refuted", "a non-dense looping walk exists"))
    else:
        rows.append(("trans1-at-eps", "unknown-at-horizon", f"search {loop.status}"))
    return rows


# ---------------------------------------------------------------------------
# tree


def _cmd_tree(args) -> int:
    relation, _ = _load(args.file)
    if not isinstance(relation, FiniteRelation):
        raise _UsageError("tree unfolding is defined for finite instances")
    x = _finite_point(relation, args.point)
    tree = build_tree(relation, x, args.depth)
    print(_header("tree", file=args.file, point=args.point, depth=args.depth))
    for level, members in enumerate(tree.levels):
        names = " ".join(relation.space.labels[p] for p in sorted(members))
        print(f"level {level}: {names}")
    if args.dot:
        text = dot_export(tree)
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"dot written to {args.dot}")
    return 0


# ---------------------------------------------------------------------------
# transitive


def _cmd_transitive(args) -> int:
    relation, _ = _load(args.file)
    eps = _fraction_arg(args.eps) if args.eps else DEFAULT_DELTA
    horizon = args.horizon if args.horizon is not None else DEFAULT_HORIZON
    if isinstance(relation, FiniteRelation):
        print(_header("transitive", file=args.file))
        verdict = system_transitive(relation, plus=args.plus)
        label = "+transitive" if args.plus else "transitive"
        print(f"{label}: {str(verdict).lower()}")
        report = characterization_suite(relation)
        print("statements 1-8:", " ".join(str(s).lower() for s in report.statements))
        ok = (
            report.group1_consistent
            and report.group2_consistent
            and report.matches_transitive
            and report.matches_plus_transitive
            and report.inverse_invariant
        )
        if not ok:
            print("internal inconsistency in the characterization suite", file=sys.stderr)
            return 1
        return 0
    print(_header("transitive", file=args.file, delta=eps, horizon=horizon))
    report = grid_transitivity_check(relation, eps, horizon, positive_only=args.plus)
    label = "+transitive" if args.plus else "transitive"
    if report.transitive:
        print(f"{label}-at-grid: certified (max steps {report.max_steps_needed})")
    else:
        print(f"{label}-at-grid: not certified; {len(report.misses)} cell pairs unreached")
        for ui, vi in report.misses[:8]:
            u, v = report.cells[ui], report.cells[vi]
            print(f"  miss: [{format_fraction(u[0])},{format_fraction(u[1])}] -> "
                  f"[{format_fraction(v[0])},{format_fraction(v[1])}]")
    return 0


# ---------------------------------------------------------------------------
# reach


def _cmd_reach(args) -> int:
    relation, _ = _load(args.file)
    if isinstance(relation, FiniteRelation):
        x = _finite_point(relation, args.point)
        chain = reach_chain(relation, x, args.steps)
        print(_header("reach", file=args.file, point=args.point))
        stabilized = len(chain) >= 2 and chain[-1] == chain[-2]
        shown = chain[:-1] if stabilized else chain
        for n, members in enumerate(shown):
            names = " ".join(relation.space.labels[p] for p in sorted(members))
            print(f"step {n}: {names}")
        print(f"stabilized: {str(stabilized).lower()}")
        return 0
    x = _fraction_arg(args.point)
    steps = args.steps if args.steps is not None else DEFAULT_HORIZON
    chain = sym_reach_chain(relation, Region1D.point(x), steps)
    print(_header("reach", file=args.file, point=args.point, steps=steps))
    stabilized = len(chain) >= 2 and chain[-1] == chain[-2]
    shown = chain[:-1] if stabilized else chain
    for n, region in enumerate(shown):
        print(f"step {n}: {region!r}")
    print(f"stabilized: {str(stabilized).lower()}")
    return 0


# ---------------------------------------------------------------------------
# mahavier


def _cmd_mahavier(args) -> int:
    relation, _ = _load(args.file)
    if not isinstance(relation, FiniteRelation):
        raise _UsageError("walk enumeration is defined for finite instances")
    print(_header("mahavier", file=args.file, depth=args.depth))
    if args.list is not None:
        walks = mahavier_enumerate(relation, args.depth, args.list)
        for walk in walks:
            print(" ".join(walk.labels()))
        return 0
    print(f"count: {mahavier_count(relation, args.depth)}")
    return 0


# ---------------------------------------------------------------------------
# discretize


def _cmd_discretize(args) -> int:
    relation, _ = _load(args.file)
    if not isinstance(relation, SymbolicRelation):
        raise _UsageError("discretize applies to interval instances")
    from .symbolic import discretize

    delta = _fraction_arg(args.delta)
    finite, predicate = discretize(relation, delta)
    text = serialize_instance(finite, predicate)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(_header("discretize", file=args.file, delta=delta))
    print(f"boxes: {finite.space.size}  edges: {len(finite.edges)}  -> {args.output}")
    return 0


# ---------------------------------------------------------------------------
# gallery


def _cmd_gallery(args) -> int:
    if args.action == "list":
        for name in gallery.names():
            inst = gallery.build(name)
            print(f"{name:14s} {inst.description}")
        return 0
    if args.action == "run":
        if not args.name:
            raise _UsageError("gallery run needs an instance name")
        try:
            results = gallery.build(args.name).run()
        except KeyError as exc:
            raise _UsageError(str(exc)) from exc
    else:
        results = gallery.run_all()
    for line in gallery.gallery_report_lines(results):
        print(line)
    failures = [r for r in results if not r.ok]
    unknowns = [r for r in results if r.status == "unknown-expected"]
    print(
        f"total {len(results)}: {len(results) - len(failures) - len(unknowns)} pass, "
        f"{len(unknowns)} unknown-as-expected, {len(failures)} fail"
    )
    return 1 if failures else 0


# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="crdyn",
        description="transitivity taxonomy for dynamical systems given by closed relations",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="per-point classification table")
    c.add_argument("file")
    c.add_argument("--point", default=None)
    c.add_argument("--eps", default=None)
    c.add_argument("--horizon", type=int, default=None)
    c.set_defaults(fn=_cmd_classify)

    t = sub.add_parser("tree", help="level listing of the walk tree, optional DOT export")
    t.add_argument("file")
    t.add_argument("--point", required=True)
    t.add_argument("--depth", type=int, required=True)
    t.add_argument("--dot", default=None)
    t.set_defaults(fn=_cmd_tree)

    tr = sub.add_parser("transitive", help="system transitivity and the eight-statement vector")
    tr.add_argument("file")
    tr.add_argument("--plus", action="store_true")
    tr.add_argument("--eps", default=None)
    tr.add_argument("--horizon", type=int, default=None)
    tr.set_defaults(fn=_cmd_transitive)

    r = sub.add_parser("reach", help="reach chain with stabilization report")
    r.add_argument("file")
    r.add_argument("--point", required=True)
    r.add_argument("--steps", type=int, default=None)
    r.set_defaults(fn=_cmd_reach)

    m = sub.add_parser("mahavier", help="count or list fixed-length walks")
    m.add_argument("file")
    m.add_argument("--depth", type=int, required=True)
    m.add_argument("--count", action="store_true")
    m.add_argument("--list", type=int, default=None, metavar="K")
    m.set_defaults(fn=_cmd_mahavier)

    d = sub.add_parser("discretize", help="sound grid outer approximation")
    d.add_argument("file")
    d.add_argument("--delta", required=True)
    d.add_argument("-o", "--output", required=True)
    d.set_defaults(fn=_cmd_discretize)

    g = sub.add_parser("gallery", help="list or run the worked instances")
    g.add_argument("action", choices=["list", "run", "run-all"])
    g.add_argument("name", nargs="?", default=None)
    g.set_defaults(fn=_cmd_gallery)

    return p


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidInstanceError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (IllegalPointError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
