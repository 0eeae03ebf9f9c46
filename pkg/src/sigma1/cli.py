"""Command-line front end: group inspection, scans, family table, searches, suites."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .arith import search_open_problem
from .classifiers import structural_profile
from .constructions import build, family_gn
from .errors import Sigma1Error
from .invariants import sigma1_breakdown
from .lattice import all_subgroups
from .verify import FAMILY_ENUMERATION_BOUND, SUITES, Report, run_scan, run_suites


def _fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _decimal_str(value: Fraction) -> str:
    return f"{float(value):.6f}"


def _emit(payload: dict) -> None:
    print(json.dumps(payload, ensure_ascii=False))


def _print_reports(reports: list[Report]) -> None:
    for report in reports:
        print(f"[{report.status}] {report.suite}: {report.claim}")
        print(f"    population: {report.population}")
        print(f"    instances={report.instances} failures={report.failures}")
        for witness in report.witnesses:
            print(f"    witness: {witness['group']}: {witness['detail']}")
        for note in report.notes:
            print(f"    note: {note}")


def _reports_payload(command: str, reports: list[Report], **extra) -> dict:
    payload = {"command": command, **extra}
    payload["reports"] = [r.to_dict() for r in reports]
    payload["all_pass"] = all(r.status == "PASS" for r in reports)
    return payload


def _cmd_group(args) -> int:
    group = build(args.expr)
    breakdown = sigma1_breakdown(group)
    profile = structural_profile(group)
    if args.json:
        _emit(
            {
                "command": "group",
                "expr": args.expr,
                "order": group.order,
                "sigma1": {
                    "exact": _fraction_str(breakdown.sigma1),
                    "decimal": _decimal_str(breakdown.sigma1),
                },
                "subgroup_order_counts": {
                    str(order): count for order, count in breakdown.counts.items()
                },
                "profile": {
                    "is_cyclic": profile.is_cyclic,
                    "is_abelian": profile.is_abelian,
                    "is_p_group": profile.is_p_group,
                    "is_nilpotent": profile.is_nilpotent,
                    "is_supersolvable": profile.is_supersolvable,
                    "is_solvable": profile.is_solvable,
                    "has_cyclic_maximal": profile.has_cyclic_maximal,
                    "nonnormal_maximal_class_count": profile.nonnormal_maximal_class_count,
                },
                "bound_verdicts": profile.bound_verdicts,
            }
        )
        return 0
    print(f"group {args.expr}: order {group.order}")
    print(f"sigma1 = {_fraction_str(breakdown.sigma1)} ({_decimal_str(breakdown.sigma1)})")
    counts = ", ".join(f"{order} x{count}" for order, count in breakdown.counts.items())
    print(f"subgroup orders: {counts} (sum {breakdown.total})")
    print(
        "flags: "
        f"cyclic={profile.is_cyclic} abelian={profile.is_abelian} "
        f"p-group={profile.is_p_group} nilpotent={profile.is_nilpotent} "
        f"supersolvable={profile.is_supersolvable} solvable={profile.is_solvable} "
        f"cyclic-maximal={profile.has_cyclic_maximal}"
    )
    print(f"non-normal maximal classes: {profile.nonnormal_maximal_class_count}")
    verdicts = ", ".join(f"{name}: {v}" for name, v in profile.bound_verdicts.items())
    print(f"bound verdicts: {verdicts}")
    return 0


def _cmd_lattice(args) -> int:
    group = build(args.expr)
    lat = all_subgroups(group)
    classes = [
        {
            "order": cls.order,
            "size": cls.size,
            "is_normal": cls.is_normal,
            "is_maximal": cls.representative in lat.maximal_ids,
            "is_cyclic": lat.subgroups[cls.representative].is_cyclic(),
            "representative_members": list(
                lat.subgroups[cls.representative].member_indices()
            ),
        }
        for cls in lat.classes
    ]
    if args.json:
        _emit(
            {
                "command": "lattice",
                "expr": args.expr,
                "order": group.order,
                "subgroup_count": len(lat.subgroups),
                "classes": classes,
            }
        )
        return 0
    print(f"lattice of {args.expr}: {len(lat.subgroups)} subgroups in {len(classes)} classes")
    for cls in classes:
        members = " ".join(str(x) for x in cls["representative_members"])
        print(
            f"  order {cls['order']:>4}  size {cls['size']:>3}  "
            f"normal={str(cls['is_normal']):5}  maximal={str(cls['is_maximal']):5}  "
            f"cyclic={str(cls['is_cyclic']):5}  rep {{{members}}}"
        )
    return 0


def _cmd_scan(args) -> int:
    reports = run_scan(args.max_order)
    if args.json:
        _emit(_reports_payload("scan", reports, max_order=args.max_order))
    else:
        _print_reports(reports)
    return 0 if all(r.status == "PASS" for r in reports) else 1


def _cmd_family(args) -> int:
    if not 1 <= args.count <= 10:
        raise Sigma1Error("family count must be between 1 and 10")
    members = family_gn(args.count, FAMILY_ENUMERATION_BOUND)
    rows = []
    for member in members:
        supersolvable = None
        if member.materialized:
            from .classifiers import is_supersolvable

            supersolvable = is_supersolvable(member.group, FAMILY_ENUMERATION_BOUND)
        rows.append(
            {
                "q": member.q,
                "p": member.p,
                "order": member.order,
                "sigma1": _fraction_str(member.sigma1),
                "sigma1_decimal": _decimal_str(member.sigma1),
                "supersolvable": supersolvable,
                "materialized": member.materialized,
            }
        )
    decreasing = all(
        members[i].sigma1 > members[i + 1].sigma1 for i in range(len(members) - 1)
    )
    all_above_2 = all(m.sigma1 > 2 for m in members)
    none_supersolvable = all(r["supersolvable"] is not True for r in rows)
    ok = decreasing and all_above_2 and none_supersolvable
    if args.json:
        _emit(
            {
                "command": "family",
                "count": args.count,
                "rows": rows,
                "strictly_decreasing": decreasing,
                "all_above_2": all_above_2,
                "all_pass": ok,
            }
        )
        return 0 if ok else 1
    print(f"{'q':>3} {'p':>4} {'order':>7} {'sigma1':>14} {'decimal':>9}  supersolvable")
    for row in rows:
        tag = "-" if row["supersolvable"] is None else str(row["supersolvable"]).lower()
        print(
            f"{row['q']:>3} {row['p']:>4} {row['order']:>7} "
            f"{row['sigma1']:>14} {row['sigma1_decimal']:>9}  {tag}"
        )
    print(f"strictly decreasing: {decreasing}; all above 2: {all_above_2}")
    return 0 if ok else 1


def _cmd_search_open(args) -> int:
    solutions = search_open_problem(args.limit, use_prefilter=not args.no_prefilter)
    if args.json:
        _emit(
            {
                "command": "search-open",
                "limit": args.limit,
                "prefilter": not args.no_prefilter,
                "solutions": solutions,
            }
        )
        return 0
    if solutions:
        for n in solutions:
            print(f"sigma({n}) = {2 * n + 11}")
    else:
        print(f"no n <= {args.limit} with sigma(n) = 2n + 11")
    return 0


def _cmd_verify(args) -> int:
    reports = run_suites(args.suite, args.max_order)
    if args.json:
        _emit(
            _reports_payload(
                "verify", reports, selector=args.suite, max_order=args.max_order
            )
        )
    else:
        _print_reports(reports)
    return 0 if all(r.status == "PASS" for r in reports) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigma1",
        description="Exact subgroup-lattice invariants for small finite groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_group = sub.add_parser("group", help="order, sigma1, and structure of one group")
    p_group.add_argument("expr", help="group expression, e.g. A4 or C2xC4 or E25:C3")
    p_group.add_argument("--json", action="store_true")
    p_group.set_defaults(func=_cmd_group)

    p_lattice = sub.add_parser("lattice", help="subgroup classes of one group")
    p_lattice.add_argument("expr")
    p_lattice.add_argument("--json", action="store_true")
    p_lattice.set_defaults(func=_cmd_lattice)

    p_scan = sub.add_parser("scan", help="catalog-wide bound scans")
    p_scan.add_argument("--max-order", type=int, default=15, dest="max_order")
    p_scan.add_argument("--json", action="store_true")
    p_scan.set_defaults(func=_cmd_scan)

    p_family = sub.add_parser("family", help="the non-supersolvable family table")
    p_family.add_argument("--count", type=int, required=True)
    p_family.add_argument("--json", action="store_true")
    p_family.set_defaults(func=_cmd_family)

    p_search = sub.add_parser("search-open", help="search sigma(n) = 2n + 11")
    p_search.add_argument("--limit", type=int, required=True)
    p_search.add_argument("--no-prefilter", action="store_true")
    p_search.add_argument("--json", action="store_true")
    p_search.set_defaults(func=_cmd_search_open)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument(
        "suite", nargs="?", default="all", choices=["all"] + sorted(SUITES)
    )
    p_verify.add_argument("--max-order", type=int, default=15, dest="max_order")
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Sigma1Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
