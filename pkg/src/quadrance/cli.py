"""Command-line front end: every verification and construction as a
reproducible batch command with a deterministic JSON/TSV/text report.

Exit codes: 0 all checks passed or construction feasible, 1 a verified
false result, 2 invalid input, 3 usage error.  Identical invocations
produce byte-identical reports; timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .errors import QuadranceError
from .field import (
    CHAR_COUNT_CORRECTION_NOTE,
    build_field,
    build_field_for_q,
    char_pair_counts,
)
from .geometry import (
    DISCRIMINANT_NOTE,
    CircleSpec,
    Point,
    circle_points,
    count_admissible_k,
    intersect_circles,
    intersection_by_enumeration,
    quadrance,
)
from .graph import (
    build_graph,
    conjecture_check,
    max_clique,
    random_subset_trials,
    srg_params,
)
from .polygon import (
    build_polygon,
    feasibility_table_rows,
    quadrangle_feasibility_table,
    verify_polygon,
)
from .scheme import (
    FUSION_LABEL_NOTE,
    build_quadrance_scheme,
    fuse_scheme,
    predicted_tensor,
    verify_scheme,
)

USAGE_ERROR = 3
INVALID_INPUT = 2
CHECK_FAILED = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv", "text"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")

    parser = _Parser(prog="quadrance", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("field", parents=[common], help="build F_q and check the character pair counts")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, default=1)

    p = sub.add_parser("circle", parents=[common], help="enumerate one circle")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--center", required=True, metavar="X,Y")
    p.add_argument("--class", dest="klass", required=True, metavar="K|null")

    p = sub.add_parser("intersect", parents=[common], help="intersect two circles")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--x1", type=int, required=True)
    p.add_argument("--y1", type=int, required=True)
    p.add_argument("--x2", type=int, required=True)
    p.add_argument("--y2", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)

    p = sub.add_parser("polygon", parents=[common], help="build a polygon with given side quadrances")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--quadrances", required=True, metavar="a1,a2,...")

    p = sub.add_parser(
        "admissible",
        parents=[common],
        help="count diagonal quadrances with square-or-zero discriminant",
    )
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)

    p = sub.add_parser("scheme", help="association scheme checks")
    scheme_sub = p.add_subparsers(dest="scheme_command", required=True, parser_class=_Parser)
    pv = scheme_sub.add_parser("verify", parents=[common], help="brute-force the scheme axioms")
    pv.add_argument("--q", type=int, required=True)
    pv.add_argument("--fuse", type=int, default=None, metavar="T")
    pt = scheme_sub.add_parser("tensor", parents=[common], help="computed against predicted tensor")
    pt.add_argument("--q", type=int, required=True)

    p = sub.add_parser("graph", help="quadrance graph checks")
    graph_sub = p.add_subparsers(dest="graph_command", required=True, parser_class=_Parser)
    pg = graph_sub.add_parser("srg", parents=[common], help="strongly regular parameters by counting")
    pg.add_argument("--q", type=int, required=True)
    ps = graph_sub.add_parser("subsets", parents=[common], help="edge-deviation bound on random subsets")
    ps.add_argument("--q", type=int, required=True)
    ps.add_argument("--trials", type=int, default=1000)
    ps.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("clique", parents=[common], help="exact maximum clique and independent set")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--force", action="store_true", help="lift the default size bound")

    p = sub.add_parser("conjecture", parents=[common], help="are all maximum witnesses lines?")
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser(
        "quadrangle-table", parents=[common], help="exhaustive quadrangle feasibility table"
    )
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--force", action="store_true", help="lift the default size bound")

    return parser


def _parse_point(text: str, q: int) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise QuadranceError(f"expected X,Y coordinates, got {text!r}")
    x, y = (int(t) for t in parts)
    if not (0 <= x < q and 0 <= y < q):
        raise QuadranceError(f"coordinates {text!r} out of range for q={q}")
    return Point(x, y)


def _parse_elements(text: str, q: int) -> list[int]:
    values = [int(t) for t in text.split(",") if t != ""]
    for v in values:
        if not 0 <= v < q:
            raise QuadranceError(f"element {v} out of range for q={q}")
    return values


def _element_in_range(v: int, q: int) -> int:
    if not 0 <= v < q:
        raise QuadranceError(f"element {v} out of range for q={q}")
    return v


# -- subcommand handlers: each returns (passed, result, notes, tsv_rows) ----


def _cmd_field(ctx, args):
    report = char_pair_counts(ctx)
    result = {
        "char_pair_counts": dict(zip("abcd", report.counts.as_tuple())),
        "predicted": dict(zip("abcd", report.predicted.as_tuple())),
        "match": report.match,
    }
    return report.match, result, list(report.notes), None


def _cmd_circle(ctx, args):
    center = _parse_point(args.center, ctx.q)
    if args.klass == "null":
        klass = ctx.q
    else:
        klass = _element_in_range(int(args.klass), ctx.q)
    points = circle_points(ctx, CircleSpec(center, klass))
    if klass == 0:
        expected = 1
    elif klass == ctx.q:
        expected = 2 * (ctx.q - 1)
    else:
        expected = ctx.q + 1 if ctx.residue_class == 3 else ctx.q - 1
    result = {
        "center": [center.x, center.y],
        "klass": "null" if klass == ctx.q else klass,
        "count": len(points),
        "expected_count": expected,
        "match": len(points) == expected,
        "points": [[p.x, p.y] for p in points],
    }
    return result["match"], result, [], None


def _cmd_intersect(ctx, args):
    a = Point(_element_in_range(args.x1, ctx.q), _element_in_range(args.y1, ctx.q))
    b = Point(_element_in_range(args.x2, ctx.q), _element_in_range(args.y2, ctx.q))
    i = _element_in_range(args.i, ctx.q)
    j = _element_in_range(args.j, ctx.q)
    points = intersect_circles(ctx, a, i, b, j)
    brute = intersection_by_enumeration(ctx, a, i, b, j)
    k = quadrance(ctx, a, b)
    result = {
        "centers": [[a.x, a.y], [b.x, b.y]],
        "i": i,
        "j": j,
        "k": k,
        "count": len(points),
        "brute_force_count": len(brute),
        "match": points == brute,
        "points": [[p.x, p.y] for p in points],
    }
    return result["match"], result, [DISCRIMINANT_NOTE], None


def _cmd_polygon(ctx, args):
    quads = _parse_elements(args.quadrances, ctx.q)
    result = build_polygon(ctx, quads)
    verified = (
        verify_polygon(ctx, result.vertices, quads) if result.feasible else None
    )
    payload = result.to_json(ctx)
    payload["verified"] = verified
    payload["certificate"] = result.certificate
    return result.feasible, payload, [DISCRIMINANT_NOTE] + result.notes, None


def _cmd_admissible(ctx, args):
    i = _element_in_range(args.i, ctx.q)
    j = _element_in_range(args.j, ctx.q)
    count, values = count_admissible_k(ctx, i, j)
    if ctx.residue_class == 3:
        closed = (ctx.q + 3) // 2 if ctx.chi(ctx.mul(i, j)) == 1 else (ctx.q + 1) // 2
        match = count == closed
    else:
        closed = None
        match = count >= (ctx.q - 1) // 2
    result = {
        "i": i,
        "j": j,
        "count": count,
        "values": values,
        "closed_form": closed,
        "match": match,
    }
    return match, result, [DISCRIMINANT_NOTE], None


def _cmd_scheme_verify(ctx, args):
    cm = build_quadrance_scheme(ctx)
    notes = [DISCRIMINANT_NOTE]
    if ctx.residue_class == 1:
        notes.append(CHAR_COUNT_CORRECTION_NOTE)
    if args.fuse is not None:
        cm = fuse_scheme(ctx, cm, args.fuse)
        notes.append(FUSION_LABEL_NOTE)
    report = verify_scheme(ctx, cm)
    passed = report.valid and report.predicted_match is not False
    return passed, report.to_json(cm), notes + report.notes, None


def _cmd_scheme_tensor(ctx, args):
    cm = build_quadrance_scheme(ctx)
    report = verify_scheme(ctx, cm)
    kind = "quadrance_q3" if ctx.residue_class == 3 else "quadrance_q1"
    predicted = predicted_tensor(ctx, kind)
    match = report.tensor.values == predicted.values
    result = {
        "q": ctx.q,
        "classes": list(cm.labels),
        "tensor": report.tensor.as_lists(),
        "predicted_tensor": predicted.as_lists(),
        "match": match,
        "valid": report.valid,
    }
    s = len(cm.labels)
    rows = [["i", "j", "k", "computed", "predicted"]]
    for i in range(s):
        for j in range(s):
            for k in range(s):
                rows.append(
                    [i, j, k, report.tensor.values[i][j][k], predicted.values[i][j][k]]
                )
    return match and report.valid, result, [DISCRIMINANT_NOTE], rows


def _cmd_graph_srg(ctx, args):
    graph = build_graph(ctx)
    params = srg_params(graph)
    n = graph.n
    expected = [n, (n - 1) // 2, (n - 5) // 4, (n - 1) // 4]
    result = {
        "q": ctx.q,
        "srg": params.as_list(),
        "expected": expected,
        "identity_holds": params.identity_holds(),
        "match": params.as_list() == expected,
    }
    return result["match"] and result["identity_holds"], result, [], None


def _cmd_graph_subsets(ctx, args):
    graph = build_graph(ctx)
    trials = random_subset_trials(graph, args.trials, args.seed)
    result = {"q": ctx.q, "subset_trials": trials}
    return trials["all_hold"], result, [], None


def _cmd_clique(ctx, args):
    graph = build_graph(ctx)
    report = max_clique(graph, enumerate_all=args.enumerate, force=args.force)
    independent = report.independent_counterpart
    result = {
        "q": ctx.q,
        "expected_omega": ctx.q,
        "clique": report.to_json(),
    }
    passed = report.omega == ctx.q and independent.omega == ctx.q
    return passed, result, [], None


def _cmd_conjecture(ctx, args):
    result = conjecture_check(ctx)
    return result["conjecture_consistent"], result, [], None


def _cmd_quadrangle_table(ctx, args):
    table = quadrangle_feasibility_table(ctx, max_q=1000 if args.force else 13)
    rows_json = feasibility_table_rows(table)
    feasible = sum(1 for r in rows_json if r["feasible"])
    result = {
        "q": ctx.q,
        "canonical_tuples": len(rows_json),
        "feasible_count": feasible,
        "infeasible_count": len(rows_json) - feasible,
        "rows": rows_json,
    }
    rows = [["a1", "a2", "a3", "a4", "feasible"]]
    for r in rows_json:
        rows.append(r["quadrances"] + [int(r["feasible"])])
    return True, result, [DISCRIMINANT_NOTE], rows


_HANDLERS = {
    "field": _cmd_field,
    "circle": _cmd_circle,
    "intersect": _cmd_intersect,
    "polygon": _cmd_polygon,
    "admissible": _cmd_admissible,
    ("scheme", "verify"): _cmd_scheme_verify,
    ("scheme", "tensor"): _cmd_scheme_tensor,
    ("graph", "srg"): _cmd_graph_srg,
    ("graph", "subsets"): _cmd_graph_subsets,
    "clique": _cmd_clique,
    "conjecture": _cmd_conjecture,
    "quadrangle-table": _cmd_quadrangle_table,
}

_TSV_COMMANDS = {("scheme", "tensor"), "quadrangle-table"}


def _handler_key(args):
    if args.command == "scheme":
        return ("scheme", args.scheme_command)
    if args.command == "graph":
        return ("graph", args.graph_command)
    return args.command


def _resolved_config(args) -> dict:
    config = {k: v for k, v in sorted(vars(args).items())}
    return config


def _render_text(report: dict) -> str:
    lines = [f"{report['tool']} {report['version']} :: {report['command']}"]
    lines.append(f"status: {report['status']}")
    lines.append(f"field: {json.dumps(report['field'], sort_keys=True)}")
    for note in report["notes"]:
        lines.append(f"note: {note}")
    lines.append(json.dumps(report["result"], sort_keys=True, indent=2))
    return "\n".join(lines) + "\n"


def _render_tsv(rows: list) -> str:
    return "".join("\t".join(str(c) for c in row) + "\n" for row in rows)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    """Parse argv, execute one subcommand, write one report document."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR

    key = _handler_key(args)
    if args.format == "tsv" and key not in _TSV_COMMANDS:
        sys.stderr.write(
            "quadrance: error: tsv is available for tensors and feasibility "
            "tables only\n"
        )
        return USAGE_ERROR

    started = time.perf_counter()
    try:
        if args.command == "field":
            ctx = build_field(args.p, args.e)
        else:
            ctx = build_field_for_q(args.q)
        passed, result, notes, tsv_rows = _HANDLERS[key](ctx, args)
    except QuadranceError as exc:
        sys.stderr.write(f"quadrance: error: {exc}\n")
        return INVALID_INPUT
    elapsed = time.perf_counter() - started

    command = key if isinstance(key, str) else " ".join(key)
    report = {
        "tool": "quadrance",
        "version": __version__,
        "command": command,
        "config": _resolved_config(args),
        "field": ctx.describe(),
        "notes": sorted(set(notes)),
        "result": result,
        "status": "pass" if passed else "fail",
    }
    if args.format == "json":
        _emit(json.dumps(report, sort_keys=True, indent=2) + "\n", args.output)
    elif args.format == "text":
        _emit(_render_text(report), args.output)
    else:
        _emit(_render_tsv(tsv_rows), args.output)
    sys.stderr.write(f"wall-time: {elapsed:.3f}s\n")
    return 0 if passed else CHECK_FAILED


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
