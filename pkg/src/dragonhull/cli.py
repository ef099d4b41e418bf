"""Command line front end.

Subcommands: generate (vertex tables), render (SVG), verify (set
verification suites with JSON reports), thresholds (critical-angle
recovery table), table-lemma11 (the gap-clearance table).  The report
commands can also save a matplotlib figure next to their delimited
output.

Exit codes: 0 success, 1 usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import __version__
from .params import params_from_alpha
from .polygon import generate_recursive
from .hull import build_hull, boundary_polyline, transform_hull
from .polygon import make_pi0, make_pi1
from .checks import (
    VerificationReport,
    condition_catalog,
    evaluate_condition,
    find_threshold,
    lemma11_table,
    verify_hull_invariance,
    verify_polygon_in_hull,
    verify_separation,
)
from .intersect import empirical_critical_angle, find_contacts, theorem1_boundary_checks

SUITES = ("hull-invariance", "containment", "separation", "theorem1", "all")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="dragonhull",
                     description="Folded polygons, their spiral hull, and the "
                                 "critical-angle checks.")
    parser.add_argument("--version", action="version", version=f"dragonhull {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write polygon vertices as TSV or JSON")
    p.add_argument("--alpha", type=float, required=True, help="unfolding angle in degrees")
    p.add_argument("--level", type=int, required=True, help="refinement level n")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("render", help="render the polygon (and overlays) to SVG")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--hull", action="store_true", help="overlay the hull boundary")
    p.add_argument("--split", action="store_true",
                   help="overlay the two mapped hull images")
    p.add_argument("--contacts", action="store_true",
                   help="mark self-contact events")
    p.add_argument("--out", default="dragonhull.svg")

    p = sub.add_parser("verify", help="run set-verification suites")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--level", type=int, default=12, help="polygon level for containment")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--samples-per-turn", type=int, default=720)
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.add_argument("--figure", default=None, help="save a matplotlib figure here")

    p = sub.add_parser("thresholds", help="recover every catalogued critical angle")
    p.add_argument("--tol", type=float, default=1e-6, help="bisection tolerance (deg)")
    p.add_argument("--empirical-level", type=int, default=10)
    p.add_argument("--no-empirical", action="store_true",
                   help="skip the empirical crossing-angle search")
    p.add_argument("--out", default=None, help="write the TSV table here")
    p.add_argument("--figure", default=None, help="save residual curves here")

    p = sub.add_parser("table-lemma11", help="print the gap-clearance table")
    p.add_argument("--out", default=None, help="write the TSV table here")
    p.add_argument("--figure", default=None, help="save the crossover figure here")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _cmd_generate(args) -> int:
    params = params_from_alpha(args.alpha)
    poly = generate_recursive(args.level, params)
    if args.format == "tsv":
        lines = [f"{i}\t{x:.17g}\t{y:.17g}"
                 for i, (x, y) in enumerate(poly.vertices)]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        payload = {
            "alpha_deg": args.alpha,
            "level": args.level,
            "q": params.q,
            "vertices": [[i, float(x), float(y)]
                         for i, (x, y) in enumerate(poly.vertices)],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _cmd_render(args) -> int:
    from .svg import SvgCanvas

    params = params_from_alpha(args.alpha)
    poly = generate_recursive(args.level, params)
    canvas = SvgCanvas()
    stroke_width = 0.7 * params.q ** max(args.level - 4, 0)
    canvas.polyline(poly.vertices, width=stroke_width)
    if args.hull or args.split:
        hull = build_hull(params, warn_outside_window=False)
        if args.hull:
            canvas.path(boundary_polyline(hull, 360, 1e-6), width=stroke_width,
                        css_class="hull")
        if args.split:
            for sim, color in ((make_pi0(params), "#2c7c4f"), (make_pi1(params), "#7c2c6e")):
                canvas.path(boundary_polyline(transform_hull(hull, sim), 360, 1e-6),
                            stroke=color, width=stroke_width, css_class="hull-image")
    if args.contacts:
        report = find_contacts(poly)
        radius = 3.0 * params.q ** args.level
        for event in report.events:
            canvas.marker(event.location, radius)
    canvas.write(args.out)
    print(f"wrote {args.out}")
    return 0


def _report_to_dict(report: VerificationReport) -> dict:
    data = dataclasses.asdict(report)
    data["pass"] = data.pop("passed")
    return data


def _cmd_verify(args) -> int:
    params = params_from_alpha(args.alpha)
    wanted = SUITES[:-1] if args.suite == "all" else (args.suite,)
    reports = []
    for suite in wanted:
        if suite == "hull-invariance":
            reports.append(verify_hull_invariance(
                params, samples_per_turn=args.samples_per_turn, tol=args.tol))
        elif suite == "containment":
            reports.append(verify_polygon_in_hull(args.level, params, tol=args.tol))
        elif suite == "separation":
            reports.append(verify_separation(
                params, samples_per_turn=args.samples_per_turn, tol=args.tol))
        elif suite == "theorem1":
            t1 = theorem1_boundary_checks(max(args.level, 4), params)
            reports.append(VerificationReport(
                subject="theorem1",
                alpha_deg=params.alpha_deg,
                samples=4,
                min_margin=min(t1.start_clearance, t1.end_clearance,
                               t1.chord_slack, t1.radial_bound_slack),
                worst_point=(float("nan"), float("nan")),
                passed=t1.passed,
                details=dataclasses.asdict(t1),
            ))
    all_pass = all(r.passed for r in reports)
    payload = {
        "config": {
            "alpha_deg": args.alpha,
            "suite": args.suite,
            "level": args.level,
            "tol": args.tol,
            "samples_per_turn": args.samples_per_turn,
        },
        "reports": [_report_to_dict(r) for r in reports],
        "pass": all_pass,
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    if args.out is not None:
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            print(f"{r.subject}: {status} (min margin {r.min_margin:.3e})")
    if args.figure:
        from .plots import save_split_figure

        save_split_figure(args.figure, build_hull(params, warn_outside_window=False))
        print(f"wrote {args.figure}")
    return 0 if all_pass else 2


def _cmd_thresholds(args) -> int:
    lines = ["condition\tcritical_alpha\tcritical_q\tquoted"]
    markers = {}
    for cond in condition_catalog():
        if cond.alpha_bracket is None:
            lines.append(f"{cond.id}\t-\t-\t{cond.quoted}")
            continue
        result = find_threshold(cond.id, cond.alpha_bracket, args.tol)
        if cond.id in ("P3-main", "L11"):
            markers[cond.id] = result.critical_alpha_deg
        lines.append(f"{cond.id}\t{result.critical_alpha_deg:.4f}"
                     f"\t{result.critical_q:.7f}\t{cond.quoted}")
    if not args.no_empirical:
        bracket = empirical_critical_angle(args.empirical_level, (93.0, 97.0), 0.005)
        empirical_mid = 0.5 * (bracket.alpha_lo + bracket.alpha_hi)
        markers["empirical"] = empirical_mid
        lines.append(f"empirical-L{args.empirical_level}"
                     f"\t{empirical_mid:.4f}"
                     f"\t{params_from_alpha(empirical_mid).q:.7f}"
                     f"\tcrossings vanish near 95.126 (level {args.empirical_level})")
    lines.append("")
    lines.append("band\tdescription")
    low = markers.get("empirical", 95.126)
    l11 = markers.get("L11", 96.2405)
    main = markers.get("P3-main", 98.1941)
    lines.append(f"(90.000, {low:.3f}]\tcrossings observed at the probe level")
    lines.append(f"({low:.3f}, {l11:.3f})\tno verdict (uncertainty band)")
    lines.append(f"[{l11:.3f}, {main:.3f})\tgap clearance satisfied (conjectured safe)")
    lines.append(f"[{main:.3f}, 108.000]\tseparation proved (no intersections)")
    _emit("\n".join(lines) + "\n", args.out)
    if args.figure:
        from .plots import save_threshold_figure

        save_threshold_figure(args.figure, ("P3-main", "L11"), evaluate_condition,
                              markers={k: v for k, v in markers.items()})
        print(f"wrote {args.figure}")
    return 0


def _cmd_table_lemma11(args) -> int:
    rows = lemma11_table()
    lines = ["alpha(deg)\tbeta(deg)\tq\tleft side\tright side\tsatisfied"]
    for r in rows:
        lines.append(f"{r['alpha_deg']:.3f}\t{r['beta_deg']:.3f}\t{r['q']:.7f}"
                     f"\t{r['lhs']:.7f}\t{r['rhs']:.7f}"
                     f"\t{'TRUE' if r['satisfied'] else 'FALSE'}")
    _emit("\n".join(lines) + "\n", args.out)
    if args.figure:
        from .plots import save_lemma11_figure

        save_lemma11_figure(args.figure, rows)
        print(f"wrote {args.figure}")
    return 0


_HANDLERS = {
    "generate": _cmd_generate,
    "render": _cmd_render,
    "verify": _cmd_verify,
    "thresholds": _cmd_thresholds,
    "table-lemma11": _cmd_table_lemma11,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, IndexError) as exc:
        sys.stderr.write(f"dragonhull: error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
