"""Command-line interface: eval | hierarchy | render.

Exit codes: 0 clean, 1 error (I/O or schema, with the field path),
2 ambiguity flags present, 3 hierarchy violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from typing import Optional

from .body import ConvexBody
from .constructions import NAMED_PAIR_BUILDERS, named_pair
from .crossing import CrossingReport, crossing_report, extract_ears
from .geom import GeometryError, Point2
from .raster import referee_crossing_agrees
from .shapes import SchemaError, load_shape_file, parse_shape, select_pair
from .tangency import CommonSupportingLine, EvalConfig
from . import hierarchy as hier
from . import svgout


def _point_json(p: Point2) -> list[float]:
    return [p.x, p.y]


def _line_json(line: CommonSupportingLine) -> dict:
    return {
        "alpha_deg": math.degrees(line.alpha),
        "offset": line.line.offset,
        "from_interval": line.from_interval,
        "contact_d": {
            "first": _point_json(line.contact_d.first),
            "last": _point_json(line.contact_d.last),
            "segment": line.contact_d.is_segment,
        },
        "contact_l": {
            "first": _point_json(line.contact_l.first),
            "last": _point_json(line.contact_l.last),
            "segment": line.contact_l.is_segment,
        },
        "first": {"point": _point_json(line.first.point), "class": line.first.owner_class},
        "last": {"point": _point_json(line.last.point), "class": line.last.owner_class},
    }


def report_document(
    name: str,
    report: CrossingReport,
    oracle: Optional[tuple[int, int]] = None,
    timing: Optional[float] = None,
) -> dict:
    doc = {
        "pair": name,
        "predicates": {
            "d_slides_across_l": report.d_slides_across_l,
            "l_slides_across_d": report.l_slides_across_d,
            "both_slide": report.both_slide,
            "either_slides": report.either_slides,
            "crossing": report.crossing,
        },
        "components": {
            "d_minus_l": report.components_d_minus_l,
            "l_minus_d": report.components_l_minus_d,
        },
        "flags": sorted(report.flags),
        "notes": list(report.notes),
        "witnesses_dl": [math.degrees(w.alpha) for w in report.witnesses_dl],
        "witnesses_ld": [math.degrees(w.alpha) for w in report.witnesses_ld],
        "lines": [_line_json(l) for l in report.lines],
        "intervals": [
            {
                "start_deg": math.degrees(iv.alpha_start),
                "end_deg": math.degrees(iv.alpha_end),
                "full_circle": iv.full_circle,
            }
            for iv in report.intervals
        ],
    }
    if oracle is not None:
        counts, agrees = oracle
        doc["oracle"] = {
            "d_minus_l": counts[0],
            "l_minus_d": counts[1],
            "crossing": counts[0] >= 2 and counts[1] >= 2,
            "agrees_on_crossing": agrees,
        }
    if timing is not None:
        doc["elapsed_seconds"] = timing
    return doc


def _human_report(doc: dict) -> str:
    p = doc["predicates"]
    angles = ", ".join(f"{l['alpha_deg']:.3f}deg" for l in doc["lines"])
    lines = [
        f"pair: {doc['pair']}",
        f"  slides D over L : {p['d_slides_across_l']}",
        f"  slides L over D : {p['l_slides_across_d']}",
        f"  both slide      : {p['both_slide']}",
        f"  either slides   : {p['either_slides']}",
        f"  crossing        : {p['crossing']}",
        f"  components      : D\\L={doc['components']['d_minus_l']} "
        f"L\\D={doc['components']['l_minus_d']}",
        f"  supporting lines: {len(doc['lines'])} ({angles})",
    ]
    if doc["intervals"]:
        lines.append(f"  zero intervals  : {len(doc['intervals'])}")
    if doc["flags"]:
        lines.append(f"  flags           : {', '.join(doc['flags'])}")
    if doc["notes"]:
        lines.append(f"  notes           : {'; '.join(doc['notes'])}")
    if "oracle" in doc:
        o = doc["oracle"]
        lines.append(
            f"  oracle          : D\\L={o['d_minus_l']} L\\D={o['l_minus_d']} "
            f"crossing={o['crossing']} agrees={o['agrees_on_crossing']}"
        )
    return "\n".join(lines)


def _make_config(args) -> EvalConfig:
    kwargs = {}
    if getattr(args, "grid_n", None):
        kwargs["grid_n"] = args.grid_n
    if getattr(args, "tol", None):
        kwargs["tol"] = args.tol
    return EvalConfig(**kwargs)


def _resolve_pair(args) -> tuple[str, ConvexBody, ConvexBody]:
    if args.named:
        pair = named_pair(args.named)
        return pair.name, pair.d, pair.l
    if not args.shape_file:
        raise SchemaError("$", "pass a shape file or --named NAME")
    with open(args.shape_file, "r", encoding="utf-8") as fh:
        sf = load_shape_file(fh.read())
    return select_pair(sf, args.pair)


def cmd_eval(args) -> int:
    t0 = time.time()
    cfg = _make_config(args)
    name, d_body, l_body = _resolve_pair(args)
    report = crossing_report(d_body, l_body, cfg)
    oracle = None
    if args.oracle:
        agrees, counts = referee_crossing_agrees(
            d_body, l_body, report.crossing, args.oracle_n
        )
        oracle = (counts, agrees)
    timing = time.time() - t0 if args.timing else None
    doc = report_document(name, report, oracle, timing)
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        print(_human_report(doc))
    if args.csv:
        _write_summary_csv(args.csv, [(name, report)])
    if args.figure:
        from .figures import save_pair_figure

        save_pair_figure(args.figure, name, d_body, l_body, report, report.lines)
    return 2 if report.flags else 0


def _write_summary_csv(path: str, rows: list[tuple[str, CrossingReport]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(
            [
                "pair",
                "d_slides_across_l",
                "l_slides_across_d",
                "both_slide",
                "either_slides",
                "crossing",
                "components_d_minus_l",
                "components_l_minus_d",
                "flags",
            ]
        )
        for name, rep in rows:
            w.writerow(
                [
                    name,
                    rep.d_slides_across_l,
                    rep.l_slides_across_d,
                    rep.both_slide,
                    rep.either_slides,
                    rep.crossing,
                    rep.components_d_minus_l,
                    rep.components_l_minus_d,
                    "|".join(sorted(rep.flags)),
                ]
            )


def cmd_hierarchy(args) -> int:
    cfg = _make_config(args)
    only = named_pair(args.only) if args.only else None
    result = hier.run_suite(
        random_pairs=args.random,
        seed=args.seed,
        cfg=cfg,
        include_catalog=not args.only,
        only_pair=only,
        referee_sample=args.oracle_sample,
        referee_n=args.oracle_n,
    )
    separation_problems = [] if args.only else hier.check_strict_separations(cfg)
    summary = {
        "pairs": len(result.records),
        "ambiguous": len(result.ambiguous_labels),
        "ambiguous_fraction": result.ambiguous_fraction,
        "violations": result.violations,
        "separation_problems": separation_problems,
        "referee_checked": result.referee_checked,
        "referee_agreement": result.referee_agreement(),
        "referee_unresolved": result.referee_unresolved,
        "seed": args.seed,
    }
    print(json.dumps(summary, sort_keys=True) if args.json else _human_summary(summary))
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        rows = [
            (r.label, r.report)
            for r in result.records
            if r.report is not None
        ]
        _write_summary_csv(os.path.join(args.out_dir, "summary.csv"), rows)
        from .constructions import catalog_pairs
        from .figures import save_pair_figure

        if not args.only:
            for pair in catalog_pairs():
                rep = crossing_report(pair.d, pair.l, cfg)
                save_pair_figure(
                    os.path.join(args.out_dir, f"{pair.name}.png"),
                    pair.name,
                    pair.d,
                    pair.l,
                    rep,
                    rep.lines,
                )
        if result.offending:
            replay = [
                {"label": label, "d": _body_record(d), "l": _body_record(l)}
                for label, d, l in result.offending
            ]
            with open(
                os.path.join(args.out_dir, "violations.json"), "w", encoding="utf-8"
            ) as fh:
                json.dump(replay, fh, indent=2, sort_keys=True)
    ok = result.ok and not separation_problems
    return 0 if ok else 3


def _body_record(body: ConvexBody) -> dict:
    verts = body._polygon_vertices
    if verts is not None:
        return {"kind": "polygon", "vertices": [[float(x), float(y)] for x, y in verts]}
    return {"kind": "pieces", "note": "non-polygonal body", "repr": repr(body)}


def _human_summary(s: dict) -> str:
    lines = [
        f"pairs evaluated : {s['pairs']}",
        f"ambiguous       : {s['ambiguous']} ({100*s['ambiguous_fraction']:.3f}%)",
        f"violations      : {len(s['violations'])}",
    ]
    for v in s["violations"]:
        lines.append(f"  ! {v}")
    for v in s["separation_problems"]:
        lines.append(f"  ! {v}")
    if s["referee_checked"]:
        lines.append(
            f"referee         : {s['referee_checked']} pairs, "
            f"agreement {100*s['referee_agreement']:.3f}%, "
            f"unresolved {len(s['referee_unresolved'])}"
        )
    lines.append("hierarchy check : " + ("PASS" if not s["violations"] and not s["separation_problems"] and not s["referee_unresolved"] else "FAIL"))
    return "\n".join(lines)


def cmd_render(args) -> int:
    cfg = _make_config(args)
    bodies: list[tuple[str, ConvexBody]]
    lines: list[CommonSupportingLine] = []
    ears = []
    if args.named:
        pair = named_pair(args.named)
        bodies = [("D", pair.d), ("L", pair.l)]
    else:
        if not args.shape_file:
            raise SchemaError("$", "pass a shape file or --named NAME")
        with open(args.shape_file, "r", encoding="utf-8") as fh:
            sf = load_shape_file(fh.read())
        if len(sf.shapes) == 1 and sf.shapes[0].get("kind") != "named":
            bodies = [("D", parse_shape(sf.shapes[0], "shapes[0]"))]
        else:
            name, d_body, l_body = select_pair(sf, args.pair)
            bodies = [("D", d_body), ("L", l_body)]
    if len(bodies) == 2 and not args.no_lines:
        report = crossing_report(bodies[0][1], bodies[1][1], cfg)
        lines = list(report.lines)
        if args.ears and report.witnesses_dl:
            ears = list(extract_ears(bodies[0][1], bodies[1][1], report.witnesses_dl[0], cfg))
    svg = svgout.render_svg(bodies, lines, ears, width=args.width, title=args.named or "shapes")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crosskit",
        description="Crossing relations between planar compact convex bodies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--grid-n", type=int, default=None,
                        help="angular grid size for line enumeration "
                             "(default 4096 or CROSSKIT_DEFAULT_GRID)")
        sp.add_argument("--tol", type=float, default=None, help="membership band")

    pe = sub.add_parser("eval", help="evaluate the crossing predicates for a pair")
    pe.add_argument("shape_file", nargs="?", help="shape file (JSON)")
    pe.add_argument("--named", choices=sorted(NAMED_PAIR_BUILDERS), help="built-in pair")
    pe.add_argument("--pair", help='selector: "i,j" indexes or a named record')
    common(pe)
    pe.add_argument("--oracle", action="store_true", help="also run the raster referee")
    pe.add_argument("--oracle-n", type=int, default=2048, help="referee resolution")
    pe.add_argument("--json", action="store_true", help="machine-readable output")
    pe.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    pe.add_argument("--csv", help="write a one-row delimited summary here")
    pe.add_argument("--figure", help="write a PNG figure of the pair here")

    ph = sub.add_parser("hierarchy", help="verify the predicate hierarchy")
    ph.add_argument("--random", type=int, default=10_000, help="random pair count")
    ph.add_argument("--seed", type=int, default=1)
    common(ph)
    ph.add_argument("--only", choices=sorted(NAMED_PAIR_BUILDERS),
                    help="restrict the suite to one named pair")
    ph.add_argument("--oracle-sample", type=int, default=0,
                    help="run the raster referee on the first N random pairs")
    ph.add_argument("--oracle-n", type=int, default=2048)
    ph.add_argument("--json", action="store_true")
    ph.add_argument("--out-dir", help="write summary.csv, figures, violations.json here")

    pr = sub.add_parser("render", help="render shapes to deterministic SVG")
    pr.add_argument("shape_file", nargs="?", help="shape file (JSON)")
    pr.add_argument("--named", choices=sorted(NAMED_PAIR_BUILDERS))
    pr.add_argument("--pair", help='selector: "i,j" indexes or a named record')
    common(pr)
    pr.add_argument("--width", type=float, default=640.0)
    pr.add_argument("--no-lines", action="store_true", help="skip supporting lines")
    pr.add_argument("--ears", action="store_true", help="shade the witness ears")
    pr.add_argument("--out", help="output file (default stdout)")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "hierarchy":
            return cmd_hierarchy(args)
        if args.command == "render":
            return cmd_render(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GeometryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())
