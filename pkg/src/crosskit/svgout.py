"""Deterministic SVG rendering of bodies, supporting lines and ears.

Output is plain text assembled with fixed float formatting, so a given
input always produces byte-identical SVG.  Bodies render one path per
boundary piece (tagged with data attributes naming the piece kind), a
disk renders as a circle element, supporting lines carry a full
arrowhead for the direction and a half arrowhead marking the left
half-plane, and difference regions are shaded in two tones with the
overlap cut out via a clip path.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional

from .body import CircularArc, ConvexBody, EllipseArc, GraphArc, Segment
from .crossing import Ear
from .geom import Point2, unit_vector
from .tangency import CommonSupportingLine

_BODY_TONES = ("#4a6fa5", "#d9b44a")  # dark (first body), light (second body)
_OVERLAP_TONE = "#9aa48c"
_EAR_TONES = {"D": "#31487a", "L": "#c19a2e"}
_LINE_COLOR = "#333333"
_CURVE_SAMPLES = 64


def _fmt(x: float) -> str:
    v = 0.0 if abs(x) < 5e-7 else x
    return f"{v:.6f}"


class _Canvas:
    """Maps world coordinates to a y-down SVG viewport."""

    def __init__(self, bodies: list[ConvexBody], width: float = 640.0, margin: float = 0.08):
        boxes = [b.bounding_box() for b in bodies]
        xmin = min(b[0] for b in boxes)
        ymin = min(b[1] for b in boxes)
        xmax = max(b[2] for b in boxes)
        ymax = max(b[3] for b in boxes)
        mx = margin * max(xmax - xmin, 1e-9)
        my = margin * max(ymax - ymin, 1e-9)
        self.xmin, self.xmax = xmin - mx, xmax + mx
        self.ymin, self.ymax = ymin - my, ymax + my
        self.scale = width / (self.xmax - self.xmin)
        self.width = width
        self.height = (self.ymax - self.ymin) * self.scale

    def pt(self, p: Point2) -> tuple[float, float]:
        return ((p.x - self.xmin) * self.scale, (self.ymax - p.y) * self.scale)

    def xy(self, p: Point2) -> str:
        x, y = self.pt(p)
        return f"{_fmt(x)},{_fmt(y)}"


def _piece_path_d(canvas: _Canvas, piece, move: bool) -> str:
    parts: list[str] = []
    if move:
        parts.append("M " + canvas.xy(piece.start))
    if isinstance(piece, Segment):
        parts.append("L " + canvas.xy(piece.end))
        return " ".join(parts)
    steps = _CURVE_SAMPLES
    for k in range(1, steps + 1):
        parts.append("L " + canvas.xy(piece.point_at(k / steps)))
    return " ".join(parts)


def _body_outline_d(canvas: _Canvas, body: ConvexBody) -> str:
    parts = []
    for i, piece in enumerate(body.pieces):
        parts.append(_piece_path_d(canvas, piece, move=(i == 0)))
    return " ".join(parts) + " Z"


def _piece_kind(piece) -> tuple[str, str]:
    if isinstance(piece, Segment):
        return "segment", ""
    if isinstance(piece, CircularArc):
        return "circular_arc", ""
    if isinstance(piece, GraphArc):
        return "graph_arc", piece.curve
    if isinstance(piece, EllipseArc):
        return "ellipse", ""
    return "unknown", ""


def _render_body(canvas: _Canvas, body: ConvexBody, name: str, tone: str) -> list[str]:
    out = [f'<g class="body" data-name="{name}">']
    if len(body.pieces) == 1 and isinstance(body.pieces[0], CircularArc) and body.pieces[0].is_full_circle:
        arc = body.pieces[0]
        cx, cy = canvas.pt(arc.center)
        out.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(arc.radius * canvas.scale)}" '
            f'fill="none" stroke="{tone}" stroke-width="2"/>'
        )
    else:
        for i, piece in enumerate(body.pieces):
            kind, curve = _piece_kind(piece)
            curve_attr = f' data-curve="{curve}"' if curve else ""
            d = _piece_path_d(canvas, piece, move=True)
            out.append(
                f'<path data-kind="{kind}"{curve_attr} data-piece="{i}" d="{d}" '
                f'fill="none" stroke="{tone}" stroke-width="2"/>'
            )
    out.append("</g>")
    return out


def _render_supporting_line(
    canvas: _Canvas, line: CommonSupportingLine, index: int
) -> list[str]:
    # Clip the infinite line to a generous span around the contact points.
    u = unit_vector(line.alpha)
    anchor = line.first.point
    span = 0.6 * (canvas.xmax - canvas.xmin) + 0.6 * (canvas.ymax - canvas.ymin)
    ax, ay = canvas.pt(anchor - span * u)
    bx, by = canvas.pt(anchor + span * u)
    mx, my = canvas.pt(anchor + 0.25 * span * u)
    deg = math.degrees(math.atan2(by - ay, bx - ax))
    return [
        f'<g class="supporting-line" data-index="{index}" data-alpha="{_fmt(line.alpha)}">',
        f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
        f'stroke="{_LINE_COLOR}" stroke-width="1" stroke-dasharray="6,3" '
        'marker-end="url(#arrowhead)"/>',
        # Half arrowhead at a fixed offset along the line; the barb points
        # into the left half-plane (up in world coordinates relative to
        # the direction, which is -y in the flipped SVG frame).
        f'<path class="half-arrow" transform="translate({_fmt(mx)} {_fmt(my)}) '
        f'rotate({_fmt(deg)})" d="M 0 0 L -10 0 L 0 -7 Z" fill="{_LINE_COLOR}"/>',
        "</g>",
    ]


def _render_ear(canvas: _Canvas, ear: Ear, owner_body: ConvexBody, other_body: ConvexBody) -> str:
    pts: list[str] = []
    period = owner_body.param_period
    steps = _CURVE_SAMPLES
    for k in range(steps + 1):
        s = (ear.dark_start + ear.dark_width * k / steps) % period
        pts.append(canvas.xy(owner_body.boundary_point(s)))
    other_period = other_body.param_period
    for k in range(steps + 1):
        s = (ear.light_start + ear.light_width * (1.0 - k / steps)) % other_period
        pts.append(canvas.xy(other_body.boundary_point(s)))
    d = "M " + " L ".join(pts) + " Z"
    tone = _EAR_TONES[ear.owner]
    return f'<path class="ear" data-owner="{ear.owner}" d="{d}" fill="{tone}" fill-opacity="0.45" stroke="none"/>'


def render_svg(
    bodies: list[tuple[str, ConvexBody]],
    lines: Iterable[CommonSupportingLine] = (),
    ears: Iterable[Ear] = (),
    width: float = 640.0,
    title: Optional[str] = None,
) -> str:
    """Render bodies plus optional supporting lines and ears to SVG text."""
    canvas = _Canvas([b for _, b in bodies], width)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(canvas.width)}" '
        f'height="{_fmt(canvas.height)}" viewBox="0 0 {_fmt(canvas.width)} {_fmt(canvas.height)}">',
        "<defs>",
        '<marker id="arrowhead" markerWidth="10" markerHeight="8" refX="9" refY="4" orient="auto">',
        f'<path d="M 0 0 L 10 4 L 0 8 Z" fill="{_LINE_COLOR}"/>',
        "</marker>",
        "</defs>",
    ]
    if title:
        out.append(f"<title>{title}</title>")

    # Two-tone difference shading: first body dark, second light, overlap
    # in a third tone via a clip path.
    if len(bodies) == 2 and all(b.pieces for _, b in bodies):
        (name_d, body_d), (name_l, body_l) = bodies
        d_outline = _body_outline_d(canvas, body_d)
        l_outline = _body_outline_d(canvas, body_l)
        out.append(f'<clipPath id="clip-l"><path d="{l_outline}"/></clipPath>')
        out.append(f'<path class="fill" data-name="{name_d}" d="{d_outline}" fill="{_BODY_TONES[0]}" fill-opacity="0.55"/>')
        out.append(f'<path class="fill" data-name="{name_l}" d="{l_outline}" fill="{_BODY_TONES[1]}" fill-opacity="0.55"/>')
        out.append(
            f'<path class="fill overlap" d="{d_outline}" clip-path="url(#clip-l)" '
            f'fill="{_OVERLAP_TONE}" fill-opacity="0.9"/>'
        )
        for ear in ears:
            owner_body = body_d if ear.owner == "D" else body_l
            other_body = body_l if ear.owner == "D" else body_d
            out.append(_render_ear(canvas, ear, owner_body, other_body))

    for (name, body), tone in zip(bodies, _BODY_TONES):
        out.extend(_render_body(canvas, body, name, tone))
    for i, line in enumerate(lines):
        out.extend(_render_supporting_line(canvas, line, i))
    out.append("</svg>")
    return "\n".join(out) + "\n"
