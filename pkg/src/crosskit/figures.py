"""Matplotlib figures for the report path (PNG files next to CSV output)."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .body import ConvexBody
from .crossing import CrossingReport, Ear
from .geom import unit_vector
from .tangency import CommonSupportingLine

_SAMPLES_PER_PIECE = 96


def _boundary_xy(body: ConvexBody) -> tuple[np.ndarray, np.ndarray]:
    xs: list[np.ndarray] = []
    ys: list[np.ndarray] = []
    for piece in body.pieces:
        ts = np.linspace(0.0, 1.0, _SAMPLES_PER_PIECE, endpoint=False)
        px, py = piece.points_at(ts)
        xs.append(px)
        ys.append(py)
    return np.concatenate(xs), np.concatenate(ys)


def _predicate_line(report: CrossingReport) -> str:
    return (
        f"slides D→L: {report.d_slides_across_l}   "
        f"slides L→D: {report.l_slides_across_d}   "
        f"both: {report.both_slide}   either: {report.either_slides}   "
        f"crossing: {report.crossing}"
    )


def save_pair_figure(
    path: str,
    name: str,
    d_body: ConvexBody,
    l_body: ConvexBody,
    report: Optional[CrossingReport] = None,
    lines: Iterable[CommonSupportingLine] = (),
    ears: Sequence[Ear] = (),
) -> None:
    """Render a body pair with its supporting lines to a PNG file."""
    fig, ax = plt.subplots(figsize=(6.4, 6.4))
    for body, color, label in ((d_body, "#4a6fa5", "D"), (l_body, "#d9b44a", "L")):
        if body.is_point:
            ax.plot([body.anchor.x], [body.anchor.y], "o", color=color, label=label)
            continue
        bx, by = _boundary_xy(body)
        ax.fill(bx, by, color=color, alpha=0.35, lw=0)
        ax.plot(np.append(bx, bx[0]), np.append(by, by[0]), color=color, lw=1.8, label=label)
    span = 0.0
    for body in (d_body, l_body):
        box = body.bounding_box()
        span = max(span, box[2] - box[0], box[3] - box[1])
    for line in lines:
        u = unit_vector(line.alpha)
        a = line.first.point - 1.2 * span * u
        b = line.first.point + 1.2 * span * u
        ax.annotate(
            "",
            xy=(b.x, b.y),
            xytext=(a.x, a.y),
            arrowprops=dict(arrowstyle="-|>", color="#444444", lw=1.0, ls="--"),
        )
    for ear in ears:
        owner = d_body if ear.owner == "D" else l_body
        other = l_body if ear.owner == "D" else d_body
        for pt, marker in ((ear.start, "s"), (ear.terminus, "^")):
            ax.plot([pt.x], [pt.y], marker, color="#b03030", ms=6)
        mid = ear.dark_midpoint(owner)
        ax.annotate(f"ear {ear.owner}", (mid.x, mid.y), fontsize=8, color="#b03030")
    title = name if report is None else f"{name}\n{_predicate_line(report)}"
    ax.set_title(title, fontsize=10)
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    ax.grid(True, lw=0.3, alpha=0.5)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
