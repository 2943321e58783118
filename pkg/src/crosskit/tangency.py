"""Common supporting lines of two bodies and slide-turning traces.

A directed line of direction alpha supports both bodies exactly when the
support gap ``delta(alpha) = h_D(alpha) - h_L(alpha)`` vanishes.  The
enumeration samples delta on a uniform angular grid, refines isolated
sign changes by bisection, polishes grazing zeros (grid hits with
``|delta| <= zero_tol``) by golden-section minimization of ``|delta|``,
and reports maximal near-zero sub-grids as intervals rather than as
isolated lines (two identical bodies share a full circle of supporting
directions).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .body import (
    ContactSet,
    ConvexBody,
    ZONE_IN,
    ZONE_ON,
    ZONE_OUT,
    zone_is_member,
)
from .geom import (
    TAU,
    TOL,
    DirectedLine,
    DirectionLike,
    GeometryError,
    Point2,
    as_angle,
    wrap_angle,
)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _default_grid_n() -> int:
    raw = os.environ.get("CROSSKIT_DEFAULT_GRID", "")
    try:
        n = int(raw)
    except ValueError:
        return 4096
    return n if n >= 64 else 4096


@dataclass(frozen=True)
class EvalConfig:
    """Shared numeric configuration for line enumeration and boundary walks."""

    grid_n: int = field(default_factory=_default_grid_n)
    zero_tol: float = 1e-9
    dedup_angle: float = 1e-6
    refine_width: float = 1e-12
    tol: float = TOL
    walk_samples_per_turn: int = 1024
    walk_min_samples: int = 33


def support_gap(d_body: ConvexBody, l_body: ConvexBody, d: DirectionLike) -> float:
    """delta(alpha) = support(D, alpha) - support(L, alpha)."""
    alpha = as_angle(d)
    return d_body.support_one(alpha) - l_body.support_one(alpha)


@dataclass(frozen=True)
class ZeroInterval:
    """A maximal angular interval on which the support gap stays near zero."""

    alpha_start: float
    alpha_end: float  # ccw from alpha_start; full circle iff width >= tau
    full_circle: bool

    def width(self) -> float:
        if self.full_circle:
            return TAU
        return wrap_angle(self.alpha_end - self.alpha_start)

    def candidate_angles(self) -> list[float]:
        if self.full_circle:
            return [0.0, TAU / 3.0, 2.0 * TAU / 3.0]
        mid = wrap_angle(self.alpha_start + 0.5 * self.width())
        return [self.alpha_start, mid, self.alpha_end]


@dataclass(frozen=True)
class SupportGapProfile:
    """Sampled support gap with its refined zero structure."""

    alphas: np.ndarray
    gaps: np.ndarray
    isolated_zeros: tuple[float, ...]
    zero_intervals: tuple[ZeroInterval, ...]


@dataclass(frozen=True)
class ExtremePoint:
    """A union extreme of a common supporting line, with membership zones."""

    point: Point2
    zone_d: int
    zone_l: int
    clearance_d: float
    clearance_l: float

    @property
    def owner_class(self) -> str:
        in_d = zone_is_member(self.zone_d)
        in_l = zone_is_member(self.zone_l)
        label = "both" if in_d and in_l else ("D" if in_d else ("L" if in_l else "neither"))
        # A near-band hit makes the strict label unstable under an
        # adversarial reading of the tolerance band.
        unstable = self.zone_d not in (ZONE_IN, ZONE_ON, ZONE_OUT) or self.zone_l not in (
            ZONE_IN,
            ZONE_ON,
            ZONE_OUT,
        )
        return "ambiguous" if unstable else label


@dataclass(frozen=True)
class CommonSupportingLine:
    """A directed line supporting two bodies, with contacts and extremes."""

    line: DirectedLine
    contact_d: ContactSet
    contact_l: ContactSet
    first: ExtremePoint
    last: ExtremePoint
    from_interval: bool = False

    @property
    def alpha(self) -> float:
        return self.line.alpha


def classify_union_extremes(
    d_body: ConvexBody,
    l_body: ConvexBody,
    line: DirectedLine,
    contact_d: Optional[ContactSet] = None,
    contact_l: Optional[ContactSet] = None,
) -> tuple[ExtremePoint, ExtremePoint]:
    """First and last point of (D u L) on a common supporting line."""
    cd = contact_d or d_body.contact_set(line.alpha)
    cl = contact_l or l_body.contact_set(line.alpha)
    u = line.unit()
    pts = [cd.first, cd.last, cl.first, cl.last]
    order = sorted(pts, key=lambda p: p.dot(u))
    out = []
    for p in (order[0], order[-1]):
        zd, dd = d_body.membership(p)
        zl, dl = l_body.membership(p)
        out.append(ExtremePoint(p, zd, zl, dd, dl))
    return out[0], out[1]


def _bisect_gap(d_body: ConvexBody, l_body: ConvexBody, lo: float, hi: float, width: float) -> float:
    flo = support_gap(d_body, l_body, lo)
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        fm = support_gap(d_body, l_body, mid)
        if fm == 0.0:
            return mid
        if (flo > 0.0) == (fm > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _golden_min_abs_gap(
    d_body: ConvexBody, l_body: ConvexBody, lo: float, hi: float, width: float
) -> tuple[float, float]:
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1 = abs(support_gap(d_body, l_body, x1))
    f2 = abs(support_gap(d_body, l_body, x2))
    while hi - lo > width:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = abs(support_gap(d_body, l_body, x1))
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = abs(support_gap(d_body, l_body, x2))
    mid = 0.5 * (lo + hi)
    return mid, abs(support_gap(d_body, l_body, mid))


def support_gap_profile(
    d_body: ConvexBody, l_body: ConvexBody, cfg: EvalConfig = EvalConfig()
) -> SupportGapProfile:
    n = cfg.grid_n
    alphas = np.linspace(0.0, TAU, n, endpoint=False)
    gaps = d_body.support_many(alphas) - l_body.support_many(alphas)
    near = np.abs(gaps) <= cfg.zero_tol

    if bool(near.all()):
        return SupportGapProfile(
            alphas, gaps, (), (ZeroInterval(0.0, TAU, True),)
        )

    step = TAU / n
    zeros: list[float] = []
    intervals: list[ZeroInterval] = []

    # Cyclic runs of near-zero samples.
    if bool(near.any()):
        idx = np.flatnonzero(near)
        breaks = np.flatnonzero(np.diff(idx) > 1)
        runs = np.split(idx, breaks + 1)
        # Merge a wrap-around run.
        if len(runs) > 1 and runs[0][0] == 0 and runs[-1][-1] == n - 1:
            runs[0] = np.concatenate([runs[-1], runs[0]])
            runs.pop()
        for run in runs:
            if len(run) >= 2:
                a0 = float(alphas[run[0]])
                a1 = float(alphas[run[-1]])
                intervals.append(ZeroInterval(a0, a1, False))
            else:
                k = int(run[0])
                lo = float(alphas[k]) - step
                hi = float(alphas[k]) + step
                a_star, val = _golden_min_abs_gap(d_body, l_body, lo, hi, cfg.refine_width)
                if val <= cfg.zero_tol:
                    zeros.append(wrap_angle(a_star))

    # Sign changes between consecutive clear samples.
    sgn = np.sign(gaps)
    for k in range(n):
        k2 = (k + 1) % n
        if near[k] or near[k2]:
            continue
        if sgn[k] == sgn[k2]:
            continue
        lo = float(alphas[k])
        hi = lo + step
        zeros.append(wrap_angle(_bisect_gap(d_body, l_body, lo, hi, cfg.refine_width)))

    # A zero at a shared straight-edge direction is second-order flat, so
    # sign refinement can misplace it by ~sqrt(machine eps).  Snap such a
    # zero onto the exact edge direction when the gap vanishes there.
    snap_angles: list[float] = []
    for b in (d_body, l_body):
        for piece in b.pieces:
            ang = getattr(piece, "direction_angle", None)
            if ang is not None:
                snap_angles.append(wrap_angle(ang))
    if snap_angles:
        for i, z in enumerate(zeros):
            for ang in snap_angles:
                off = wrap_angle(z - ang)
                if min(off, TAU - off) <= 1e-6 and abs(
                    support_gap(d_body, l_body, ang)
                ) <= cfg.zero_tol:
                    zeros[i] = ang
                    break

    # Deduplicate isolated zeros circularly and drop those inside intervals.
    zeros.sort()
    merged: list[float] = []
    for z in zeros:
        if merged and abs(z - merged[-1]) <= cfg.dedup_angle:
            continue
        merged.append(z)
    if len(merged) >= 2 and (TAU - merged[-1]) + merged[0] <= cfg.dedup_angle:
        merged.pop()

    def in_interval(a: float) -> bool:
        for iv in intervals:
            if iv.full_circle:
                return True
            if wrap_angle(a - iv.alpha_start) <= iv.width() + cfg.dedup_angle:
                return True
            if wrap_angle(iv.alpha_start - a) <= cfg.dedup_angle:
                return True
        return False

    merged = [z for z in merged if not in_interval(z)]
    return SupportGapProfile(alphas, gaps, tuple(merged), tuple(intervals))


def line_at_angle(
    d_body: ConvexBody, l_body: ConvexBody, alpha: float, from_interval: bool
) -> CommonSupportingLine:
    hd = d_body.support_one(alpha)
    hl = l_body.support_one(alpha)
    line = DirectedLine(alpha, 0.5 * (hd + hl))
    cd = d_body.contact_set(alpha)
    cl = l_body.contact_set(alpha)
    first, last = classify_union_extremes(d_body, l_body, line, cd, cl)
    return CommonSupportingLine(line, cd, cl, first, last, from_interval)


def common_supporting_lines(
    d_body: ConvexBody,
    l_body: ConvexBody,
    cfg: EvalConfig = EvalConfig(),
) -> tuple[list[CommonSupportingLine], list[ZeroInterval]]:
    """Enumerate the isolated common supporting lines and near-zero intervals."""
    profile = support_gap_profile(d_body, l_body, cfg)
    lines = [line_at_angle(d_body, l_body, a, False) for a in profile.isolated_zeros]
    return lines, list(profile.zero_intervals)


# ---------------------------------------------------------------------------
# Slide-turning
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlideTurnSample:
    point: Point2
    direction: float  # cumulative: starts at the first sample, advances by tau


@dataclass(frozen=True)
class SlideTurnTrace:
    samples: tuple[SlideTurnSample, ...]
    closed: bool

    def total_turn(self) -> float:
        return self.samples[-1].direction - self.samples[0].direction

    def length(self) -> float:
        """Polyline length of the trace in the product metric of R^2 x S^1."""
        total = 0.0
        for a, b in zip(self.samples, self.samples[1:]):
            total += math.hypot(a.point.dist(b.point), b.direction - a.direction)
        return total


@dataclass(frozen=True)
class _Stretch:
    sigma0: float
    sigma1: float
    dir0: float
    dir1: float
    piece_index: int  # -1 for a pure turn at a fixed point
    t0: float
    t1: float
    point: Optional[Point2]


def slide_turn_trace(body: ConvexBody, n: int) -> SlideTurnTrace:
    """Closed trace of pointed supporting lines, counterclockwise.

    Samples are spaced uniformly in the mixed parameter
    ``(arclength / perimeter + turned angle / tau) / 2`` so that both
    edge slides (position moves, direction fixed) and vertex turns
    (direction moves, position fixed) appear.  The trace starts at the
    pointed supporting line of direction 0 and accumulates exactly tau
    of direction over one loop.
    """
    if n < 8:
        raise GeometryError("slide-turn trace needs n >= 8")
    if body.is_point:
        raise GeometryError("trace undefined for singleton")

    perimeter = body.perimeter()
    n_pieces = len(body.pieces)
    start_param = body.contact_set(0.0).first_param
    i0 = int(start_param) % n_pieces
    t_start = start_param - int(start_param)
    if t_start >= 1.0 - 1e-15:
        i0 = (i0 + 1) % n_pieces
        t_start = 0.0

    # Visit order: remainder of the start piece, then the rest, then the
    # initial part of the start piece when the start is mid-piece.
    visits: list[tuple[int, float, float]] = [(i0, t_start, 1.0)]
    for k in range(1, n_pieces):
        visits.append(((i0 + k) % n_pieces, 0.0, 1.0))
    if t_start > 0.0:
        visits.append((i0, 0.0, t_start))

    stretches: list[_Stretch] = []
    sigma = 0.0
    cur_dir = 0.0  # cumulative direction; the trace starts at direction 0

    def add_turn(point: Point2, target_raw: float) -> None:
        nonlocal sigma, cur_dir
        turn = wrap_angle(target_raw - cur_dir)
        if turn > TAU - 1e-9:
            turn = 0.0
        if turn <= 1e-12:
            return
        width = 0.5 * turn / TAU
        stretches.append(
            _Stretch(sigma, sigma + width, cur_dir, cur_dir + turn, -1, 0.0, 0.0, point)
        )
        sigma += width
        cur_dir += turn

    for i, t0, t1 in visits:
        piece = body.pieces[i]
        add_turn(piece.point_at(t0), piece.tangent_at(t0))
        turn = piece.tangent_at(t1) - piece.tangent_at(t0)
        length = piece.length() * (t1 - t0)
        width = 0.5 * (length / perimeter + turn / TAU)
        if width > 0.0:
            stretches.append(
                _Stretch(sigma, sigma + width, cur_dir, cur_dir + turn, i, t0, t1, None)
            )
            sigma += width
            cur_dir += turn
    # Close the loop: remaining turn at the start point back to direction tau.
    start_point = body.boundary_point(start_param)
    remaining = TAU - cur_dir
    if remaining > 1e-9:
        stretches.append(
            _Stretch(sigma, sigma + 0.5 * remaining / TAU, cur_dir, TAU, -1, 0.0, 0.0, start_point)
        )
        sigma += 0.5 * remaining / TAU

    sigma_total = sigma

    def eval_sigma(sg: float) -> SlideTurnSample:
        j = 0
        while j + 1 < len(stretches) and sg > stretches[j].sigma1 + 1e-15:
            j += 1
        st = stretches[j]
        span = st.sigma1 - st.sigma0
        frac = 0.0 if span <= 1e-18 else min(1.0, max(0.0, (sg - st.sigma0) / span))
        if st.piece_index < 0:
            return SlideTurnSample(st.point, st.dir0 + frac * (st.dir1 - st.dir0))
        piece = body.pieces[st.piece_index]
        t = st.t0 + frac * (st.t1 - st.t0)
        d = st.dir0 + (piece.tangent_at(t) - piece.tangent_at(st.t0))
        return SlideTurnSample(piece.point_at(t), d)

    # Sample uniformly in sigma, plus the exact stretch breakpoints: the
    # cylinder curve kinks where slides meet turns, and hitting the kinks
    # exactly keeps the sampled length quadratically convergent.
    sigmas = {sigma_total * k / n for k in range(n)}
    sigmas.update(st.sigma0 for st in stretches if 0.0 < st.sigma0 < sigma_total)
    samples = [eval_sigma(sg) for sg in sorted(sigmas)]
    first = samples[0]
    samples.append(SlideTurnSample(first.point, first.direction + TAU))
    return SlideTurnTrace(tuple(samples), True)
