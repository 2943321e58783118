"""Crossing predicates for pairs of compact convex bodies.

Connectivity of a convex set difference is decided exactly by a
boundary-arc rule rather than by boolean region operations:

    The number of connected components of D \\ L equals the number of
    maximal arcs of the boundary of D that lie strictly outside L
    (zero when no boundary point is outside, one when the whole
    boundary is outside).

Derivation.  Every point x of D \\ L can be moved along the ray from
the nearest-point projection of x on L through x; this ray leaves L at
increasing distance, stays inside D until it hits the boundary of D
(convexity of D), so every component of D \\ L reaches the boundary of
D along an arc that is outside L.  Arcs of the boundary strictly
outside L are connected subsets of D \\ L, so components and outside
arcs correspond.  Two distinct outside arcs cannot lie in one
component: the endpoints S, T of an outside arc lie on the boundary of
L, the chord [S, T] is contained in L (convexity of L), and any path
in D from the arc to a different outside arc would have to cross
either that chord (impossible: the chord lies in L) or the rest of the
boundary of L beyond S or T, which again lies in L or outside D.  The
chord therefore separates, inside D, each outside arc from the others.

The boundary walk evaluates the signed clearance of the other body
along the boundary.  Along straight pieces the clearance is convex (it
is a maximum of functions that are convex along any line), so endpoint
signs plus one interior minimum decide the sign structure exactly;
curved pieces are densely sampled and refined by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .body import (
    ConvexBody,
    Segment,
    ZONE_IN,
    ZONE_NEAR_IN,
    ZONE_NEAR_OUT,
    ZONE_OUT,
    classify_clearance,
    zone_is_definite_member,
    zone_is_member,
)
from .geom import EXACT_BAND, TAU, TOL, DirectedLine, GeometryError, Point2
from .tangency import (
    CommonSupportingLine,
    EvalConfig,
    ExtremePoint,
    ZeroInterval,
    classify_union_extremes,
    common_supporting_lines,
    line_at_angle,
)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class ConsistencyError(RuntimeError):
    """A theorem-level implication failed; indicates a numerical defect."""


# ---------------------------------------------------------------------------
# Boundary classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryArc:
    """Maximal boundary arc of D in one membership class w.r.t. L.

    Parameters are in the owner's piece-index parametrization; the arc
    runs ccw from ``start`` over ``width`` parameter units.  ``label``
    is "outside", "on" (within the membership band of L, including
    shared boundary stretches) or "inside".
    """

    start: float
    width: float
    label: str
    flagged: bool = False

    def contains_param(self, s: float, period: float) -> bool:
        return (s - self.start) % period <= self.width + 1e-12


def _clearance_on_piece(l_body: ConvexBody, piece, ts: np.ndarray) -> np.ndarray:
    xs, ys = piece.points_at(ts)
    return l_body.clearance_many(xs, ys)


def _bisect_root(l_body: ConvexBody, piece, lo: float, hi: float, f_lo: float) -> float:
    """Parameter in [lo, hi] where the clearance crosses zero."""
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        pt = piece.point_at(mid)
        fm = l_body.clearance_one(pt)
        if fm == 0.0:
            return mid
        if (f_lo > 0.0) == (fm > 0.0):
            lo, f_lo = mid, fm
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return 0.5 * (lo + hi)


def _golden_min_on_piece(
    l_body: ConvexBody, piece, lo: float, hi: float
) -> tuple[float, float]:
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1 = l_body.clearance_one(piece.point_at(x1))
    f2 = l_body.clearance_one(piece.point_at(x2))
    for _ in range(60):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = l_body.clearance_one(piece.point_at(x1))
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = l_body.clearance_one(piece.point_at(x2))
        if hi - lo < 1e-13:
            break
    mid = 0.5 * (lo + hi)
    return mid, l_body.clearance_one(piece.point_at(mid))


def _piece_knots(
    d_body: ConvexBody, l_body: ConvexBody, index: int, cfg: EvalConfig
) -> list[tuple[float, float]]:
    """Sorted (t, clearance) knots describing the sign structure on one piece."""
    piece = d_body.pieces[index]
    if isinstance(piece, Segment):
        ts = np.array([0.0, 1.0])
    else:
        m = max(cfg.walk_min_samples, int(cfg.walk_samples_per_turn * piece.tangent_turn() / TAU) + 1)
        ts = np.linspace(0.0, 1.0, m)
    fs = _clearance_on_piece(l_body, piece, ts)
    knots = list(zip(ts.tolist(), fs.tolist()))

    if isinstance(piece, Segment) and knots[0][1] > 0.0 and knots[-1][1] > 0.0:
        # The clearance is convex along a segment: one interior minimum
        # decides whether the piece dips into the other body.
        t_min, f_min = _golden_min_on_piece(l_body, piece, 0.0, 1.0)
        if f_min < knots[0][1] and f_min < knots[-1][1]:
            knots.insert(1, (t_min, f_min))
    elif not isinstance(piece, Segment):
        # Refine sampled local minima that approach zero from above:
        # a grazing touch splits an outside arc.
        extra: list[tuple[float, float]] = []
        vals = [f for _, f in knots]
        for j in range(1, len(knots) - 1):
            if vals[j] <= 0.0 or vals[j] > 1e-4:
                continue
            if vals[j] <= vals[j - 1] and vals[j] <= vals[j + 1]:
                t_min, f_min = _golden_min_on_piece(
                    l_body, piece, knots[j - 1][0], knots[j + 1][0]
                )
                if f_min < vals[j]:
                    extra.append((t_min, f_min))
        knots = sorted(knots + extra)

    # Refine sign changes between adjacent knots.
    refined: list[tuple[float, float]] = []
    for (t0, f0), (t1, f1) in zip(knots, knots[1:]):
        if (f0 > 0.0) != (f1 > 0.0) and abs(f0) > EXACT_BAND and abs(f1) > EXACT_BAND:
            r = _bisect_root(l_body, piece, t0, t1, f0)
            refined.append((r, l_body.clearance_one(piece.point_at(r))))
    return sorted(knots + refined)


def classify_boundary(
    d_body: ConvexBody, l_body: ConvexBody, cfg: EvalConfig = EvalConfig()
) -> tuple[list[BoundaryArc], list[BoundaryArc], bool]:
    """Classify the boundary of D against membership in L.

    Returns (strict_arcs, optimistic_arcs, ambiguous).  Strict arcs use
    closed-set membership (the tolerance band belongs to L); optimistic
    arcs read near-band clearances as outside.  The two differ only in
    knife-edge configurations, which is what the ambiguity flag means.
    """
    if d_body.is_point:
        raise GeometryError("boundary classification needs a non-point body")
    period = d_body.param_period

    params: list[float] = []
    values: list[float] = []
    for i in range(len(d_body.pieces)):
        for t, f in _piece_knots(d_body, l_body, i, cfg):
            if t >= 1.0 - 1e-15 and i + 1 < len(d_body.pieces):
                continue  # junction re-sampled as the next piece's t=0
            if t >= 1.0 - 1e-15 and i + 1 == len(d_body.pieces):
                continue  # cyclic wrap: equals the first knot
            params.append(i + t)
            values.append(f)

    def interval_zone(k: int) -> int:
        s0 = params[k]
        s1 = params[(k + 1) % len(params)]
        if k + 1 == len(params):
            s1 += period
        mid = 0.5 * (s0 + s1)
        f = l_body.clearance_one(d_body.boundary_point(mid % period))
        return classify_clearance(f, cfg.tol)

    zones = [interval_zone(k) for k in range(len(params))]

    def merge(outside_zones: set[int]) -> list[BoundaryArc]:
        n = len(params)
        labels = []
        for z in zones:
            if z in outside_zones:
                labels.append("outside")
            elif z == ZONE_IN:
                labels.append("inside")
            else:
                labels.append("on")
        arcs: list[BoundaryArc] = []
        start_k = 0
        # Find a label change to anchor the cyclic merge.
        anchor = next((k for k in range(n) if labels[k] != labels[0]), None)
        if anchor is None:
            return [BoundaryArc(params[0], period, labels[0])]
        order = list(range(anchor, n)) + list(range(0, anchor))
        run_label = labels[order[0]]
        run_start = params[order[0]]
        for k in order[1:]:
            if labels[k] != run_label:
                width = (params[k] - run_start) % period
                arcs.append(BoundaryArc(run_start, width, run_label))
                run_label = labels[k]
                run_start = params[k]
        width = (params[order[0]] - run_start) % period
        arcs.append(BoundaryArc(run_start, width if width > 0 else period, run_label))
        return arcs

    strict = merge({ZONE_OUT})
    optimistic = merge({ZONE_OUT, ZONE_NEAR_OUT, ZONE_NEAR_IN})
    n_out_strict = sum(1 for a in strict if a.label == "outside")
    n_out_opt = sum(1 for a in optimistic if a.label == "outside")
    ambiguous = n_out_strict != n_out_opt
    return strict, optimistic, ambiguous


def boundary_outside_arcs(
    d_body: ConvexBody, l_body: ConvexBody, cfg: EvalConfig = EvalConfig()
) -> list[BoundaryArc]:
    """Maximal arcs of the boundary of D strictly outside L."""
    strict, _, _ = classify_boundary(d_body, l_body, cfg)
    return [a for a in strict if a.label == "outside"]


@dataclass(frozen=True)
class ComponentCount:
    value: int
    optimistic: int
    ambiguous: bool


def _count_components(
    d_body: ConvexBody, l_body: ConvexBody, cfg: EvalConfig
) -> ComponentCount:
    if d_body.is_point:
        zone, _ = l_body.membership(d_body.anchor)
        strict = 1 if zone == ZONE_OUT else 0
        opt = 1 if not zone_is_definite_member(zone) else 0
        return ComponentCount(strict, opt, strict != opt)

    # Fast path: disjoint bounding boxes mean D \ L = D, one component.
    bd = d_body.bounding_box()
    bl = l_body.bounding_box()
    if bd[2] < bl[0] - TOL or bl[2] < bd[0] - TOL or bd[3] < bl[1] - TOL or bl[3] < bd[1] - TOL:
        return ComponentCount(1, 1, False)

    strict, optimistic, ambiguous = classify_boundary(d_body, l_body, cfg)
    n_strict = sum(1 for a in strict if a.label == "outside")
    n_opt = sum(1 for a in optimistic if a.label == "outside")
    return ComponentCount(n_strict, n_opt, ambiguous)


def difference_component_count(
    d_body: ConvexBody, l_body: ConvexBody, cfg: EvalConfig = EvalConfig()
) -> int:
    """Number of connected components of D \\ L (see module docstring)."""
    return _count_components(d_body, l_body, cfg).value


def ft_crossing(
    d_body: ConvexBody, l_body: ConvexBody, cfg: EvalConfig = EvalConfig()
) -> bool:
    """True iff neither set difference of the two bodies is connected."""
    a = _count_components(d_body, l_body, cfg)
    b = _count_components(l_body, d_body, cfg)
    return a.value >= 2 and b.value >= 2


# ---------------------------------------------------------------------------
# Slide-crossing
# ---------------------------------------------------------------------------


def classify_extremes(
    d_body: ConvexBody,
    l_body: ConvexBody,
    line: CommonSupportingLine | DirectedLine,
) -> tuple[ExtremePoint, ExtremePoint]:
    """First and last point of the union along a common supporting line."""
    if isinstance(line, CommonSupportingLine):
        return line.first, line.last
    return classify_union_extremes(d_body, l_body, line)


def _qualifies(first: ExtremePoint, last: ExtremePoint, d_first: bool, pessimistic: bool) -> bool:
    """Does a line witness slide-crossing (first in D\\L, last in L\\D)?

    With d_first False the roles of the bodies are swapped.  The
    pessimistic reading treats the whole tolerance band as membership;
    the optimistic reading lets near-band points count as outside.
    """
    if d_first:
        fz_in, fz_out = first.zone_d, first.zone_l
        lz_in, lz_out = last.zone_l, last.zone_d
    else:
        fz_in, fz_out = first.zone_l, first.zone_d
        lz_in, lz_out = last.zone_d, last.zone_l
    if pessimistic:
        return (
            zone_is_member(fz_in)
            and fz_out == ZONE_OUT
            and zone_is_member(lz_in)
            and lz_out == ZONE_OUT
        )
    return (
        zone_is_member(fz_in)
        and not zone_is_definite_member(fz_out)
        and zone_is_member(lz_in)
        and not zone_is_definite_member(lz_out)
    )


def _candidate_lines(
    d_body: ConvexBody,
    l_body: ConvexBody,
    cfg: EvalConfig,
) -> tuple[list[CommonSupportingLine], list[ZeroInterval]]:
    lines, intervals = common_supporting_lines(d_body, l_body, cfg)
    seen = {round(l.alpha / max(cfg.dedup_angle, 1e-12)) for l in lines}
    for iv in intervals:
        for a in iv.candidate_angles():
            key = round(a / max(cfg.dedup_angle, 1e-12))
            if key in seen:
                continue
            seen.add(key)
            lines.append(line_at_angle(d_body, l_body, a, True))
    lines.sort(key=lambda l: l.alpha)
    return lines, intervals


@dataclass(frozen=True)
class SlideResult:
    value: bool
    ambiguous: bool
    witnesses: tuple[CommonSupportingLine, ...]
    qualifying_strict: int
    qualifying_optimistic: int
    notes: tuple[str, ...] = ()


def _slide_verdict(
    lines: Sequence[CommonSupportingLine], d_first: bool
) -> SlideResult:
    strict = [l for l in lines if _qualifies(l.first, l.last, d_first, True)]
    optimistic = [l for l in lines if _qualifies(l.first, l.last, d_first, False)]
    value = len(strict) >= 2
    value_opt = len(optimistic) >= 2
    notes: tuple[str, ...] = ()
    if value:
        # Same undirected line means alpha differs by pi and the offset
        # flips sign; canonicalize before comparing.
        undirected = set()
        for l in strict:
            a, c = l.alpha, l.line.offset
            if a >= math.pi:
                a, c = a - math.pi, -c
            undirected.add((round(a / 1e-9), round(c / 1e-9)))
        if len(undirected) < 2:
            notes = ("witnesses share an undirected line",)
    return SlideResult(
        value,
        value != value_opt,
        tuple(strict[:2]) if value else (),
        len(strict),
        len(optimistic),
        notes,
    )


def slides_across(
    d_body: ConvexBody, l_body: ConvexBody, cfg: EvalConfig = EvalConfig()
) -> SlideResult:
    """Does D slide across L: two distinct common supporting lines whose
    union-extremes satisfy first in D\\L and last in L\\D."""
    lines, _ = _candidate_lines(d_body, l_body, cfg)
    return _slide_verdict(lines, True)


# ---------------------------------------------------------------------------
# The full report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossingReport:
    """Truth values of the five crossing predicates for an ordered pair.

    ``crossing`` is the classical predicate (neither set difference is
    connected); the slide predicates ask for two distinct common
    supporting lines ordered first-in-one-difference, last-in-the-other.
    """

    d_slides_across_l: bool
    l_slides_across_d: bool
    both_slide: bool
    either_slides: bool
    crossing: bool
    components_d_minus_l: int
    components_l_minus_d: int
    witnesses_dl: tuple[CommonSupportingLine, ...]
    witnesses_ld: tuple[CommonSupportingLine, ...]
    lines: tuple[CommonSupportingLine, ...]
    intervals: tuple[ZeroInterval, ...]
    flags: frozenset[str]
    notes: tuple[str, ...]

    def __post_init__(self) -> None:
        assert self.both_slide == (self.d_slides_across_l and self.l_slides_across_d)
        assert self.either_slides == (self.d_slides_across_l or self.l_slides_across_d)

    def truth_tuple(self) -> tuple[bool, bool, bool, bool, bool]:
        """(both, d-over-l, l-over-d, either, crossing)."""
        return (
            self.both_slide,
            self.d_slides_across_l,
            self.l_slides_across_d,
            self.either_slides,
            self.crossing,
        )


def crossing_report(
    d_body: ConvexBody, l_body: ConvexBody, cfg: EvalConfig = EvalConfig()
) -> CrossingReport:
    """Evaluate all five predicates, with internal consistency checks."""
    lines, intervals = _candidate_lines(d_body, l_body, cfg)
    res_dl = _slide_verdict(lines, True)
    res_ld = _slide_verdict(lines, False)
    cnt_dl = _count_components(d_body, l_body, cfg)
    cnt_ld = _count_components(l_body, d_body, cfg)

    flags = set()
    if res_dl.ambiguous:
        flags.add("slide_dl_ambiguous")
    if res_ld.ambiguous:
        flags.add("slide_ld_ambiguous")
    if cnt_dl.ambiguous or cnt_ld.ambiguous:
        flags.add("crossing_ambiguous")

    either = res_dl.value or res_ld.value
    crossing = cnt_dl.value >= 2 and cnt_ld.value >= 2
    if either and not crossing and not flags:
        raise ConsistencyError(
            "slide-crossing holds but a set difference came out connected: "
            f"components {cnt_dl.value}/{cnt_ld.value}"
        )

    return CrossingReport(
        d_slides_across_l=res_dl.value,
        l_slides_across_d=res_ld.value,
        both_slide=res_dl.value and res_ld.value,
        either_slides=either,
        crossing=crossing,
        components_d_minus_l=cnt_dl.value,
        components_l_minus_d=cnt_ld.value,
        witnesses_dl=res_dl.witnesses,
        witnesses_ld=res_ld.witnesses,
        lines=tuple(lines),
        intervals=tuple(intervals),
        flags=frozenset(flags),
        notes=res_dl.notes + res_ld.notes,
    )


# ---------------------------------------------------------------------------
# Ears
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ear:
    """A component of a set difference cut off by a supporting line.

    The dark arc runs ccw on the owner's boundary between the starting
    point and the terminating point; the light arc is the facing stretch
    of the other body's boundary.
    """

    owner: str  # "D" or "L"
    start: Point2
    terminus: Point2
    dark_start: float
    dark_width: float
    light_start: float
    light_width: float

    def dark_midpoint(self, owner_body: ConvexBody) -> Point2:
        period = owner_body.param_period
        return owner_body.boundary_point((self.dark_start + 0.5 * self.dark_width) % period)

    def light_midpoint(self, other_body: ConvexBody) -> Point2:
        period = other_body.param_period
        return other_body.boundary_point((self.light_start + 0.5 * self.light_width) % period)


def _param_of_contact(extreme: ExtremePoint, contact) -> float:
    if extreme.point.dist(contact.first) <= extreme.point.dist(contact.last):
        return contact.first_param
    return contact.last_param


def _extract_one_ear(
    owner: str,
    owner_body: ConvexBody,
    other_body: ConvexBody,
    u_param: float,
    u_other: Point2,
    cfg: EvalConfig,
) -> Ear:
    strict, _, _ = classify_boundary(owner_body, other_body, cfg)
    outside = [a for a in strict if a.label == "outside"]
    if not outside:
        raise GeometryError("interiors do not meet: no boundary stretch outside")
    period = owner_body.param_period
    run = next((a for a in outside if a.contains_param(u_param, period)), None)
    if run is None:
        raise GeometryError("union extreme does not lie on an outside arc")
    if run.width >= period - 1e-9:
        raise GeometryError("interiors do not meet: whole boundary is outside")
    s_pt = owner_body.boundary_point(run.start % period)
    t_pt = owner_body.boundary_point((run.start + run.width) % period)
    if s_pt.dist(owner_body.boundary_point(u_param % period)) <= TOL or t_pt.dist(
        owner_body.boundary_point(u_param % period)
    ) <= TOL:
        raise ConsistencyError("union extreme coincides with an ear endpoint")

    # Locate the facing stretch on the other boundary, avoiding the other
    # union extreme (which lies outside this ear).
    ps, ds = other_body.locate_boundary_param(s_pt)
    pt, dt = other_body.locate_boundary_param(t_pt)
    if ds > 1e-6 or dt > 1e-6:
        raise GeometryError("ear endpoints do not lie on the other boundary")
    pu, _ = other_body.locate_boundary_param(u_other)
    other_period = other_body.param_period
    width_fwd = (pt - ps) % other_period
    u_off = (pu - ps) % other_period
    if u_off <= width_fwd + 1e-12:
        # Forward interval contains the other extreme; take the complement.
        light_start, light_width = pt, (ps - pt) % other_period
    else:
        light_start, light_width = ps, width_fwd
    return Ear(
        owner,
        s_pt,
        t_pt,
        run.start % period,
        run.width,
        light_start % other_period,
        light_width,
    )


def extract_ears(
    d_body: ConvexBody,
    l_body: ConvexBody,
    line: CommonSupportingLine,
    cfg: EvalConfig = EvalConfig(),
) -> tuple[Ear, Ear]:
    """Ears of both bodies determined by a slide-crossing witness line."""
    if not _qualifies(line.first, line.last, True, True):
        raise GeometryError(
            "line does not satisfy the witness precondition "
            "(first in D\\L and last in L\\D)"
        )
    u_d, u_l = line.first.point, line.last.point
    ud_param = _param_of_contact(line.first, line.contact_d)
    ul_param = _param_of_contact(line.last, line.contact_l)
    ear_d = _extract_one_ear("D", d_body, l_body, ud_param, u_l, cfg)
    ear_l = _extract_one_ear("L", l_body, d_body, ul_param, u_d, cfg)
    return ear_d, ear_l


def ears_alternate(
    ears: Sequence[Ear], d_body: ConvexBody, l_body: ConvexBody
) -> bool:
    """Do the ears alternate in owner around the intersection boundary?"""
    anchors = []
    for ear in ears:
        anchors.extend([ear.start, ear.terminus])
    cx = sum(p.x for p in anchors) / len(anchors)
    cy = sum(p.y for p in anchors) / len(anchors)
    keyed = []
    for ear in ears:
        other = l_body if ear.owner == "D" else d_body
        mid = ear.light_midpoint(other)
        keyed.append((math.atan2(mid.y - cy, mid.x - cx), ear.owner))
    keyed.sort()
    owners = [o for _, o in keyed]
    return all(owners[i] != owners[(i + 1) % len(owners)] for i in range(len(owners)))
