"""Named body pairs: counterexample constructions and parametric test pairs.

The two handcrafted pairs separate the crossing predicates:

* ``octagon_pair`` - a regular octagon whose four diagonal edges are
  replaced by flattened concave graphs (two parabolic, two quartic,
  placed on opposite pairs), against its own 90-degree rotation.  The
  pair crosses in the set-difference sense but admits no slide-crossing
  witness: all four common supporting lines run along straight edges
  shared by both bodies.
* ``hexagon_pair`` - a regular hexagon with one opposite edge pair
  replaced by circular arcs tangent to the neighbouring edge lines,
  against its rotation by 60 degrees.  The first body slides across the
  second but not conversely.

For a unit hexagon edge the tangency constraints fix the arc: the
chord-tangent angle is 60 degrees, so the central angle is 120 degrees
and the radius is edge / (2 sin 60) = edge / sqrt(3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .body import (
    CircularArc,
    ConvexBody,
    GraphArc,
    Segment,
    apply_motion,
    body_from_pieces,
    convex_hull,
    disk,
    ellipse_body,
)
from .geom import TAU, GeometryError, Point2, RigidMotion, unit_vector, wrap_angle


@dataclass(frozen=True)
class ExpectedReport:
    """Expected truth values of the five predicates for a named pair."""

    d_slides_across_l: bool
    l_slides_across_d: bool
    both_slide: bool
    either_slides: bool
    crossing: bool


@dataclass(frozen=True)
class NamedPair:
    name: str
    d: ConvexBody
    l: ConvexBody
    expected: ExpectedReport
    provenance: str


def _octagon_vertices(circumradius: float) -> list[Point2]:
    # Vertices at 22.5 + 45k degrees: straight edges face the axes,
    # replaced edges face the diagonals.
    return [
        circumradius * unit_vector(math.radians(22.5 + 45.0 * k)) for k in range(8)
    ]


def _graph_arc_on_chord(curve: str, p: Point2, q: Point2) -> GraphArc:
    """Graph arc bulging outward over the ccw chord p -> q.

    Canonical traversal runs from (+1, 0) to (-1, 0), so the frame maps
    (+1, 0) to p and (-1, 0) to q; the bulge lands left of q - p
    reversed, i.e. outward for a ccw chain.
    """
    scale = 0.5 * p.dist(q)
    rotation = math.atan2(p.y - q.y, p.x - q.x)
    mid = Point2(0.5 * (p.x + q.x), 0.5 * (p.y + q.y))
    return GraphArc(curve, scale, wrap_angle(rotation), mid)


def make_octagon_pair(circumradius: float = 1.0) -> NamedPair:
    v = _octagon_vertices(circumradius)
    # ccw chain of alternating straight edges (diagonal outward normals)
    # and graph arcs (axis outward normals); parabolic and quartic arcs
    # sit on opposite pairs so the quarter turn swaps the two kinds.
    curve_for_diagonal = {5: "parabolic", 7: "quartic", 1: "parabolic", 3: "quartic"}
    pieces = []
    for k in range(8):
        i = (4 + k) % 8
        a, b = v[i], v[(i + 1) % 8]
        if k % 2 == 0:
            pieces.append(Segment(a, b))
        else:
            pieces.append(_graph_arc_on_chord(curve_for_diagonal[i], a, b))
    x = body_from_pieces(pieces)
    y = apply_motion(RigidMotion.rotation(0.5 * math.pi), x)
    expected = ExpectedReport(False, False, False, False, True)
    return NamedPair(
        "octagon_pair",
        x,
        y,
        expected,
        "octagon with alternating flattened arcs vs its quarter-turn: "
        "crossing without slide-crossing",
    )


def make_hexagon_pair(circumradius: float = 1.0) -> NamedPair:
    r_hex = circumradius
    v = [r_hex * unit_vector(TAU * k / 6.0) for k in range(6)]
    side = v[0].dist(v[1])
    arc_radius = side / math.sqrt(3.0)
    # Replace the edges with outward normals at 330 and 150 degrees
    # (v[5]->v[0] and v[2]->v[3]); the arc through the removed edge's
    # endpoints, tangent there to the neighbouring edge lines, has
    # central angle 120 degrees and center at distance R/sqrt(3).
    center_dist = r_hex / math.sqrt(3.0)

    def arc_for_edge(p: Point2, q: Point2, normal_deg: float) -> CircularArc:
        c = center_dist * unit_vector(math.radians(normal_deg))
        start = math.atan2(p.y - c.y, p.x - c.x)
        end = math.atan2(q.y - c.y, q.x - c.x)
        return CircularArc(c, arc_radius, start, wrap_angle(end - start))

    pieces = [
        Segment(v[0], v[1]),                 # outward normal 30
        Segment(v[1], v[2]),                 # outward normal 90
        arc_for_edge(v[2], v[3], 150.0),     # replaced edge, normal 150
        Segment(v[3], v[4]),                 # outward normal 210
        Segment(v[4], v[5]),                 # outward normal 270
        arc_for_edge(v[5], v[0], 330.0),     # replaced edge, normal 330
    ]
    d = body_from_pieces(pieces)
    l = apply_motion(RigidMotion.rotation(math.pi / 3.0), d)
    expected = ExpectedReport(True, False, False, True, True)
    return NamedPair(
        "hexagon_pair",
        d,
        l,
        expected,
        "hexagon with one opposite edge pair bulged into tangent arcs vs "
        "its one-sixth turn: slides across one way only",
    )


def make_ellipse_pair(a: float = 2.0, b: float = 1.0) -> NamedPair:
    if not a > b > 0.0:
        raise GeometryError("not an eccentric ellipse: need a > b > 0")
    d = ellipse_body(a, b)
    l = apply_motion(RigidMotion.rotation(0.5 * math.pi), d)
    expected = ExpectedReport(True, True, True, True, True)
    return NamedPair(
        "ellipse_pair",
        d,
        l,
        expected,
        f"ellipse {a}x{b} vs its quarter-turn: slides across both ways",
    )


def make_disk_pair(motion: RigidMotion = RigidMotion.translation(1.0, 0.0)) -> NamedPair:
    d = disk((0.0, 0.0), 1.0)
    l = apply_motion(motion, d)
    expected = ExpectedReport(False, False, False, False, False)
    return NamedPair(
        "disk_pair",
        d,
        l,
        expected,
        "unit disk vs a congruent copy: never crosses in any sense",
    )


NAMED_PAIR_BUILDERS = {
    "octagon_pair": make_octagon_pair,
    "hexagon_pair": make_hexagon_pair,
    "ellipse_pair": make_ellipse_pair,
    "disk_pair": make_disk_pair,
}


def named_pair(name: str, **kwargs) -> NamedPair:
    try:
        builder = NAMED_PAIR_BUILDERS[name]
    except KeyError:
        raise GeometryError(
            f"unknown named pair {name!r}; available: {sorted(NAMED_PAIR_BUILDERS)}"
        ) from None
    return builder(**kwargs)


def catalog_pairs() -> list[NamedPair]:
    """The fixed regression catalog."""
    return [
        make_octagon_pair(),
        make_hexagon_pair(),
        make_ellipse_pair(),
        make_disk_pair(),
    ]


# ---------------------------------------------------------------------------
# Random pairs for the property suites
# ---------------------------------------------------------------------------


def random_motion(rng: np.random.Generator, max_translation: float = 2.0) -> RigidMotion:
    angle = rng.uniform(0.0, TAU)
    mag = rng.uniform(0.0, max_translation)
    direction = rng.uniform(0.0, TAU)
    reflect = bool(rng.random() < 0.5)
    return RigidMotion(angle, mag * math.cos(direction), mag * math.sin(direction), reflect)


def random_convex_polygon(rng: np.random.Generator, max_vertices: int = 12) -> ConvexBody:
    """Convex hull of k uniform points in the unit disk, k in [3, 12]."""
    while True:
        k = int(rng.integers(3, max_vertices + 1))
        r = np.sqrt(rng.uniform(0.0, 1.0, size=k))
        phi = rng.uniform(0.0, TAU, size=k)
        pts = [Point2(float(rr * math.cos(pp)), float(rr * math.sin(pp))) for rr, pp in zip(r, phi)]
        hull = convex_hull(pts)
        if not hull.is_degenerate:
            return hull


def random_polygon_pair(rng: np.random.Generator) -> tuple[ConvexBody, ConvexBody]:
    """A random convex-polygon pair: the second body gets a random pose."""
    first = random_convex_polygon(rng)
    second = random_convex_polygon(rng)
    return first, apply_motion(random_motion(rng), second)
