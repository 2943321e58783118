import math

import numpy as np
import pytest

from crosskit.body import CircularArc, GraphArc, Segment, zone_is_member
from crosskit.constructions import (
    catalog_pairs,
    make_disk_pair,
    make_ellipse_pair,
    make_hexagon_pair,
    make_octagon_pair,
    named_pair,
    random_polygon_pair,
)
from crosskit.crossing import crossing_report
from crosskit.geom import GeometryError, RigidMotion, wrap_signed
from crosskit.tangency import common_supporting_lines, support_gap


def test_octagon_structure():
    pair = make_octagon_pair()
    segs = [p for p in pair.d.pieces if isinstance(p, Segment)]
    arcs = [p for p in pair.d.pieces if isinstance(p, GraphArc)]
    assert len(segs) == 4 and len(arcs) == 4
    assert sum(1 for a in arcs if a.curve == "parabolic") == 2
    assert sum(1 for a in arcs if a.curve == "quartic") == 2
    assert pair.d.validate() == []
    assert pair.l.validate() == []


def test_octagon_quarter_turn_swaps_curve_kinds():
    pair = make_octagon_pair()

    def curve_at(body, direction):
        # The arc whose outward-normal span contains the given direction.
        for piece in body.pieces:
            if isinstance(piece, GraphArc):
                mid = piece.point_at(0.5)
                ang = math.atan2(mid.y, mid.x)
                if abs(wrap_signed(ang - direction)) < 0.3:
                    return piece.curve
        return None

    for direction in (0.0, math.pi / 2, math.pi, 1.5 * math.pi):
        cd = curve_at(pair.d, direction)
        cl = curve_at(pair.l, direction)
        assert cd is not None and cl is not None
        assert cd != cl


def test_octagon_lines_run_along_full_shared_edges():
    pair = make_octagon_pair()
    lines, intervals = common_supporting_lines(pair.d, pair.l)
    assert len(lines) == 4 and not intervals
    edge_len = 2.0 * math.sin(math.pi / 8)
    for line in lines:
        for contact in (line.contact_d, line.contact_l):
            assert contact.is_segment
            assert abs(contact.first.dist(contact.last) - edge_len) <= 1e-9


def test_octagon_flat_curve_separation_at_bump_center():
    # At an arc direction the support gap equals the scaled difference of
    # the canonical peak values (1 - 0)/2 - (1 - 0)/4 = 1/4.
    pair = make_octagon_pair()
    scale = math.sin(math.pi / 8)  # half the octagon edge for circumradius 1
    for alpha in (math.pi / 2, 1.5 * math.pi, 0.0, math.pi):
        gap = support_gap(pair.d, pair.l, alpha)
        assert abs(abs(gap) - scale * 0.25) <= 1e-12


def test_octagon_boundary_is_tangent_continuous():
    pair = make_octagon_pair()
    pieces = pair.d.pieces
    for i, piece in enumerate(pieces):
        nxt = pieces[(i + 1) % len(pieces)]
        turn = wrap_signed(nxt.tangent_at(0.0) - piece.tangent_at(1.0))
        assert abs(turn) <= 1e-12


def test_hexagon_arc_radius_from_tangency():
    pair = make_hexagon_pair()
    arcs = [p for p in pair.d.pieces if isinstance(p, CircularArc)]
    assert len(arcs) == 2
    side = 1.0  # unit circumradius hexagon has unit side
    for arc in arcs:
        assert abs(arc.radius - side / math.sqrt(3.0)) <= 1e-12
        assert abs(arc.sweep - 2.0 * math.pi / 3.0) <= 1e-12
    # Tangency at the junctions: the boundary is C1 where arcs meet edges.
    pieces = pair.d.pieces
    for i, piece in enumerate(pieces):
        nxt = pieces[(i + 1) % len(pieces)]
        if isinstance(piece, CircularArc) or isinstance(nxt, CircularArc):
            turn = wrap_signed(nxt.tangent_at(0.0) - piece.tangent_at(1.0))
            assert abs(turn) <= 1e-12


def test_hexagon_lines_and_first_point_ownership():
    pair = make_hexagon_pair()
    lines, intervals = common_supporting_lines(pair.d, pair.l)
    assert len(lines) == 4 and not intervals
    horizontals = [l for l in lines if min(l.alpha, abs(l.alpha - math.pi), 2 * math.pi - l.alpha) <= 1e-6]
    assert len(horizontals) == 2
    for line in lines:
        assert zone_is_member(line.first.zone_d)  # first point always in D


def test_expected_reports_of_all_named_pairs():
    for pair in catalog_pairs():
        rep = crossing_report(pair.d, pair.l)
        exp = pair.expected
        assert rep.d_slides_across_l == exp.d_slides_across_l, pair.name
        assert rep.l_slides_across_d == exp.l_slides_across_d, pair.name
        assert rep.both_slide == exp.both_slide, pair.name
        assert rep.either_slides == exp.either_slides, pair.name
        assert rep.crossing == exp.crossing, pair.name
        assert not rep.flags, pair.name


def test_ellipse_pair_requires_eccentricity():
    with pytest.raises(GeometryError, match="eccentric"):
        make_ellipse_pair(1.0, 1.0)
    with pytest.raises(GeometryError, match="eccentric"):
        make_ellipse_pair(1.0, 2.0)


def test_near_circular_ellipse_pair_degenerates_gracefully():
    pair = make_ellipse_pair(1.0 + 1e-9, 1.0)
    rep = crossing_report(pair.d, pair.l)
    # Within the tolerance band of a disk: either flagged as ambiguous or
    # numerically indistinguishable from the all-false disk verdict.
    assert rep.flags or not rep.either_slides


def test_named_pair_registry():
    assert named_pair("octagon_pair").name == "octagon_pair"
    with pytest.raises(GeometryError, match="unknown named pair"):
        named_pair("heptagon_pair")


def test_disk_pair_expected_for_various_motions():
    for motion in (
        RigidMotion.identity(),
        RigidMotion.translation(1.0, 0.0),
        RigidMotion.rotation(0.4),
        RigidMotion(0.3, 0.2, -0.1, True),
    ):
        pair = make_disk_pair(motion)
        rep = crossing_report(pair.d, pair.l)
        assert rep.truth_tuple() == (False, False, False, False, False)


def test_random_polygon_pair_is_deterministic_per_seed():
    a1, b1 = random_polygon_pair(np.random.default_rng(123))
    a2, b2 = random_polygon_pair(np.random.default_rng(123))
    assert repr(a1.pieces) == repr(a2.pieces)
    assert repr(b1.pieces) == repr(b2.pieces)
    for body in (a1, b1):
        assert body.validate() == []
