import math

import numpy as np
import pytest

from crosskit.body import (
    ConvexBody,
    Segment,
    apply_motion,
    convex_hull,
    disk,
    ellipse_body,
    point_body,
    polygon_body,
    regular_polygon,
    segment_body,
)
from crosskit.constructions import catalog_pairs
from crosskit.geom import TAU, GeometryError, Point2, RigidMotion, normal_vector

SQ = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]


def test_disk_support_is_radius_plus_center_term():
    d = disk((0.0, 0.0), 1.0)
    for a in np.linspace(0, TAU, 33):
        assert abs(d.support_one(a) - 1.0) <= 1e-12
    shifted = disk((0.0, 2.0), 1.0)
    assert abs(shifted.support_one(0.0) - (-1.0)) <= 1e-12


def test_square_support_and_contacts():
    sq = polygon_body(SQ)
    assert abs(sq.support_one(0.0)) <= 1e-12
    cs = sq.contact_set(0.0)
    assert cs.is_segment
    assert cs.first.dist(Point2(0, 0)) <= 1e-12
    assert cs.last.dist(Point2(1, 0)) <= 1e-12
    cs = sq.contact_set(math.pi / 4)
    assert not cs.is_segment
    assert cs.first.dist(Point2(1, 0)) <= 1e-12


def test_disk_contact_is_the_normal_point():
    d = disk((0.0, 0.0), 1.0)
    cs = d.contact_set(0.0)
    assert cs.first.dist(Point2(0.0, -1.0)) <= 1e-12
    assert not cs.is_segment


def test_regular_polygon_chain():
    oct8 = regular_polygon(8, 1.0)
    assert len(oct8.pieces) == 8
    assert oct8.validate() == []


def test_ellipse_support_against_dense_sampling_oracle():
    a, b = 2.0, 1.0
    e = ellipse_body(a, b)
    # Independent oracle: maximize <P, n(alpha)> over a dense boundary sample.
    phi = np.linspace(0.0, TAU, 200_001)
    px, py = a * np.cos(phi), b * np.sin(phi)
    for alpha in np.linspace(0.0, TAU, 37):
        n = normal_vector(alpha)
        brute = float(np.max(px * n.x + py * n.y))
        closed = e.support_one(alpha)
        assert abs(closed - brute) <= 1e-8
        expected = math.hypot(a * n.x, b * n.y)
        assert abs(closed - expected) <= 1e-12


def test_contains_examples():
    d = disk((0.0, 0.0), 1.0)
    assert d.contains(Point2(0.0, 0.0)) == "interior"
    assert d.contains(Point2(1.0, 0.0)) == "boundary"
    assert d.contains(Point2(1.001, 0.0)) == "outside"


def test_validate_flags_clockwise_chain():
    cw = ConvexBody(
        tuple(
            Segment(Point2(*SQ[i]), Point2(*SQ[(i - 1) % 4]))
            for i in range(0, -4, -1)
        )
    )
    msgs = " ".join(cw.validate())
    assert "tangent turn negative" in msgs


def test_validate_flags_open_chain():
    pieces = [
        Segment(Point2(0, 0), Point2(1, 0)),
        Segment(Point2(1, 0), Point2(1, 1)),
        Segment(Point2(1, 1), Point2(0, 1)),
        Segment(Point2(0, 1), Point2(0.001, 0.0)),
    ]
    msgs = " ".join(ConvexBody(tuple(pieces)).validate())
    assert "chain not closed" in msgs


def test_builders_produce_valid_bodies():
    bodies = [
        disk((0.3, -0.4), 2.0),
        regular_polygon(5, 1.3),
        ellipse_body(2.0, 1.0, angle=0.3),
        segment_body((0, 0), (1, 2)),
    ]
    for b in bodies:
        assert b.validate() == []
    for pair in catalog_pairs():
        assert pair.d.validate() == []
        assert pair.l.validate() == []


def test_convex_hull_discards_interior_points():
    hull = convex_hull([(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5)])
    assert len(hull.pieces) == 4


def test_convex_hull_degenerate_cases():
    assert convex_hull([(2.0, 3.0)]).is_point
    collinear = convex_hull([(0, 0), (1, 1), (2, 2)])
    assert collinear.is_segment_body
    with pytest.raises(GeometryError):
        convex_hull([])


def test_convex_hull_contains_all_inputs():
    rng = np.random.default_rng(7)
    r = np.sqrt(rng.uniform(0, 1, 100))
    phi = rng.uniform(0, TAU, 100)
    pts = [Point2(float(a * math.cos(b)), float(a * math.sin(b))) for a, b in zip(r, phi)]
    hull = convex_hull(pts)
    for p in pts:
        assert hull.contains(p) in ("interior", "boundary")


def test_polygon_support_equals_vertex_maximum_exactly():
    rng = np.random.default_rng(3)
    for _ in range(20):
        pts = rng.uniform(-1, 1, size=(8, 2))
        hull = convex_hull([Point2(*p) for p in pts])
        if hull.is_degenerate:
            continue
        verts = [piece.a for piece in hull.pieces]
        for alpha in rng.uniform(0, TAU, 16):
            n = normal_vector(alpha)
            assert hull.support_one(alpha) == max(v.dot(n) for v in verts)


def test_support_many_agrees_with_support_one():
    alphas = np.linspace(0, TAU, 257, endpoint=False)
    bodies = [p.d for p in catalog_pairs()] + [p.l for p in catalog_pairs()]
    for body in bodies:
        hm = body.support_many(alphas)
        ho = np.array([body.support_one(a) for a in alphas])
        assert np.abs(hm - ho).max() <= 1e-12


def test_clearance_many_agrees_with_clearance_one():
    rng = np.random.default_rng(5)
    px = rng.uniform(-2, 2, 200)
    py = rng.uniform(-2, 2, 200)
    for pair in catalog_pairs():
        for body in (pair.d, pair.l):
            vm = body.clearance_many(px, py)
            vo = np.array([body.clearance_one(Point2(x, y)) for x, y in zip(px, py)])
            assert np.abs(vm - vo).max() <= 1e-12


def test_contains_agrees_with_dense_direction_oracle():
    # A point is in the body iff <P, n(alpha)> <= h(alpha) for all alpha.
    rng = np.random.default_rng(11)
    alphas = np.linspace(0.0, TAU, 4096, endpoint=False)
    bodies = [p.d for p in catalog_pairs()]
    per_body = 2500
    for body in bodies:
        hs = body.support_many(alphas)
        xs = rng.uniform(-2.5, 2.5, per_body)
        ys = rng.uniform(-2.5, 2.5, per_body)
        margins = (
            np.outer(xs, np.sin(alphas)) - np.outer(ys, np.cos(alphas)) - hs
        ).max(axis=1)
        for x, y, margin in zip(xs, ys, margins):
            got = body.contains(Point2(float(x), float(y)))
            if margin > 1e-7:
                assert got == "outside"
            elif margin < -1e-7:
                assert got == "interior"


def test_contact_points_lie_on_the_supporting_line():
    for pair in catalog_pairs():
        for body in (pair.d, pair.l):
            for alpha in np.linspace(0, TAU, 41):
                h = body.support_one(alpha)
                cs = body.contact_set(alpha)
                n = normal_vector(alpha)
                assert abs(cs.first.dot(n) - h) <= 1e-9
                assert abs(cs.last.dot(n) - h) <= 1e-9


def test_translation_and_rotation_covariance():
    rng = np.random.default_rng(13)
    body = convex_hull([Point2(*p) for p in rng.uniform(-1, 1, size=(10, 2))])
    for _ in range(50):
        alpha = float(rng.uniform(0, TAU))
        v = Point2(*rng.uniform(-2, 2, 2))
        theta = float(rng.uniform(0, TAU))
        shifted = apply_motion(RigidMotion.translation(v.x, v.y), body)
        n = normal_vector(alpha)
        assert abs(shifted.support_one(alpha) - body.support_one(alpha) - v.dot(n)) <= 1e-9
        rotated = apply_motion(RigidMotion.rotation(theta), body)
        assert abs(rotated.support_one(alpha) - body.support_one(alpha - theta)) <= 1e-9


def test_apply_motion_identity_and_symmetries():
    sq = polygon_body(SQ)
    same = apply_motion(RigidMotion.identity(), sq)
    assert all(
        a.start.dist(b.start) <= 1e-15 for a, b in zip(sq.pieces, same.pieces)
    )
    # Quarter turn about the square's center permutes the vertex set.
    turned = apply_motion(RigidMotion.rotation(math.pi / 2, Point2(0.5, 0.5)), sq)
    orig = {(round(p.a.x, 9), round(p.a.y, 9)) for p in sq.pieces}
    new = {(round(p.a.x, 9), round(p.a.y, 9)) for p in turned.pieces}
    assert orig == new
    # Any rotation of a centered disk keeps all support values.
    d = disk((0, 0), 1.0)
    spun = apply_motion(RigidMotion.rotation(1.234), d)
    for a in np.linspace(0, TAU, 17):
        assert abs(spun.support_one(a) - d.support_one(a)) <= 1e-12


def test_motion_roundtrip_preserves_bodies():
    m = RigidMotion(0.7, 1.2, -0.3, True)
    body = catalog_pairs()[0].d
    back = apply_motion(m.inverse(), apply_motion(m, body))
    for a in np.linspace(0, TAU, 64):
        assert abs(back.support_one(a) - body.support_one(a)) <= 1e-9
    assert apply_motion(m, body).validate() == []


def test_reflected_body_stays_valid_and_mirrors_support():
    body = catalog_pairs()[0].d  # has graph arcs on both opposite pairs
    mirrored = apply_motion(RigidMotion.reflection_x(), body)
    assert mirrored.validate() == []
    for a in np.linspace(0, TAU, 64):
        assert abs(mirrored.support_one(-a) - body.support_one(a)) <= 1e-9


def test_degenerate_bodies():
    pt = point_body((1.0, 2.0))
    assert pt.is_point
    assert pt.contains(Point2(1.0, 2.0)) == "boundary"
    assert pt.contains(Point2(1.0, 2.1)) == "outside"
    seg = segment_body((0.0, 0.0), (2.0, 0.0))
    assert seg.is_segment_body
    assert seg.validate() == []
    assert seg.contains(Point2(1.0, 0.0)) == "boundary"
    assert seg.contains(Point2(1.0, 0.5)) == "outside"
    assert abs(seg.support_one(0.0)) <= 1e-12
