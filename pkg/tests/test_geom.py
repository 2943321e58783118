import math

import pytest
from hypothesis import given, strategies as st

from crosskit.geom import (
    TAU,
    DirectedLine,
    Direction,
    GeometryError,
    Point2,
    RigidMotion,
    along_order,
    direction_normal,
    unit_vector,
    wrap_angle,
)

angles = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@given(angles)
def test_wrap_angle_range_and_idempotence(a):
    w = wrap_angle(a)
    assert 0.0 <= w < TAU
    assert wrap_angle(w) == w


@given(angles)
def test_direction_unit_norm(a):
    d = Direction(a)
    assert abs(d.unit().norm() - 1.0) <= 1e-12
    assert abs(d.unit().dot(d.normal())) <= 1e-12


def test_direction_normal_axis_cases():
    assert direction_normal(0.0).dist(Point2(0.0, -1.0)) <= 1e-15
    assert direction_normal(math.pi / 2).dist(Point2(1.0, 0.0)) <= 1e-15
    assert direction_normal(math.pi).dist(Point2(0.0, 1.0)) <= 1e-15


@given(angles)
def test_direction_normal_antisymmetry(a):
    alpha = Direction(a).alpha  # canonical representative
    n1 = direction_normal(alpha)
    n2 = direction_normal(alpha + math.pi)
    assert (n1 + n2).norm() <= 1e-12


def test_along_order_x_axis():
    t = DirectedLine(0.0, 0.0)
    assert along_order(t, Point2(1.0, 0.0), Point2(2.0, 0.0)) == "before"
    rev = t.reversed()
    assert along_order(rev, Point2(1.0, 0.0), Point2(2.0, 0.0)) == "after"
    assert along_order(t, Point2(1.0, 0.0), Point2(1.0, 0.0)) == "equal"


def test_along_order_rejects_off_line_points():
    t = DirectedLine(0.0, 0.0)
    with pytest.raises(GeometryError, match="not on line"):
        along_order(t, Point2(0.0, 0.5), Point2(1.0, 0.0))


def test_along_order_is_a_total_preorder_on_collinear_points():
    t = DirectedLine(1.1, 0.37)
    pts = [t.point_at(s) for s in (-2.0, -0.5, 0.0, 1.5, 3.0)]
    for p in pts:
        assert along_order(t, p, p) == "equal"
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            rel = along_order(t, p, q)
            back = along_order(t, q, p)
            if rel == "before":
                assert back == "after" and i < j
            elif rel == "after":
                assert back == "before" and i > j


def test_line_reversal_swaps_half_planes():
    t = DirectedLine(0.7, 1.3)
    p = Point2(2.0, -3.0)
    assert abs(t.residual(p) + t.reversed().residual(p)) <= 1e-12


motions = st.builds(
    RigidMotion,
    st.floats(-10, 10, allow_nan=False),
    st.floats(-5, 5, allow_nan=False),
    st.floats(-5, 5, allow_nan=False),
    st.booleans(),
)
points = st.builds(Point2, st.floats(-10, 10, allow_nan=False), st.floats(-10, 10, allow_nan=False))


@given(motions, points, points)
def test_motion_preserves_distances(m, p, q):
    assert abs(m.apply_point(p).dist(m.apply_point(q)) - p.dist(q)) <= 1e-9


@given(motions, points)
def test_motion_inverse_roundtrip(m, p):
    assert m.inverse().apply_point(m.apply_point(p)).dist(p) <= 1e-9


@given(motions, motions, motions, points)
def test_motion_composition_associative(a, b, c, p):
    left = a.compose(b).compose(c).apply_point(p)
    right = a.compose(b.compose(c)).apply_point(p)
    assert left.dist(right) <= 1e-9


@given(motions, motions, points)
def test_motion_compose_matches_sequential_application(a, b, p):
    assert a.compose(b).apply_point(p).dist(a.apply_point(b.apply_point(p))) <= 1e-9


def test_rotation_about_a_point_fixes_it():
    c = Point2(0.5, 0.5)
    m = RigidMotion.rotation(math.pi / 2, about=c)
    assert m.apply_point(c).dist(c) <= 1e-15
    assert m.apply_point(Point2(1.0, 0.5)).dist(Point2(0.5, 1.0)) <= 1e-12


def test_unit_vector_matches_direction():
    assert unit_vector(0.0).dist(Point2(1.0, 0.0)) <= 1e-15
