"""Compact convex bodies with piecewise boundaries.

A body is a counterclockwise cyclic chain of boundary pieces.  Piece
kinds: straight segments, circular arcs, "graph arcs" (scaled rigid
placements of the concave canonical curves y = (1 - x^2)/2 and
y = (1 - x^4)/4 over x in [-1, 1], traversed from x = +1 to x = -1 so
the body stays on the left), and full ellipses as a single smooth
closed piece.  Degenerate bodies (a single point, a segment) are
first-class values.

Every piece contributes one convex constraint: the intersection of all
piece constraints is exactly the body.  A segment contributes its
line's body-side half-plane; a curved piece contributes its
below-tangent envelope (below the curve within the span, below the
extended endpoint tangents outside it).  This gives a signed clearance
``max over pieces`` that is negative inside, zero on the boundary and
positive outside, is convex along any straight line, and approximates
Euclidean distance near the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .geom import (
    EXACT_BAND,
    TAU,
    TOL,
    DirectionLike,
    GeometryError,
    Point2,
    RigidMotion,
    angle_in_ccw_span,
    as_angle,
    normal_vector,
    unit_vector,
    wrap_angle,
    wrap_signed,
)

# Chain-closure and achieve tolerances, absolute (catalog diameter is O(1)).
CHAIN_TOL = 1e-9
ACHIEVE_TOL = 1e-9
TURN_TOL = 1e-7

# Membership zones ordered from deep inside to clearly outside.
ZONE_IN = -2
ZONE_NEAR_IN = -1
ZONE_ON = 0
ZONE_NEAR_OUT = 1
ZONE_OUT = 2


def classify_clearance(d: float, tol: float = TOL, exact: float = EXACT_BAND) -> int:
    """Map a signed clearance to a membership zone."""
    if d > tol:
        return ZONE_OUT
    if d >= -tol:
        if abs(d) <= exact:
            return ZONE_ON
        return ZONE_NEAR_OUT if d > 0.0 else ZONE_NEAR_IN
    return ZONE_IN


def zone_is_member(zone: int) -> bool:
    """Closed-set membership: the whole tolerance band counts as inside."""
    return zone != ZONE_OUT


def zone_is_definite_member(zone: int) -> bool:
    """Membership that survives an adversarial reading of the band."""
    return zone in (ZONE_IN, ZONE_ON)


# ---------------------------------------------------------------------------
# Boundary pieces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """Straight boundary piece from a to b."""

    a: Point2
    b: Point2

    @cached_property
    def direction_angle(self) -> float:
        return math.atan2(self.b.y - self.a.y, self.b.x - self.a.x)

    @cached_property
    def _normal(self) -> Point2:
        d = self.b - self.a
        n = d.norm()
        return Point2(d.y / n, -d.x / n)

    @cached_property
    def _offset(self) -> float:
        return self.a.dot(self._normal)

    @property
    def start(self) -> Point2:
        return self.a

    @property
    def end(self) -> Point2:
        return self.b

    def length(self) -> float:
        return self.a.dist(self.b)

    def point_at(self, t: float) -> Point2:
        return Point2(
            self.a.x + (self.b.x - self.a.x) * t,
            self.a.y + (self.b.y - self.a.y) * t,
        )

    def points_at(self, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return (
            self.a.x + (self.b.x - self.a.x) * ts,
            self.a.y + (self.b.y - self.a.y) * ts,
        )

    def tangent_at(self, t: float) -> float:
        return self.direction_angle

    def tangent_start(self) -> float:
        return self.direction_angle

    def tangent_turn(self) -> float:
        return 0.0

    def support_one(self, alpha: float) -> float:
        nx, ny = math.sin(alpha), -math.cos(alpha)
        return max(self.a.x * nx + self.a.y * ny, self.b.x * nx + self.b.y * ny)

    def support_many(self, nx: np.ndarray, ny: np.ndarray) -> np.ndarray:
        va = self.a.x * nx + self.a.y * ny
        vb = self.b.x * nx + self.b.y * ny
        return np.maximum(va, vb)

    def contact(self, alpha: float, tie: float = ACHIEVE_TOL) -> list[tuple[float, Point2]]:
        nx, ny = math.sin(alpha), -math.cos(alpha)
        va = self.a.x * nx + self.a.y * ny
        vb = self.b.x * nx + self.b.y * ny
        if va > vb + tie:
            return [(0.0, self.a)]
        if vb > va + tie:
            return [(1.0, self.b)]
        return [(0.0, self.a), (1.0, self.b)]

    def clearance_one(self, p: Point2) -> float:
        return p.dot(self._normal) - self._offset

    def clearance_many(self, px: np.ndarray, py: np.ndarray) -> np.ndarray:
        n = self._normal
        return px * n.x + py * n.y - self._offset

    def closest_param(self, p: Point2) -> tuple[float, float]:
        d = self.b - self.a
        t = (p - self.a).dot(d) / d.dot(d)
        t = min(1.0, max(0.0, t))
        return t, self.point_at(t).dist(p)

    def transformed(self, m: RigidMotion) -> "Segment":
        return Segment(m.apply_point(self.a), m.apply_point(self.b))

    def transformed_reflected(self, m: RigidMotion) -> "Segment":
        # m includes a reflection; the chain is reversed by the caller.
        return Segment(m.apply_point(self.b), m.apply_point(self.a))


@dataclass(frozen=True)
class CircularArc:
    """Circular arc swept counterclockwise from start_angle by sweep <= tau."""

    center: Point2
    radius: float
    start_angle: float
    sweep: float

    def __post_init__(self) -> None:
        if self.radius <= 0.0:
            raise GeometryError("arc radius must be positive")
        if not 0.0 < self.sweep <= TAU + 1e-12:
            raise GeometryError("arc sweep must lie in (0, tau]")

    @property
    def is_full_circle(self) -> bool:
        return self.sweep >= TAU - 1e-12

    @property
    def start(self) -> Point2:
        return self.center + self.radius * unit_vector(self.start_angle)

    @property
    def end(self) -> Point2:
        return self.center + self.radius * unit_vector(self.start_angle + self.sweep)

    def length(self) -> float:
        return self.radius * self.sweep

    def point_at(self, t: float) -> Point2:
        return self.center + self.radius * unit_vector(self.start_angle + t * self.sweep)

    def points_at(self, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        phi = self.start_angle + ts * self.sweep
        return (
            self.center.x + self.radius * np.cos(phi),
            self.center.y + self.radius * np.sin(phi),
        )

    def tangent_at(self, t: float) -> float:
        return self.start_angle + t * self.sweep + 0.5 * math.pi

    def tangent_start(self) -> float:
        return self.start_angle + 0.5 * math.pi

    def tangent_turn(self) -> float:
        return self.sweep

    def _normal_in_span(self, alpha: float) -> bool:
        # The outward normal at polar angle psi supports direction alpha = psi + pi/2.
        return angle_in_ccw_span(alpha - 0.5 * math.pi, self.start_angle, self.sweep)

    def support_one(self, alpha: float) -> float:
        nx, ny = math.sin(alpha), -math.cos(alpha)
        base = self.center.x * nx + self.center.y * ny
        if self._normal_in_span(alpha):
            return base + self.radius
        sa = self.start
        sb = self.end
        return max(sa.x * nx + sa.y * ny, sb.x * nx + sb.y * ny)

    def support_many(self, nx: np.ndarray, ny: np.ndarray) -> np.ndarray:
        base = self.center.x * nx + self.center.y * ny
        psi = np.arctan2(ny, nx)  # polar angle of the normal vector
        inside = np.mod(psi - self.start_angle, TAU) <= self.sweep
        sa, sb = self.start, self.end
        ends = np.maximum(sa.x * nx + sa.y * ny, sb.x * nx + sb.y * ny)
        return np.where(inside, base + self.radius, ends)

    def contact(self, alpha: float, tie: float = ACHIEVE_TOL) -> list[tuple[float, Point2]]:
        if self._normal_in_span(alpha):
            psi = alpha - 0.5 * math.pi
            t = wrap_angle(psi - self.start_angle) / self.sweep
            t = min(1.0, t)
            return [(t, self.point_at(t))]
        nx, ny = math.sin(alpha), -math.cos(alpha)
        sa, sb = self.start, self.end
        va = sa.x * nx + sa.y * ny
        vb = sb.x * nx + sb.y * ny
        if va > vb + tie:
            return [(0.0, sa)]
        if vb > va + tie:
            return [(1.0, sb)]
        return [(0.0, sa), (1.0, sb)]

    def clearance_one(self, p: Point2) -> float:
        v = p - self.center
        phi = math.atan2(v.y, v.x)
        if angle_in_ccw_span(phi, self.start_angle, self.sweep):
            return v.norm() - self.radius
        ea = unit_vector(self.start_angle)
        eb = unit_vector(self.start_angle + self.sweep)
        return max(v.dot(ea), v.dot(eb)) - self.radius

    def clearance_many(self, px: np.ndarray, py: np.ndarray) -> np.ndarray:
        vx = px - self.center.x
        vy = py - self.center.y
        r = np.hypot(vx, vy)
        if self.is_full_circle:
            return r - self.radius
        phi = np.arctan2(vy, vx)
        inside = np.mod(phi - self.start_angle, TAU) <= self.sweep
        ea = unit_vector(self.start_angle)
        eb = unit_vector(self.start_angle + self.sweep)
        ends = np.maximum(vx * ea.x + vy * ea.y, vx * eb.x + vy * eb.y)
        return np.where(inside, r, ends) - self.radius

    def closest_param(self, p: Point2) -> tuple[float, float]:
        v = p - self.center
        phi = math.atan2(v.y, v.x)
        off = wrap_angle(phi - self.start_angle)
        if off <= self.sweep:
            t = off / self.sweep
        else:
            # Nearer endpoint by angular distance outside the span.
            t = 1.0 if off - self.sweep <= TAU - off else 0.0
        t = min(1.0, max(0.0, t))
        return t, self.point_at(t).dist(p)

    def transformed(self, m: RigidMotion) -> "CircularArc":
        return CircularArc(
            m.apply_point(self.center),
            self.radius,
            m.apply_angle(self.start_angle),
            self.sweep,
        )

    def transformed_reflected(self, m: RigidMotion) -> "CircularArc":
        # Reflection maps the ccw span [s, s+w] to the ccw span [-(s+w), -s].
        return CircularArc(
            m.apply_point(self.center),
            self.radius,
            m.apply_angle(self.start_angle + self.sweep),
            self.sweep,
        )


_GRAPH_CURVES = ("parabolic", "quartic")


@dataclass(frozen=True)
class GraphArc:
    """Scaled rigid placement of a canonical concave graph over [-1, 1].

    Canonical curves: parabolic y = (1 - x^2)/2 and quartic
    y = (1 - x^4)/4.  Both vanish at x = +-1 with slopes -+1, so the
    endpoint tangents continue 45-degree neighbour edges.  The piece is
    traversed from canonical (1, 0) to (-1, 0); with the body below the
    curve this keeps the body on the left.  World placement is
    p -> scale * R(rotation) p + shift.
    """

    curve: str
    scale: float
    rotation: float
    shift: Point2

    def __post_init__(self) -> None:
        if self.curve not in _GRAPH_CURVES:
            raise GeometryError(f"unknown graph curve {self.curve!r}")
        if self.scale <= 0.0:
            raise GeometryError("graph arc scale must be positive")

    def _f(self, x):
        if self.curve == "parabolic":
            return 0.5 * (1.0 - x * x)
        return 0.25 * (1.0 - x * x * x * x)

    def _fp(self, x):
        if self.curve == "parabolic":
            return -x
        return -(x * x * x)

    def _contact_x(self, m: float) -> float:
        # Abscissa where the tangent slope equals m, clamped to [-1, 1].
        if self.curve == "parabolic":
            x = -m
        else:
            x = -math.copysign(abs(m) ** (1.0 / 3.0), m)
        return min(1.0, max(-1.0, x))

    def _to_world(self, p: Point2) -> Point2:
        return self.scale * p.rotated(self.rotation) + self.shift

    @property
    def start(self) -> Point2:
        return self._to_world(Point2(1.0, 0.0))

    @property
    def end(self) -> Point2:
        return self._to_world(Point2(-1.0, 0.0))

    @cached_property
    def _length(self) -> float:
        xs = np.linspace(-1.0, 1.0, 2049)
        return float(self.scale * np.trapezoid(np.hypot(1.0, self._fp(xs)), xs))

    def length(self) -> float:
        return self._length

    def point_at(self, t: float) -> Point2:
        x = 1.0 - 2.0 * t
        return self._to_world(Point2(x, self._f(x)))

    def points_at(self, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        x = 1.0 - 2.0 * ts
        y = self._f(x)
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return (
            self.scale * (c * x - s * y) + self.shift.x,
            self.scale * (s * x + c * y) + self.shift.y,
        )

    def tangent_at(self, t: float) -> float:
        x = 1.0 - 2.0 * t
        return self.rotation + math.pi + math.atan(self._fp(x))

    def tangent_start(self) -> float:
        return self.rotation + math.pi + math.atan(self._fp(1.0))

    def tangent_turn(self) -> float:
        return math.atan(self._fp(-1.0)) - math.atan(self._fp(1.0))

    def support_one(self, alpha: float) -> float:
        ac = alpha - self.rotation
        nx, ny = math.sin(ac), -math.cos(ac)
        if angle_in_ccw_span(ac, 0.75 * math.pi, 0.5 * math.pi):
            x = self._contact_x(math.tan(ac))
            val = x * nx + self._f(x) * ny
        else:
            val = max(nx, -nx)  # endpoints (+-1, 0)
        n = normal_vector(alpha)
        return self.scale * val + self.shift.dot(n)

    def support_many(self, nx: np.ndarray, ny: np.ndarray) -> np.ndarray:
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        # Rotate normals into the canonical frame.
        cnx = c * nx + s * ny
        cny = -s * nx + c * ny
        ac = np.arctan2(cnx, -cny)  # canonical direction angle via its normal
        inside = np.mod(ac - 0.75 * math.pi, TAU) <= 0.5 * math.pi
        with np.errstate(divide="ignore", invalid="ignore"):
            m = np.where(np.abs(cny) > 1e-300, cnx / -cny, 0.0)  # tan of ac
        m = np.where(inside, m, 0.0)
        if self.curve == "parabolic":
            x = np.clip(-m, -1.0, 1.0)
        else:
            x = np.clip(-np.cbrt(m), -1.0, 1.0)
        val_in = x * cnx + self._f(x) * cny
        val_out = np.abs(cnx)
        val = np.where(inside, val_in, val_out)
        return self.scale * val + self.shift.x * nx + self.shift.y * ny

    def contact(self, alpha: float, tie: float = ACHIEVE_TOL) -> list[tuple[float, Point2]]:
        ac = alpha - self.rotation
        if angle_in_ccw_span(ac, 0.75 * math.pi, 0.5 * math.pi):
            x = self._contact_x(math.tan(ac))
            t = 0.5 * (1.0 - x)
            return [(t, self.point_at(t))]
        nx = math.sin(ac)
        if nx > tie / max(self.scale, 1e-300):
            return [(0.0, self.start)]
        if -nx > tie / max(self.scale, 1e-300):
            return [(1.0, self.end)]
        return [(0.0, self.start), (1.0, self.end)]

    def clearance_one(self, p: Point2) -> float:
        q = (p - self.shift).rotated(-self.rotation)
        qx, qy = q.x / self.scale, q.y / self.scale
        if qx > 1.0:
            gap, slope = qy - (1.0 - qx), -1.0
        elif qx < -1.0:
            gap, slope = qy - (1.0 + qx), 1.0
        else:
            gap, slope = qy - self._f(qx), self._fp(qx)
        return self.scale * gap / math.hypot(1.0, slope)

    def clearance_many(self, px: np.ndarray, py: np.ndarray) -> np.ndarray:
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        tx = px - self.shift.x
        ty = py - self.shift.y
        qx = (c * tx + s * ty) / self.scale
        qy = (-s * tx + c * ty) / self.scale
        xc = np.clip(qx, -1.0, 1.0)
        env = np.where(
            qx > 1.0, 1.0 - qx, np.where(qx < -1.0, 1.0 + qx, self._f(xc))
        )
        slope = np.where(qx > 1.0, -1.0, np.where(qx < -1.0, 1.0, self._fp(xc)))
        return self.scale * (qy - env) / np.hypot(1.0, slope)

    def closest_param(self, p: Point2) -> tuple[float, float]:
        ts = np.linspace(0.0, 1.0, 129)
        q = (p - self.shift).rotated(-self.rotation)
        qx, qy = q.x / self.scale, q.y / self.scale
        xs = 1.0 - 2.0 * ts
        d2 = (xs - qx) ** 2 + (self._f(xs) - qy) ** 2
        i = int(np.argmin(d2))
        lo = max(0.0, ts[i] - 1.0 / 128.0)
        hi = min(1.0, ts[i] + 1.0 / 128.0)
        # Golden-section polish of the locally unimodal distance.
        inv = (math.sqrt(5.0) - 1.0) / 2.0
        x1 = hi - inv * (hi - lo)
        x2 = lo + inv * (hi - lo)
        f1 = self.point_at(x1).dist(p)
        f2 = self.point_at(x2).dist(p)
        for _ in range(80):
            if f1 <= f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - inv * (hi - lo)
                f1 = self.point_at(x1).dist(p)
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + inv * (hi - lo)
                f2 = self.point_at(x2).dist(p)
        t = 0.5 * (lo + hi)
        return t, self.point_at(t).dist(p)

    def transformed(self, m: RigidMotion) -> "GraphArc":
        return GraphArc(
            self.curve,
            self.scale,
            wrap_angle(self.rotation + m.angle),
            m.apply_point(self.shift),
        )

    def transformed_reflected(self, m: RigidMotion) -> "GraphArc":
        # The canonical curves are even in x, so a reflecting motion maps the
        # piece onto the same curve with rotation (pi - r) + angle; the chain
        # reversal done by the caller restores the +1 -> -1 traversal.
        return GraphArc(
            self.curve,
            self.scale,
            wrap_angle((math.pi - self.rotation) + m.angle),
            m.apply_point(self.shift),
        )


@dataclass(frozen=True)
class EllipseArc:
    """A full ellipse boundary as one smooth closed piece.

    Canonical point at parameter phi is (a cos phi, b sin phi), mapped by
    rotation about the center.  Support values and contacts are closed
    form, so the ellipse is exact, not piecewise-approximated.
    """

    center: Point2
    a: float
    b: float
    angle: float = 0.0

    def __post_init__(self) -> None:
        if self.a <= 0.0 or self.b <= 0.0:
            raise GeometryError("ellipse semi-axes must be positive")

    @property
    def start(self) -> Point2:
        return self.point_at(0.0)

    @property
    def end(self) -> Point2:
        return self.point_at(1.0)

    @cached_property
    def _length(self) -> float:
        phi = np.linspace(0.0, TAU, 4097)
        return float(
            np.trapezoid(np.hypot(self.a * np.sin(phi), self.b * np.cos(phi)), phi)
        )

    def length(self) -> float:
        return self._length

    def point_at(self, t: float) -> Point2:
        phi = TAU * t
        p = Point2(self.a * math.cos(phi), self.b * math.sin(phi))
        return self.center + p.rotated(self.angle)

    def points_at(self, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        phi = TAU * ts
        x = self.a * np.cos(phi)
        y = self.b * np.sin(phi)
        c, s = math.cos(self.angle), math.sin(self.angle)
        return (
            self.center.x + c * x - s * y,
            self.center.y + s * x + c * y,
        )

    def tangent_at(self, t: float) -> float:
        phi = TAU * t
        raw = math.atan2(self.b * math.cos(phi), -self.a * math.sin(phi))
        # Lift continuously: the tangent angle stays within pi/2 of the
        # circle's lift pi/2 + phi inside each quadrant.
        guess = 0.5 * math.pi + phi
        return self.angle + guess + wrap_signed(raw - guess)

    def tangent_start(self) -> float:
        return self.angle + 0.5 * math.pi

    def tangent_turn(self) -> float:
        return TAU

    def _canonical_normal(self, alpha: float) -> tuple[float, float]:
        ac = alpha - self.angle
        return math.sin(ac), -math.cos(ac)

    def support_one(self, alpha: float) -> float:
        cnx, cny = self._canonical_normal(alpha)
        n = normal_vector(alpha)
        return math.hypot(self.a * cnx, self.b * cny) + self.center.dot(n)

    def support_many(self, nx: np.ndarray, ny: np.ndarray) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        cnx = c * nx + s * ny
        cny = -s * nx + c * ny
        return np.hypot(self.a * cnx, self.b * cny) + self.center.x * nx + self.center.y * ny

    def contact(self, alpha: float, tie: float = ACHIEVE_TOL) -> list[tuple[float, Point2]]:
        cnx, cny = self._canonical_normal(alpha)
        phi = math.atan2(self.b * cny, self.a * cnx)
        t = wrap_angle(phi) / TAU
        return [(t, self.point_at(t))]

    def clearance_one(self, p: Point2) -> float:
        q = (p - self.center).rotated(-self.angle)
        lvl = math.hypot(q.x / self.a, q.y / self.b)
        if lvl < 1e-12:
            return -min(self.a, self.b)
        grad = math.hypot(q.x / (self.a * self.a), q.y / (self.b * self.b)) / lvl
        return (lvl - 1.0) / grad

    def clearance_many(self, px: np.ndarray, py: np.ndarray) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        tx = px - self.center.x
        ty = py - self.center.y
        qx = c * tx + s * ty
        qy = -s * tx + c * ty
        lvl = np.hypot(qx / self.a, qy / self.b)
        grad = np.hypot(qx / (self.a * self.a), qy / (self.b * self.b)) / np.maximum(lvl, 1e-12)
        return np.where(lvl < 1e-12, -min(self.a, self.b), (lvl - 1.0) / np.maximum(grad, 1e-300))

    def closest_param(self, p: Point2) -> tuple[float, float]:
        ts = np.linspace(0.0, 1.0, 257, endpoint=False)
        pts = np.array([[pt.x, pt.y] for pt in (self.point_at(t) for t in ts)])
        d2 = (pts[:, 0] - p.x) ** 2 + (pts[:, 1] - p.y) ** 2
        i = int(np.argmin(d2))
        lo, hi = ts[i] - 1.0 / 256.0, ts[i] + 1.0 / 256.0
        inv = (math.sqrt(5.0) - 1.0) / 2.0
        x1 = hi - inv * (hi - lo)
        x2 = lo + inv * (hi - lo)
        f1 = self.point_at(x1 % 1.0).dist(p)
        f2 = self.point_at(x2 % 1.0).dist(p)
        for _ in range(80):
            if f1 <= f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - inv * (hi - lo)
                f1 = self.point_at(x1 % 1.0).dist(p)
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + inv * (hi - lo)
                f2 = self.point_at(x2 % 1.0).dist(p)
        t = 0.5 * (lo + hi) % 1.0
        return t, self.point_at(t).dist(p)

    def transformed(self, m: RigidMotion) -> "EllipseArc":
        return EllipseArc(
            m.apply_point(self.center), self.a, self.b, m.apply_angle(self.angle)
        )

    def transformed_reflected(self, m: RigidMotion) -> "EllipseArc":
        return EllipseArc(
            m.apply_point(self.center), self.a, self.b, m.apply_angle(self.angle)
        )


BoundaryPiece = Union[Segment, CircularArc, GraphArc, EllipseArc]


# ---------------------------------------------------------------------------
# The body
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContactSet:
    """Contact of a supporting line with a body: first and last point by <_t."""

    alpha: float
    first: Point2
    last: Point2
    first_param: float
    last_param: float
    is_segment: bool


@dataclass(frozen=True)
class ConvexBody:
    """Nonempty compact convex region bounded by a ccw piece chain.

    Degenerate forms: a single point (no pieces, anchor set) and a
    segment (two opposite Segment pieces).
    """

    pieces: tuple[BoundaryPiece, ...]
    anchor: Optional[Point2] = None

    @property
    def is_point(self) -> bool:
        return not self.pieces

    @property
    def is_segment_body(self) -> bool:
        return len(self.pieces) == 2 and all(isinstance(p, Segment) for p in self.pieces)

    @property
    def is_degenerate(self) -> bool:
        return self.is_point or self.is_segment_body

    @cached_property
    def _polygon_vertices(self) -> Optional[np.ndarray]:
        if not self.pieces or not all(isinstance(p, Segment) for p in self.pieces):
            return None
        return np.array([[p.a.x, p.a.y] for p in self.pieces])

    @cached_property
    def _clearance_normals(self) -> Optional[tuple[np.ndarray, np.ndarray]]:
        if self._polygon_vertices is None:
            return None
        ns = np.array([[p._normal.x, p._normal.y] for p in self.pieces])
        offs = np.array([p._offset for p in self.pieces])
        return ns, offs

    # -- support ------------------------------------------------------------

    def support_one(self, d: DirectionLike) -> float:
        alpha = as_angle(d)
        if self.is_point:
            return self.anchor.dot(normal_vector(alpha))
        verts = self._polygon_vertices
        if verts is not None:
            nx, ny = math.sin(alpha), -math.cos(alpha)
            return float(np.max(verts[:, 0] * nx + verts[:, 1] * ny))
        return max(p.support_one(alpha) for p in self.pieces)

    def support_many(self, alphas: np.ndarray) -> np.ndarray:
        alphas = np.asarray(alphas, dtype=float)
        nx = np.sin(alphas)
        ny = -np.cos(alphas)
        if self.is_point:
            return self.anchor.x * nx + self.anchor.y * ny
        verts = self._polygon_vertices
        if verts is not None:
            return (np.outer(nx, verts[:, 0]) + np.outer(ny, verts[:, 1])).max(axis=1)
        vals = self.pieces[0].support_many(nx, ny)
        for p in self.pieces[1:]:
            vals = np.maximum(vals, p.support_many(nx, ny))
        return vals

    def contact_set(self, d: DirectionLike) -> ContactSet:
        alpha = as_angle(d)
        if self.is_point:
            return ContactSet(alpha, self.anchor, self.anchor, 0.0, 0.0, False)
        h = self.support_one(alpha)
        u = unit_vector(alpha)
        candidates: list[tuple[float, float, Point2]] = []  # (s_along, param, point)
        for i, piece in enumerate(self.pieces):
            if piece.support_one(alpha) < h - ACHIEVE_TOL:
                continue
            for t, pt in piece.contact(alpha):
                candidates.append((pt.dot(u), i + t, pt))
        candidates.sort(key=lambda c: c[0])
        s_first, prm_first, first = candidates[0]
        s_last, prm_last, last = candidates[-1]
        is_seg = s_last - s_first > TOL
        return ContactSet(alpha, first, last, prm_first, prm_last, is_seg)

    # -- membership -----------------------------------------------------------

    def clearance_one(self, p: Point2) -> float:
        if self.is_point:
            return p.dist(self.anchor)
        if self.is_segment_body:
            t, dist = self.pieces[0].closest_param(p)
            return dist
        return max(piece.clearance_one(p) for piece in self.pieces)

    def clearance_many(self, px: np.ndarray, py: np.ndarray) -> np.ndarray:
        px = np.asarray(px, dtype=float)
        py = np.asarray(py, dtype=float)
        if self.is_point:
            return np.hypot(px - self.anchor.x, py - self.anchor.y)
        fast = self._clearance_normals
        if fast is not None and not self.is_segment_body:
            ns, offs = fast
            vals = px[..., None] * ns[:, 0] + py[..., None] * ns[:, 1] - offs
            return vals.max(axis=-1)
        if self.is_segment_body:
            seg = self.pieces[0]
            ax, ay = seg.a.x, seg.a.y
            dx, dy = seg.b.x - ax, seg.b.y - ay
            L2 = dx * dx + dy * dy
            t = np.clip(((px - ax) * dx + (py - ay) * dy) / L2, 0.0, 1.0)
            return np.hypot(px - (ax + t * dx), py - (ay + t * dy))
        vals = self.pieces[0].clearance_many(px, py)
        for piece in self.pieces[1:]:
            vals = np.maximum(vals, piece.clearance_many(px, py))
        return vals

    def inside_mask(self, px: np.ndarray, py: np.ndarray, band: float = TOL) -> np.ndarray:
        """Boolean mask of points with clearance <= band (in-place accumulation)."""
        if self.is_point or self.is_segment_body:
            return self.clearance_many(px, py) <= band
        mask = None
        if self._polygon_vertices is not None:
            for piece in self.pieces:
                n = piece._normal
                vals = px * n.x
                vals += py * n.y
                vals -= piece._offset
                hit = vals <= band
                mask = hit if mask is None else (mask & hit)
            return mask
        for piece in self.pieces:
            hit = piece.clearance_many(px, py) <= band
            mask = hit if mask is None else (mask & hit)
        return mask

    def membership(self, p: Point2) -> tuple[int, float]:
        d = self.clearance_one(p)
        return classify_clearance(d), d

    def contains(self, p: Point2) -> str:
        zone, _ = self.membership(p)
        if zone == ZONE_OUT:
            return "outside"
        if zone == ZONE_IN:
            return "interior"
        return "boundary"

    # -- boundary parametrization --------------------------------------------

    @property
    def param_period(self) -> float:
        return float(len(self.pieces))

    def boundary_point(self, s: float) -> Point2:
        n = len(self.pieces)
        if n == 0:
            return self.anchor
        s = s % n
        i = min(int(s), n - 1)
        return self.pieces[i].point_at(s - i)

    def locate_boundary_param(self, p: Point2) -> tuple[float, float]:
        """Boundary parameter closest to p; returns (param, distance)."""
        best_s, best_d = 0.0, math.inf
        for i, piece in enumerate(self.pieces):
            t, d = piece.closest_param(p)
            if d < best_d:
                best_s, best_d = i + t, d
        return best_s, best_d

    def perimeter(self) -> float:
        return sum(p.length() for p in self.pieces)

    def bounding_box(self) -> tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax) from support values."""
        xmax = self.support_one(0.5 * math.pi)
        ymax = self.support_one(math.pi)
        xmin = -self.support_one(1.5 * math.pi)
        ymin = -self.support_one(0.0)
        return xmin, ymin, xmax, ymax

    # -- validation ------------------------------------------------------------

    def validate(self) -> list[str]:
        violations: list[str] = []
        if self.is_point:
            if self.anchor is None or not self.anchor.is_finite():
                violations.append("point body requires a finite anchor")
            return violations
        n = len(self.pieces)
        for i, piece in enumerate(self.pieces):
            if piece.length() <= CHAIN_TOL:
                violations.append(f"piece {i} has non-positive length")
        total_turn = 0.0
        for i, piece in enumerate(self.pieces):
            nxt = self.pieces[(i + 1) % n]
            gap = piece.end.dist(nxt.start)
            if gap > 1e-7:
                violations.append(f"chain not closed at junction {i} (gap {gap:.3e})")
            turn = piece.tangent_turn()
            if turn < -1e-12:
                violations.append(f"piece {i}: tangent turn negative")
            total_turn += turn
            junction = wrap_signed(nxt.tangent_start() - piece.tangent_at(1.0))
            if junction < -1e-9:
                violations.append(f"junction {i}: tangent turn negative")
            total_turn += junction
        if n > 0 and abs(total_turn - TAU) > TURN_TOL:
            violations.append(
                f"total tangent turn {total_turn:.9f} differs from 2*pi"
            )
        return violations


def validate(body: ConvexBody) -> list[str]:
    """Module-level alias for ConvexBody.validate."""
    return body.validate()


def support_value(body: ConvexBody, d: DirectionLike) -> float:
    """Support value: max over the body of <P, n(alpha)>."""
    return body.support_one(d)


def contact_set(body: ConvexBody, d: DirectionLike) -> ContactSet:
    return body.contact_set(d)


def contains(body: ConvexBody, p: Point2) -> str:
    return body.contains(p)


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def disk(center: Point2 | tuple[float, float] = (0.0, 0.0), radius: float = 1.0) -> ConvexBody:
    c = center if isinstance(center, Point2) else Point2(*center)
    if radius <= 0.0:
        raise GeometryError("disk radius must be positive")
    return ConvexBody((CircularArc(c, radius, -0.5 * math.pi, TAU),))


def polygon_body(vertices: Sequence[Point2 | tuple[float, float]]) -> ConvexBody:
    """Body from ccw convex vertices (at least 3, non-collinear)."""
    pts = [v if isinstance(v, Point2) else Point2(*v) for v in vertices]
    if len(pts) < 3:
        raise GeometryError("polygon needs at least 3 vertices")
    pieces = tuple(
        Segment(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))
    )
    body = ConvexBody(pieces)
    bad = body.validate()
    if bad:
        raise GeometryError("polygon is not a valid ccw convex chain: " + "; ".join(bad))
    return body


def regular_polygon(
    n: int,
    circumradius: float = 1.0,
    center: Point2 | tuple[float, float] = (0.0, 0.0),
    phase: float = 0.0,
) -> ConvexBody:
    if n < 3:
        raise GeometryError("regular polygon needs n >= 3")
    if circumradius <= 0.0:
        raise GeometryError("circumradius must be positive")
    c = center if isinstance(center, Point2) else Point2(*center)
    pts = [c + circumradius * unit_vector(phase + TAU * k / n) for k in range(n)]
    return polygon_body(pts)


def ellipse_body(
    a: float,
    b: float,
    center: Point2 | tuple[float, float] = (0.0, 0.0),
    angle: float = 0.0,
) -> ConvexBody:
    c = center if isinstance(center, Point2) else Point2(*center)
    return ConvexBody((EllipseArc(c, a, b, wrap_angle(angle)),))


def point_body(p: Point2 | tuple[float, float]) -> ConvexBody:
    pt = p if isinstance(p, Point2) else Point2(*p)
    return ConvexBody((), anchor=pt)


def segment_body(a: Point2 | tuple[float, float], b: Point2 | tuple[float, float]) -> ConvexBody:
    pa = a if isinstance(a, Point2) else Point2(*a)
    pb = b if isinstance(b, Point2) else Point2(*b)
    if pa.dist(pb) <= CHAIN_TOL:
        return point_body(pa)
    return ConvexBody((Segment(pa, pb), Segment(pb, pa)))


def body_from_pieces(pieces: Iterable[BoundaryPiece]) -> ConvexBody:
    body = ConvexBody(tuple(pieces))
    bad = body.validate()
    if bad:
        raise GeometryError("invalid piece chain: " + "; ".join(bad))
    return body


def convex_hull(points: Sequence[Point2 | tuple[float, float]]) -> ConvexBody:
    """Convex hull body of a point set (monotone chain)."""
    pts = sorted(
        {(p.x, p.y) if isinstance(p, Point2) else (float(p[0]), float(p[1])) for p in points}
    )
    if not pts:
        raise GeometryError("convex hull of an empty point set")
    if len(pts) == 1:
        return point_body(Point2(*pts[0]))

    def half(seq):
        out: list[tuple[float, float]] = []
        for p in seq:
            while len(out) >= 2:
                ox, oy = out[-2]
                ax, ay = out[-1]
                if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) <= 1e-15:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2:
        return segment_body(Point2(*hull[0]), Point2(*hull[1]))
    if len(hull) < 2:
        return point_body(Point2(*pts[0]))
    return polygon_body([Point2(*p) for p in hull])


# ---------------------------------------------------------------------------
# Rigid motions of bodies
# ---------------------------------------------------------------------------


def apply_motion(m: RigidMotion, x: Point2 | ConvexBody) -> Point2 | ConvexBody:
    """Apply a rigid motion to a point or a body (chains stay ccw)."""
    if isinstance(x, Point2):
        return m.apply_point(x)
    if x.is_point:
        return point_body(m.apply_point(x.anchor))
    if not m.reflect:
        return ConvexBody(tuple(p.transformed(m) for p in x.pieces))
    pieces = tuple(p.transformed_reflected(m) for p in reversed(x.pieces))
    return ConvexBody(pieces)
