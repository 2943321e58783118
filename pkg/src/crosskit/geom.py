"""Planar primitives: points, directions, directed lines, rigid motions.

Conventions, fixed here and used by every other module:

* A direction is an angle ``alpha`` reduced to ``[0, tau)``; its unit
  vector is ``u(alpha) = (cos alpha, sin alpha)``.
* The right-hand normal of a direction is ``n(alpha) = (sin alpha,
  -cos alpha)``.  The directed line with direction ``alpha`` and offset
  ``c`` is the point set ``{P : <P, n(alpha)> = c}``, and its *left
  closed half-plane* is ``{P : <P, n(alpha)> <= c}``.  With this sign
  choice the support value of a convex body is the maximum of a linear
  functional over the body.
* Reversing a directed line maps ``(alpha, c)`` to ``(alpha + pi, -c)``
  and swaps the two half-planes.
* A rigid motion is reflect-across-the-x-axis first (optional), then
  rotate, then translate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

TAU = 2.0 * math.pi

# Global tolerances, in shape units (the shape catalog has diameter O(1)).
# TOL is the membership / on-line band; TIE_TOL breaks ordering ties along
# a line; EXACT_BAND is the roundoff scale below which two coordinates are
# treated as the same exact point.
TOL = 1e-9
TIE_TOL = 1e-9
EXACT_BAND = 1e-12


class GeometryError(ValueError):
    """Raised for geometric precondition violations."""


def wrap_angle(a: float) -> float:
    """Reduce an angle to the canonical representative in [0, tau)."""
    a = math.fmod(a, TAU)
    if a < 0.0:
        a += TAU
    return a if a < TAU else 0.0


def wrap_signed(a: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    r = math.remainder(a, TAU)
    if r <= -math.pi:
        r += TAU
    return r


def angle_in_ccw_span(a: float, start: float, sweep: float, slack: float = 0.0) -> bool:
    """True if angle ``a`` lies in the ccw arc from ``start`` of width ``sweep``."""
    if sweep >= TAU:
        return True
    return wrap_angle(a - start) <= sweep + slack or wrap_angle(a - start) >= TAU - slack


@dataclass(frozen=True)
class Point2:
    """Immutable point (or vector) of the plane."""

    x: float
    y: float

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> "Point2":
        return Point2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self) -> "Point2":
        return Point2(-self.x, -self.y)

    def dot(self, other: "Point2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def rotated(self, theta: float) -> "Point2":
        c, s = math.cos(theta), math.sin(theta)
        return Point2(c * self.x - s * self.y, s * self.x + c * self.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y)


def unit_vector(alpha: float) -> Point2:
    """u(alpha) = (cos alpha, sin alpha)."""
    return Point2(math.cos(alpha), math.sin(alpha))


def normal_vector(alpha: float) -> Point2:
    """n(alpha) = (sin alpha, -cos alpha); satisfies <u, n> = 0."""
    return Point2(math.sin(alpha), -math.cos(alpha))


@dataclass(frozen=True)
class Direction:
    """A direction of the plane, stored as its canonical angle in [0, tau)."""

    alpha: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", wrap_angle(self.alpha))

    def unit(self) -> Point2:
        return unit_vector(self.alpha)

    def normal(self) -> Point2:
        return normal_vector(self.alpha)

    def reversed(self) -> "Direction":
        return Direction(self.alpha + math.pi)


DirectionLike = Union[Direction, float]


def as_angle(d: DirectionLike) -> float:
    """Coerce a Direction or a raw angle to a canonical angle."""
    if isinstance(d, Direction):
        return d.alpha
    return wrap_angle(float(d))


def direction_normal(d: DirectionLike) -> Point2:
    """Right-hand normal of a direction; n(alpha) = (sin alpha, -cos alpha)."""
    return normal_vector(as_angle(d))


@dataclass(frozen=True)
class DirectedLine:
    """Directed line {P : <P, n(alpha)> = offset}; body side is <=."""

    alpha: float
    offset: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", wrap_angle(self.alpha))

    def unit(self) -> Point2:
        return unit_vector(self.alpha)

    def normal(self) -> Point2:
        return normal_vector(self.alpha)

    def residual(self, p: Point2) -> float:
        """Signed distance from the line; positive on the right (outside)."""
        return p.dot(self.normal()) - self.offset

    def contains_point(self, p: Point2, tol: float = TOL) -> bool:
        return abs(self.residual(p)) <= tol

    def param_along(self, p: Point2) -> float:
        """Coordinate of (the projection of) ``p`` along the line direction."""
        return p.dot(self.unit())

    def point_at(self, s: float) -> Point2:
        return self.offset * self.normal() + s * self.unit()

    def reversed(self) -> "DirectedLine":
        return DirectedLine(self.alpha + math.pi, -self.offset)


def along_order(
    line: DirectedLine,
    p: Point2,
    q: Point2,
    tol: float = TOL,
    tie_tol: float = TIE_TOL,
) -> str:
    """Order two on-line points by the line direction.

    Returns "before" if p precedes q, "after" if q precedes p, and
    "equal" within tie_tol.  Points must lie on the line within tol.
    """
    if abs(line.residual(p)) > tol:
        raise GeometryError(f"point not on line: residual {line.residual(p):.3e}")
    if abs(line.residual(q)) > tol:
        raise GeometryError(f"point not on line: residual {line.residual(q):.3e}")
    d = (q - p).dot(line.unit())
    if d > tie_tol:
        return "before"
    if d < -tie_tol:
        return "after"
    return "equal"


@dataclass(frozen=True)
class RigidMotion:
    """Distance-preserving map: optional x-axis reflection, rotation, translation."""

    angle: float = 0.0
    dx: float = 0.0
    dy: float = 0.0
    reflect: bool = False

    @classmethod
    def identity(cls) -> "RigidMotion":
        return cls()

    @classmethod
    def translation(cls, dx: float, dy: float) -> "RigidMotion":
        return cls(0.0, dx, dy, False)

    @classmethod
    def rotation(cls, theta: float, about: Point2 = Point2(0.0, 0.0)) -> "RigidMotion":
        moved = about.rotated(theta)
        return cls(theta, about.x - moved.x, about.y - moved.y, False)

    @classmethod
    def reflection_x(cls) -> "RigidMotion":
        return cls(0.0, 0.0, 0.0, True)

    def apply_point(self, p: Point2) -> Point2:
        if self.reflect:
            p = Point2(p.x, -p.y)
        q = p.rotated(self.angle)
        return Point2(q.x + self.dx, q.y + self.dy)

    def apply_vector(self, v: Point2) -> Point2:
        """Apply only the linear part (reflection and rotation)."""
        if self.reflect:
            v = Point2(v.x, -v.y)
        return v.rotated(self.angle)

    def apply_angle(self, alpha: float) -> float:
        """Image of a direction angle under the linear part."""
        if self.reflect:
            alpha = -alpha
        return wrap_angle(alpha + self.angle)

    def compose(self, inner: "RigidMotion") -> "RigidMotion":
        """self after inner: (self . inner)(p) = self(inner(p))."""
        angle = self.angle + (-inner.angle if self.reflect else inner.angle)
        t_inner = Point2(inner.dx, inner.dy)
        t = self.apply_vector(t_inner) + Point2(self.dx, self.dy)
        return RigidMotion(angle, t.x, t.y, self.reflect != inner.reflect)

    def inverse(self) -> "RigidMotion":
        if not self.reflect:
            t = Point2(-self.dx, -self.dy).rotated(-self.angle)
            return RigidMotion(-self.angle, t.x, t.y, False)
        # reflect-first form of the inverse of reflect-then-rotate-then-shift
        t = Point2(-self.dx, -self.dy).rotated(-self.angle)
        return RigidMotion(self.angle, t.x, -t.y, True)

    def max_displacement(self, radius: float = 1.0, samples: int = 64) -> float:
        """Largest displacement over the disk of the given radius at the origin."""
        worst = Point2(self.dx, self.dy).norm() if not self.reflect else 0.0
        for k in range(samples):
            p = unit_vector(TAU * k / samples) * radius
            worst = max(worst, self.apply_point(p).dist(p))
        return worst
