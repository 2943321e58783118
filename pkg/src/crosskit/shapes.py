"""Shape-file schema: JSON records describing bodies and named pairs.

Top level: ``{"version": 1, "shapes": [...]}``.  Shape records:

* ``{"kind": "disk", "center": [x, y], "radius": r}``
* ``{"kind": "polygon", "vertices": [[x, y], ...]}``  (ccw convex)
* ``{"kind": "ellipse", "center": [x, y], "a": A, "b": B, "angle": deg}``
* ``{"kind": "pieces", "pieces": [segment | circular_arc | graph_arc]}``
* ``{"kind": "named", "name": "octagon_pair" | ...}``  (expands to a pair)
* ``{"kind": "transform", "base": <shape>, "rotate_deg": deg,
   "about": [x, y], "translate": [dx, dy], "reflect": bool}``

Angles are degrees at the file boundary and radians internally.  Records
may carry an optional ``"label"``.  Schema violations raise SchemaError
with the offending field path.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Optional

from .body import (
    CircularArc,
    ConvexBody,
    GraphArc,
    Segment,
    apply_motion,
    body_from_pieces,
    disk,
    ellipse_body,
    polygon_body,
)
from .constructions import NAMED_PAIR_BUILDERS, NamedPair, named_pair
from .geom import GeometryError, Point2, RigidMotion

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """Invalid shape file; the message carries the field path."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


def _need(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing required field")
    return obj[key]


def _num(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, f"expected a number, got {type(value).__name__}")
    return float(value)


def _point(value: Any, path: str) -> Point2:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SchemaError(path, "expected [x, y]")
    return Point2(_num(value[0], f"{path}[0]"), _num(value[1], f"{path}[1]"))


def _piece(rec: Any, path: str):
    if not isinstance(rec, dict):
        raise SchemaError(path, "expected a piece object")
    kind = _need(rec, "type", path)
    if kind == "segment":
        return Segment(_point(_need(rec, "a", path), f"{path}.a"),
                       _point(_need(rec, "b", path), f"{path}.b"))
    if kind == "circular_arc":
        start = math.radians(_num(_need(rec, "start_deg", path), f"{path}.start_deg"))
        sweep = math.radians(_num(_need(rec, "sweep_deg", path), f"{path}.sweep_deg"))
        return CircularArc(
            _point(_need(rec, "center", path), f"{path}.center"),
            _num(_need(rec, "radius", path), f"{path}.radius"),
            start,
            sweep,
        )
    if kind == "graph_arc":
        curve = _need(rec, "curve", path)
        if curve not in ("parabolic", "quartic"):
            raise SchemaError(f"{path}.curve", f"unknown curve {curve!r}")
        return GraphArc(
            curve,
            _num(_need(rec, "scale", path), f"{path}.scale"),
            math.radians(_num(_need(rec, "rotate_deg", path), f"{path}.rotate_deg")),
            _point(_need(rec, "translate", path), f"{path}.translate"),
        )
    raise SchemaError(f"{path}.type", f"unknown piece type {kind!r}")


def parse_shape(rec: Any, path: str = "shape") -> ConvexBody:
    """Build a body from one shape record (not a named pair)."""
    if not isinstance(rec, dict):
        raise SchemaError(path, "expected a shape object")
    kind = _need(rec, "kind", path)
    try:
        if kind == "disk":
            return disk(
                _point(_need(rec, "center", path), f"{path}.center"),
                _num(_need(rec, "radius", path), f"{path}.radius"),
            )
        if kind == "polygon":
            verts = _need(rec, "vertices", path)
            if not isinstance(verts, list) or len(verts) < 3:
                raise SchemaError(f"{path}.vertices", "need at least 3 vertices")
            return polygon_body(
                [_point(v, f"{path}.vertices[{i}]") for i, v in enumerate(verts)]
            )
        if kind == "ellipse":
            return ellipse_body(
                _num(_need(rec, "a", path), f"{path}.a"),
                _num(_need(rec, "b", path), f"{path}.b"),
                _point(rec.get("center", [0.0, 0.0]), f"{path}.center"),
                math.radians(_num(rec.get("angle", 0.0), f"{path}.angle")),
            )
        if kind == "pieces":
            raw = _need(rec, "pieces", path)
            if not isinstance(raw, list) or not raw:
                raise SchemaError(f"{path}.pieces", "need a non-empty piece list")
            return body_from_pieces(
                [_piece(p, f"{path}.pieces[{i}]") for i, p in enumerate(raw)]
            )
        if kind == "transform":
            base = parse_shape(_need(rec, "base", path), f"{path}.base")
            about = _point(rec.get("about", [0.0, 0.0]), f"{path}.about")
            rot = math.radians(_num(rec.get("rotate_deg", 0.0), f"{path}.rotate_deg"))
            dx, dy = rec.get("translate", [0.0, 0.0])
            reflect = bool(rec.get("reflect", False))
            motion = RigidMotion.translation(_num(dx, f"{path}.translate[0]"),
                                             _num(dy, f"{path}.translate[1]"))
            motion = motion.compose(RigidMotion.rotation(rot, about))
            if reflect:
                motion = motion.compose(RigidMotion.reflection_x())
            return apply_motion(motion, base)
    except GeometryError as exc:
        raise SchemaError(path, str(exc)) from exc
    if kind == "named":
        raise SchemaError(path, "named records expand to a pair, not a single shape")
    raise SchemaError(f"{path}.kind", f"unknown shape kind {kind!r}")


@dataclass(frozen=True)
class ShapeFile:
    shapes: list[Any]  # raw records, parsed lazily

    def labels(self) -> list[str]:
        out = []
        for i, rec in enumerate(self.shapes):
            label = rec.get("label") if isinstance(rec, dict) else None
            out.append(label or f"shapes[{i}]")
        return out


def load_shape_file(text: str) -> ShapeFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected a top-level object")
    version = _need(doc, "version", "$")
    if version != SCHEMA_VERSION:
        raise SchemaError("$.version", f"unsupported version {version!r}")
    shapes = _need(doc, "shapes", "$")
    if not isinstance(shapes, list) or not shapes:
        raise SchemaError("$.shapes", "expected a non-empty list")
    return ShapeFile(shapes)


def _named_from_record(rec: dict, path: str) -> NamedPair:
    name = _need(rec, "name", path)
    if name not in NAMED_PAIR_BUILDERS:
        raise SchemaError(
            f"{path}.name",
            f"unknown named pair {name!r}; available: {sorted(NAMED_PAIR_BUILDERS)}",
        )
    kwargs = {}
    if name == "ellipse_pair":
        if "a" in rec:
            kwargs["a"] = _num(rec["a"], f"{path}.a")
        if "b" in rec:
            kwargs["b"] = _num(rec["b"], f"{path}.b")
    if name == "disk_pair":
        rot = math.radians(_num(rec.get("rotate_deg", 0.0), f"{path}.rotate_deg"))
        dx, dy = rec.get("translate", [1.0, 0.0])
        motion = RigidMotion.translation(
            _num(dx, f"{path}.translate[0]"), _num(dy, f"{path}.translate[1]")
        ).compose(RigidMotion.rotation(rot))
        if rec.get("reflect", False):
            motion = motion.compose(RigidMotion.reflection_x())
        kwargs["motion"] = motion
    try:
        return named_pair(name, **kwargs)
    except GeometryError as exc:
        raise SchemaError(path, str(exc)) from exc


def select_pair(
    sf: ShapeFile, selector: Optional[str] = None
) -> tuple[str, ConvexBody, ConvexBody]:
    """Resolve a pair from a shape file.

    The selector is either "i,j" (indexes into shapes) or the name/label
    of a named-pair record.  Without a selector, a file with exactly two
    shape records or exactly one named record selects itself.
    """
    shapes = sf.shapes
    if selector:
        if "," in selector:
            try:
                i, j = (int(s) for s in selector.split(","))
            except ValueError:
                raise SchemaError("selector", f"bad index selector {selector!r}") from None
            for k in (i, j):
                if not 0 <= k < len(shapes):
                    raise SchemaError("selector", f"index {k} out of range")
            d = parse_shape(shapes[i], f"shapes[{i}]")
            l = parse_shape(shapes[j], f"shapes[{j}]")
            return f"shapes[{i}] vs shapes[{j}]", d, l
        for i, rec in enumerate(shapes):
            if not isinstance(rec, dict):
                continue
            if rec.get("label") == selector or (
                rec.get("kind") == "named" and rec.get("name") == selector
            ):
                if rec.get("kind") == "named":
                    pair = _named_from_record(rec, f"shapes[{i}]")
                    return pair.name, pair.d, pair.l
                raise SchemaError("selector", f"{selector!r} is a single shape, not a pair")
        raise SchemaError("selector", f"no shape matches {selector!r}")
    named = [
        (i, rec)
        for i, rec in enumerate(shapes)
        if isinstance(rec, dict) and rec.get("kind") == "named"
    ]
    if len(named) == 1 and len(shapes) == 1:
        pair = _named_from_record(named[0][1], f"shapes[{named[0][0]}]")
        return pair.name, pair.d, pair.l
    if len(shapes) == 2 and not named:
        d = parse_shape(shapes[0], "shapes[0]")
        l = parse_shape(shapes[1], "shapes[1]")
        return "shapes[0] vs shapes[1]", d, l
    raise SchemaError("$.shapes", "ambiguous pair selection; pass a selector")


def parse_single_shape(sf: ShapeFile, index: int = 0) -> ConvexBody:
    if not 0 <= index < len(sf.shapes):
        raise SchemaError("$.shapes", f"index {index} out of range")
    return parse_shape(sf.shapes[index], f"shapes[{index}]")
