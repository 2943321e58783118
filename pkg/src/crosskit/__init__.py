"""crosskit: crossing relations between planar compact convex bodies.

A library and CLI for directed supporting lines of convex bodies, the
slide-crossing and set-difference crossing predicates, exact
counterexample constructions, and an independent raster referee.
"""

from .geom import (
    Direction,
    DirectedLine,
    GeometryError,
    Point2,
    RigidMotion,
    along_order,
    direction_normal,
)
from .body import (
    CircularArc,
    ContactSet,
    ConvexBody,
    EllipseArc,
    GraphArc,
    Segment,
    apply_motion,
    body_from_pieces,
    contact_set,
    contains,
    convex_hull,
    disk,
    ellipse_body,
    point_body,
    polygon_body,
    regular_polygon,
    segment_body,
    support_value,
    validate,
)
from .tangency import (
    CommonSupportingLine,
    EvalConfig,
    SlideTurnTrace,
    ZeroInterval,
    common_supporting_lines,
    slide_turn_trace,
    support_gap,
    support_gap_profile,
)
from .crossing import (
    ConsistencyError,
    CrossingReport,
    Ear,
    boundary_outside_arcs,
    classify_extremes,
    crossing_report,
    difference_component_count,
    ears_alternate,
    extract_ears,
    ft_crossing,
    slides_across,
)
from .constructions import (
    NamedPair,
    catalog_pairs,
    make_disk_pair,
    make_ellipse_pair,
    make_hexagon_pair,
    make_octagon_pair,
    named_pair,
    random_polygon_pair,
)
from .raster import (
    oracle_component_count,
    oracle_difference_counts,
    oracle_ft_crossing,
    rasterize,
)

__version__ = "0.1.0"
