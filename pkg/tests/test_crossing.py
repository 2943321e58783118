import math

import numpy as np
import pytest

from crosskit.body import apply_motion, disk, point_body
from crosskit.constructions import (
    catalog_pairs,
    make_disk_pair,
    make_ellipse_pair,
    make_hexagon_pair,
    make_octagon_pair,
    random_motion,
)
from crosskit.crossing import (
    boundary_outside_arcs,
    classify_extremes,
    crossing_report,
    difference_component_count,
    ears_alternate,
    extract_ears,
    ft_crossing,
    slides_across,
)
from crosskit.geom import GeometryError, Point2, RigidMotion
from crosskit.raster import oracle_difference_counts
from crosskit.tangency import common_supporting_lines

LENS_D = disk((0.0, 0.0), 1.0)
LENS_L = disk((1.0, 0.0), 1.0)
# Circle-circle intersection closed form for unit disks at distance 1:
# x = 1/2, y = +-sqrt(1 - 1/4).
LENS_X = 0.5
LENS_Y = math.sqrt(3.0) / 2.0


def test_lens_outside_arc_and_closed_form_events():
    arcs = boundary_outside_arcs(LENS_D, LENS_L)
    assert len(arcs) == 1
    run = arcs[0]
    start = LENS_D.boundary_point(run.start)
    end = LENS_D.boundary_point((run.start + run.width) % LENS_D.param_period)
    assert start.dist(Point2(LENS_X, LENS_Y)) <= 1e-9
    assert end.dist(Point2(LENS_X, -LENS_Y)) <= 1e-9


def test_no_contact_yields_whole_boundary_or_nothing():
    big = disk((0.0, 0.0), 2.0)
    small = disk((0.0, 0.0), 1.0)
    arcs = boundary_outside_arcs(big, small)
    assert len(arcs) == 1
    assert arcs[0].width >= big.param_period - 1e-9
    assert boundary_outside_arcs(small, big) == []


def test_component_count_rule_basics():
    big = disk((0.0, 0.0), 2.0)
    small = disk((0.0, 0.0), 1.0)
    assert difference_component_count(big, small) == 1
    assert difference_component_count(small, big) == 0
    assert difference_component_count(LENS_D, LENS_L) == 1
    assert difference_component_count(LENS_D, LENS_D) == 0
    far = disk((5.0, 0.0), 1.0)
    assert difference_component_count(LENS_D, far) == 1


def test_point_body_difference():
    p_in = point_body((0.0, 0.0))
    p_out = point_body((3.0, 0.0))
    assert difference_component_count(p_in, LENS_D) == 0
    assert difference_component_count(p_out, LENS_D) == 1


def test_segment_crossing_a_body_splits_in_two():
    from crosskit.body import segment_body

    seg = segment_body((-2.0, 0.0), (2.0, 0.0))
    assert difference_component_count(seg, LENS_D) == 2


def test_octagon_counts_frozen_and_refereed():
    pair = make_octagon_pair()
    # Frozen from the raster referee (8-connected, 2048^2): two lens
    # components per difference.
    assert difference_component_count(pair.d, pair.l) == 2
    assert difference_component_count(pair.l, pair.d) == 2
    oc = oracle_difference_counts(pair.d, pair.l, 2048)
    assert oc == (2, 2)


def test_ellipse_counts_frozen_and_refereed():
    pair = make_ellipse_pair()
    assert difference_component_count(pair.d, pair.l) == 2
    assert difference_component_count(pair.l, pair.d) == 2
    assert oracle_difference_counts(pair.d, pair.l, 1024) == (2, 2)


def test_ft_crossing_examples_and_symmetry():
    pair = make_octagon_pair()
    assert ft_crossing(pair.d, pair.l)
    assert ft_crossing(pair.l, pair.d)
    assert not ft_crossing(LENS_D, LENS_L)
    ell = make_ellipse_pair()
    assert ft_crossing(ell.d, ell.l)


def test_classify_extremes_disjoint_disks():
    d4 = disk((4.0, 0.0), 1.0)
    lines, _ = common_supporting_lines(LENS_D, d4)
    by_alpha = {round(math.degrees(l.alpha)): l for l in lines}
    bottom = by_alpha[0]
    first, last = classify_extremes(LENS_D, d4, bottom)
    assert first.point.dist(Point2(0.0, -1.0)) <= 1e-9
    assert first.owner_class == "D"
    assert last.point.dist(Point2(4.0, -1.0)) <= 1e-9
    assert last.owner_class == "L"
    top = by_alpha[180]
    first, last = classify_extremes(LENS_D, d4, top)
    assert first.point.dist(Point2(4.0, 1.0)) <= 1e-9
    assert first.owner_class == "L"
    assert last.point.dist(Point2(0.0, 1.0)) <= 1e-9
    assert last.owner_class == "D"


def test_octagon_extremes_are_shared():
    pair = make_octagon_pair()
    lines, _ = common_supporting_lines(pair.d, pair.l)
    assert len(lines) == 4
    for line in lines:
        assert line.first.owner_class == "both"
        assert line.last.owner_class == "both"


def test_slides_across_hexagon_one_way():
    pair = make_hexagon_pair()
    fwd = slides_across(pair.d, pair.l)
    assert fwd.value and len(fwd.witnesses) == 2
    back = slides_across(pair.l, pair.d)
    assert not back.value


def test_slides_across_disjoint_disks_false():
    d4 = disk((4.0, 0.0), 1.0)
    res = slides_across(LENS_D, d4)
    assert not res.value
    assert res.qualifying_strict == 1  # only the bottom line qualifies


def test_crossing_report_catalog_tables():
    expects = {
        "octagon_pair": (False, False, False, False, True),
        "hexagon_pair": (False, True, False, True, True),
        "ellipse_pair": (True, True, True, True, True),
        "disk_pair": (False, False, False, False, False),
    }
    for pair in catalog_pairs():
        rep = crossing_report(pair.d, pair.l)
        want = expects[pair.name]
        got = (
            rep.both_slide,
            rep.d_slides_across_l,
            rep.l_slides_across_d,
            rep.either_slides,
            rep.crossing,
        )
        assert got == want, pair.name
        assert not rep.flags, pair.name


def test_report_swaps_roles_under_argument_swap():
    pair = make_hexagon_pair()
    fwd = crossing_report(pair.d, pair.l)
    back = crossing_report(pair.l, pair.d)
    assert fwd.d_slides_across_l == back.l_slides_across_d
    assert fwd.l_slides_across_d == back.d_slides_across_l
    assert fwd.both_slide == back.both_slide
    assert fwd.either_slides == back.either_slides
    assert fwd.crossing == back.crossing


def test_congruence_invariance_of_reports():
    # Orientation-preserving congruences leave all five predicates alone.
    # A reflection reverses every directed supporting line, exchanging
    # first and last points of the union, so the two one-way slide
    # predicates swap while their conjunction/disjunction and the
    # set-difference predicate are invariant.
    rng = np.random.default_rng(17)
    for pair in catalog_pairs():
        base = crossing_report(pair.d, pair.l)
        for _ in range(25):
            m = random_motion(rng)
            moved = crossing_report(
                apply_motion(m, pair.d), apply_motion(m, pair.l)
            )
            assert moved.both_slide == base.both_slide, pair.name
            assert moved.either_slides == base.either_slides, pair.name
            assert moved.crossing == base.crossing, pair.name
            if m.reflect:
                assert moved.d_slides_across_l == base.l_slides_across_d
                assert moved.l_slides_across_d == base.d_slides_across_l
            else:
                assert moved.d_slides_across_l == base.d_slides_across_l
                assert moved.l_slides_across_d == base.l_slides_across_d


def test_lens_ears_closed_form():
    lines, _ = common_supporting_lines(LENS_D, LENS_L)
    bottom = next(l for l in lines if abs(l.alpha) <= 1e-9)
    ear_d, ear_l = extract_ears(LENS_D, LENS_L, bottom)
    # Walking clockwise from U_D = (0, -1) the first shared boundary point
    # is the upper intersection; counterclockwise gives the lower one.
    assert ear_d.start.dist(Point2(LENS_X, LENS_Y)) <= 1e-9
    assert ear_d.terminus.dist(Point2(LENS_X, -LENS_Y)) <= 1e-9
    assert ear_l.start.dist(Point2(LENS_X, -LENS_Y)) <= 1e-9
    assert ear_l.terminus.dist(Point2(LENS_X, LENS_Y)) <= 1e-9


def test_symmetric_lens_ears_are_reflections():
    lines, _ = common_supporting_lines(LENS_D, LENS_L)
    bottom = next(l for l in lines if abs(l.alpha) <= 1e-9)
    top_rev = next(l for l in lines if abs(l.alpha - math.pi) <= 1e-9)
    e1, _ = extract_ears(LENS_D, LENS_L, bottom)
    lines_rev, _ = common_supporting_lines(LENS_L, LENS_D)
    # For the swapped pair the reversed line plays the witness role.
    match = next(l for l in lines_rev if abs(l.alpha - math.pi) <= 1e-9)
    e2, _ = extract_ears(LENS_L, LENS_D, match)
    # Mirror symmetry about x = 1/2 maps one ear onto the other.
    assert abs((1.0 - e2.start.x) - e1.start.x) <= 1e-9
    assert abs(e2.start.y - e1.start.y) <= 1e-9 or abs(e2.start.y + e1.start.y) <= 1e-9


def test_ear_dark_arc_stays_outside_other_body():
    pair = make_hexagon_pair()
    rep = crossing_report(pair.d, pair.l)
    witness = rep.witnesses_dl[0]
    ear_d, ear_l = extract_ears(pair.d, pair.l, witness)
    for ear, owner, other in ((ear_d, pair.d, pair.l), (ear_l, pair.l, pair.d)):
        period = owner.param_period
        for f in np.linspace(0.05, 0.95, 19):
            p = owner.boundary_point((ear.dark_start + f * ear.dark_width) % period)
            assert other.clearance_one(p) > 0.0


def test_ear_endpoints_on_both_boundaries_and_distinct_from_extreme():
    pair = make_hexagon_pair()
    rep = crossing_report(pair.d, pair.l)
    witness = rep.witnesses_dl[0]
    ear_d, ear_l = extract_ears(pair.d, pair.l, witness)
    for ear, owner, other in ((ear_d, pair.d, pair.l), (ear_l, pair.l, pair.d)):
        for p in (ear.start, ear.terminus):
            assert abs(owner.clearance_one(p)) <= 1e-9
            assert abs(other.clearance_one(p)) <= 1e-9
    assert witness.first.point.dist(ear_d.start) > 1e-3
    assert witness.first.point.dist(ear_d.terminus) > 1e-3


def test_distinct_witness_lines_give_distinct_ears():
    ell = make_ellipse_pair()
    rep = crossing_report(ell.d, ell.l)
    assert len(rep.witnesses_dl) == 2
    ears = [extract_ears(ell.d, ell.l, w)[0] for w in rep.witnesses_dl]
    assert ears[0].start.dist(ears[1].start) > 1e-6


def test_ears_alternate_around_intersection_for_strong_crossing():
    ell = make_ellipse_pair()
    rep = crossing_report(ell.d, ell.l)
    ears = []
    for w in rep.witnesses_dl:
        ed, el = extract_ears(ell.d, ell.l, w)
        ears.extend([ed, el])
    assert len(ears) == 4
    assert ears_alternate(ears, ell.d, ell.l)


def test_extract_ears_preconditions():
    pair = make_octagon_pair()
    lines, _ = common_supporting_lines(pair.d, pair.l)
    with pytest.raises(GeometryError, match="witness precondition"):
        extract_ears(pair.d, pair.l, lines[0])
    d4 = disk((4.0, 0.0), 1.0)
    far_lines, _ = common_supporting_lines(LENS_D, d4)
    qualifying = next(l for l in far_lines if abs(l.alpha) <= 1e-9)
    with pytest.raises(GeometryError, match="interiors do not meet"):
        extract_ears(LENS_D, d4, qualifying)


def test_disk_pair_reports_all_false():
    for motion in (
        RigidMotion.translation(1.0, 0.0),
        RigidMotion.identity(),
        random_motion(np.random.default_rng(42)),
    ):
        pair = make_disk_pair(motion)
        rep = crossing_report(pair.d, pair.l)
        assert rep.truth_tuple() == (False, False, False, False, False)
