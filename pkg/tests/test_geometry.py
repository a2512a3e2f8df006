import math

import numpy as np
import pytest

from chainkit.geometry import (FocalEllipse, IntersectPolicy, Orientation, Point,
                               Segment, convex_hull, convex_hull_indices, dist,
                               ellipse_contains, inside_mask, orientation,
                               segments_intersect)
from chainkit.fractal import generate_chain
from chainkit.svg import ellipse_polygon


@pytest.mark.parametrize("p, q, want", [
    ((0, 0), (1, 0), 1.0),
    ((0, 0), (0, 0), 0.0),
    ((0, 0), (3, 4), 5.0),
])
def test_dist(p, q, want):
    assert dist(p, q) == want
    assert dist(q, p) == want


@pytest.mark.parametrize("p, want", [
    ((0.5, math.sqrt(3) / 2), True),
    ((0.5, 0.866), True),
    ((0.5, 1.0), False),
])
def test_ellipse_contains_c2(p, want):
    assert ellipse_contains(FocalEllipse((0, 0), (1, 0), 2.0), p) is want


def test_ellipse_c1_is_focal_segment():
    e = FocalEllipse((0, 0), (1, 0), 1.0)
    assert ellipse_contains(e, (0.5, 0.0))
    assert ellipse_contains(e, (0.0, 0.0))
    assert not ellipse_contains(e, (0.5, 1e-3))
    assert not ellipse_contains(e, (1.001, 0.0))


def test_degenerate_ellipse_is_a_point():
    e = FocalEllipse((2, 3), (2, 3), 5.0)
    assert ellipse_contains(e, (2, 3))
    assert not ellipse_contains(e, (2, 3.001))


def test_ellipse_rejects_small_c():
    with pytest.raises(ValueError):
        FocalEllipse((0, 0), (1, 0), 0.5)


def test_inside_mask_matches_scalar(rng):
    pts = rng.normal(size=(200, 2))
    e = FocalEllipse((0.1, -0.2), (0.7, 0.4), 1.6)
    sums = np.hypot(*(pts - e.f1).T) + np.hypot(*(pts - e.f2).T)
    mask = inside_mask(sums, e.focal_distance, e.c, floor=1e-12)
    assert mask.tolist() == [ellipse_contains(e, p) for p in pts]


def test_bbox_covers_ellipse(rng):
    for _ in range(50):
        f1, f2 = rng.normal(size=2), rng.normal(size=2)
        c = 1 + 3 * rng.random()
        e = FocalEllipse(tuple(f1), tuple(f2), c)
        x0, y0, x1, y1 = e.bbox()
        boundary = ellipse_polygon(f1, f2, c, 512)
        # circumscribed polygon overshoots slightly; shrink towards center
        center = 0.5 * (f1 + f2)
        boundary = center + (boundary - center) * math.cos(math.pi / 512)
        assert np.all(boundary[:, 0] >= x0) and np.all(boundary[:, 0] <= x1)
        assert np.all(boundary[:, 1] >= y0) and np.all(boundary[:, 1] <= y1)


@pytest.mark.parametrize("r, want", [
    ((0, 1), Orientation.LEFT),
    ((2, 0), Orientation.COLLINEAR),
    ((1, -1), Orientation.RIGHT),
])
def test_orientation(r, want):
    assert orientation((0, 0), (1, 0), r) == want


def seg(a, b):
    return Segment(Point(*a), Point(*b))


def test_crossing_strict():
    assert segments_intersect(seg((0, 0), (1, 1)), seg((0, 1), (1, 0)), IntersectPolicy.STRICT)


def test_shared_endpoint_ignored():
    s1, s2 = seg((0, 0), (1, 0)), seg((1, 0), (2, 0))
    assert not segments_intersect(s1, s2, IntersectPolicy.IGNORE_SHARED_ENDPOINT)
    assert segments_intersect(s1, s2, IntersectPolicy.STRICT)


def test_collinear_overlap_reported():
    s1, s2 = seg((0, 0), (2, 0)), seg((1, 0), (3, 0))
    assert segments_intersect(s1, s2, IntersectPolicy.IGNORE_SHARED_ENDPOINT)


def test_backtracking_consecutive_segments_overlap():
    # (0,0)->(2,0)->(1,0) folds back over itself
    s1, s2 = seg((0, 0), (2, 0)), seg((2, 0), (1, 0))
    assert segments_intersect(s1, s2, IntersectPolicy.IGNORE_SHARED_ENDPOINT)


def test_touching_t_junction():
    assert segments_intersect(seg((0, 0), (2, 0)), seg((1, 0), (1, 1)))


def test_disjoint():
    assert not segments_intersect(seg((0, 0), (1, 0)), seg((0, 1), (1, 1)))
    assert not segments_intersect(seg((0, 0), (1, 0)), seg((2, 0), (3, 0)))


def test_hull_drops_interior_point():
    h = convex_hull([(0, 0), (1, 0), (0.5, 0.2), (0.5, 1)])
    assert h == [(0, 0), (1, 0), (0.5, 1)]


def test_hull_collinear_and_single():
    assert convex_hull([(0, 0), (1, 0), (2, 0)]) == [(0, 0), (2, 0)]
    assert convex_hull([(3, 4)]) == [(3, 4)]
    assert convex_hull_indices([]) == []


def test_hull_of_cesaro_p2():
    h = convex_hull(generate_chain(6, 2).vertices)
    assert len(h) == 3
    np.testing.assert_allclose(h, [(0, 0), (1, 0), (0.5, math.sqrt(3) / 6)], atol=1e-12)
