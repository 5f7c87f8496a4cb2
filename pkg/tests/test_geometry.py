"""Polygon primitive tests: hulls, areas, duality, affine maps."""

import json

import numpy as np
import pytest

from bmforge.errors import (DegenerateInput, OriginNotInterior, SingularMap)
from bmforge.geometry import (AffineMap, ConvexPolygon, apply_affine, area,
                              contains, containment_slack, convex_hull,
                              hull_distance, is_triangle, point_in_polygon,
                              polar, scale_about, scale_negate, support)
from bmforge.random_bodies import random_convex_polygon, regular_polygon


def brute_force_extremes(points):
    """p is extreme iff it is outside the hull of some... iff it cannot be
    written as a convex combination of three others; O(n^3) per point."""
    pts = np.asarray(points, dtype=float)
    out = []
    for i, p in enumerate(pts):
        others = np.delete(pts, i, axis=0)
        extreme = True
        for a in range(len(others)):
            for b in range(a):
                for c in range(b):
                    if hull_distance(others[[a, b, c]], p) <= 1e-9:
                        extreme = False
        if extreme:
            out.append(tuple(np.round(p, 9)))
    return set(out)


class TestHull:
    def test_ccw_invariant_enforced(self):
        with pytest.raises(DegenerateInput):
            ConvexPolygon([[0, 0], [1, 0], [2, 0]])
        with pytest.raises(DegenerateInput):
            ConvexPolygon([[0, 0], [0, 1], [1, 0]])  # clockwise

    def test_from_points_drops_interior(self):
        p = ConvexPolygon.from_points([[0, 0], [2, 0], [2, 2], [0, 2], [1, 1]])
        assert p.n == 4

    def test_hull_matches_brute_force(self):
        rng = np.random.default_rng(11)
        pts = rng.uniform(-1, 1, size=(30, 2))
        hull = convex_hull(pts)
        got = {tuple(np.round(v, 9)) for v in hull.vertices}
        assert got == brute_force_extremes(pts)

    def test_collinear_cloud_rejected(self):
        with pytest.raises(DegenerateInput):
            ConvexPolygon.from_points([[0, 0], [1, 1], [2, 2], [3, 3]])


class TestArea:
    def test_unit_square(self):
        sq = ConvexPolygon([[0, 0], [1, 0], [1, 1], [0, 1]])
        assert area(sq) == pytest.approx(1.0)

    def test_matches_fan_triangulation(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            p = random_convex_polygon(rng, int(rng.integers(3, 9)))
            v = p.vertices
            fan = 0.0
            for i in range(1, p.n - 1):
                d1, d2 = v[i] - v[0], v[i + 1] - v[0]
                fan += 0.5 * abs(d1[0] * d2[1] - d1[1] * d2[0])
            assert area(p) == pytest.approx(fan, abs=1e-12)


class TestSupportAndContainment:
    def test_support_square(self, square):
        h, arg = support(square, [1.0, 0.0])
        assert h == pytest.approx(np.sqrt(0.5))
        assert arg[0] == pytest.approx(np.sqrt(0.5))

    def test_support_homogeneous_and_translation(self, pentagon):
        d = np.array([0.3, -1.2])
        h, _ = support(pentagon, d)
        h2, _ = support(pentagon, 2.5 * d)
        assert h2 == pytest.approx(2.5 * h)
        t = np.array([0.4, 0.7])
        ht, _ = support(pentagon.translate(t), d)
        assert ht == pytest.approx(h + t @ d)

    def test_zero_direction_rejected(self, square):
        with pytest.raises(DegenerateInput):
            support(square, [0.0, 0.0])

    def test_contains_and_slack(self, square, diamond):
        small = scale_about(diamond, 0.7)
        assert contains(square, small, 1e-9)
        assert not contains(small, square, 1e-9)
        assert containment_slack(square, small) >= -1e-12
        assert containment_slack(small, square) < -0.1

    def test_point_in_polygon(self, square):
        assert point_in_polygon(square, [0.0, 0.0], 0.0)
        assert not point_in_polygon(square, [1.0, 1.0], 1e-9)


class TestPolar:
    def test_square_diamond_pair(self):
        sq = ConvexPolygon([[1, -1], [1, 1], [-1, 1], [-1, -1]])
        pq = polar(sq)
        want = {(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)}
        got = {tuple(np.round(v, 12)) for v in pq.vertices}
        assert got == want

    def test_bipolarity(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            p = random_convex_polygon(rng, int(rng.integers(3, 8)))
            pp = polar(polar(p))
            assert pp.n == p.n
            d = min(np.abs(pp.vertices - np.roll(p.vertices, s, axis=0)).max()
                    for s in range(p.n))
            assert d <= 1e-9

    def test_duality_reverses_inclusion(self, square, diamond):
        small = scale_about(diamond, 0.7)
        assert contains(square, small, 0.0)
        assert contains(polar(small), polar(square), 1e-9)

    def test_origin_required(self):
        p = ConvexPolygon([[1, 1], [2, 1], [2, 2], [1, 2]])
        with pytest.raises(OriginNotInterior):
            polar(p)


class TestAffine:
    def test_identity(self, pentagon):
        t = AffineMap.identity()
        assert np.allclose(apply_affine(t, pentagon).vertices, pentagon.vertices)

    def test_compose_matches_sequential(self, pentagon):
        t1 = AffineMap([[1.2, 0.3], [-0.1, 0.9]], [0.5, -0.2])
        t2 = AffineMap([[0.8, -0.4], [0.2, 1.1]], [-0.3, 0.6])
        a = apply_affine(t1, apply_affine(t2, pentagon))
        b = apply_affine(t1.compose(t2), pentagon)
        assert np.abs(a.vertices - b.vertices).max() <= 1e-9

    def test_inverse(self, pentagon):
        t = AffineMap([[1.2, 0.3], [-0.1, 0.9]], [0.5, -0.2])
        back = apply_affine(t.inverse(), apply_affine(t, pentagon))
        assert np.abs(back.vertices - pentagon.vertices).max() <= 1e-9

    def test_reflection_restores_ccw(self, pentagon):
        t = AffineMap([[-1.0, 0.0], [0.0, 1.0]])
        q = apply_affine(t, pentagon)  # would flip orientation
        assert area(q) > 0

    def test_singular_rejected(self):
        with pytest.raises(SingularMap):
            AffineMap([[1.0, 2.0], [2.0, 4.0]])


class TestScaling:
    def test_scale_negate_minus_one_is_identity(self, pentagon):
        q = scale_negate(pentagon, -1.0)
        assert np.allclose(q.vertices, pentagon.vertices)

    def test_scale_negate_builds_outer_triangle(self):
        u = regular_polygon(3, phase=np.pi / 2.0)
        q = scale_negate(u, 2.0)
        assert np.abs(np.sort(q.vertices, axis=0)
                      - np.sort(-2.0 * u.vertices, axis=0)).max() <= 1e-12

    def test_scale_negate_area(self, pentagon):
        assert area(scale_negate(pentagon, 3.0)) == pytest.approx(
            9.0 * area(pentagon))

    def test_scale_negate_zero_rejected(self, pentagon):
        with pytest.raises(SingularMap):
            scale_negate(pentagon, 0.0)

    def test_scale_about_center(self, square):
        c = np.array([0.2, -0.1])
        q = scale_about(square, 0.5, c)
        assert np.allclose(q.vertices, c + 0.5 * (square.vertices - c))


class TestMisc:
    def test_is_triangle(self, triangle, square):
        assert is_triangle(triangle)
        assert not is_triangle(square)
        near = ConvexPolygon.from_points(
            [[0, 0], [1, 0], [0.5, 1e-9 + 0.5], [0, 1]])
        assert is_triangle(ConvexPolygon.from_points([[0, 0], [2, 0], [1, 2],
                                                      [1.0, 1.999999999]]))
        assert near.n >= 3

    def test_json_round_trip(self, pentagon, tmp_path):
        obj = json.loads(json.dumps(pentagon.to_json()))
        q = ConvexPolygon.from_json(obj)
        d = min(np.abs(q.vertices - np.roll(pentagon.vertices, s, axis=0)).max()
                for s in range(pentagon.n))
        assert d <= 1e-12

    def test_hull_distance(self):
        pts = [[0, 0], [1, 0], [0, 1]]
        assert hull_distance(pts, [0.25, 0.25]) == 0.0
        assert hull_distance(pts, [2, 0]) == pytest.approx(1.0)
        assert hull_distance([[0, 0], [1, 0]], [0.5, 1.0]) == pytest.approx(1.0)
