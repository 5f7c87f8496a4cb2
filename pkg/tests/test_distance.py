"""Distance engine tests: certification, known values, witness algebra."""

import numpy as np
import pytest

from bmforge.distance import (DistanceOptions, DistanceReport,
                              banach_mazur_distance, certify_sandwich,
                              compose_witnesses, extremal_pair_search,
                              grunbaum_distance)
from bmforge.geometry import AffineMap, ConvexPolygon
from bmforge.random_bodies import (random_convex_polygon, random_parallelogram,
                                   random_triangle, regular_polygon)

FAST = DistanceOptions(restarts=24, max_evals=1000)


class TestCertifySandwich:
    def test_identity_pair(self, pentagon):
        t = AffineMap.identity()
        assert certify_sandwich(pentagon, pentagon, t, [0, 0], [0, 0], 1.0, 1)

    def test_triangle_in_negated_double(self, triangle, tri_hexagon):
        t = AffineMap.identity()
        assert certify_sandwich(triangle, tri_hexagon, t, [0, 0], [0, 0],
                                2.0, -1)

    def test_undershoot_rejected(self, triangle, tri_hexagon):
        t = AffineMap.identity()
        assert not certify_sandwich(triangle, tri_hexagon, t, [0, 0], [0, 0],
                                    2.0 - 1e-3, -1)

    def test_r_below_one_rejected(self, pentagon):
        t = AffineMap.identity()
        assert not certify_sandwich(pentagon, pentagon, t, [0, 0], [0, 0],
                                    0.9, 1)
        assert not certify_sandwich(pentagon, pentagon, t, [0, 0], [0, 0],
                                    1.0, 2)


class TestKnownDistances:
    def test_square_diamond_is_one(self, square, diamond):
        rep = banach_mazur_distance(square, diamond, FAST)
        assert rep.verified
        assert rep.r == pytest.approx(1.0, abs=1e-6)

    def test_self_distance_is_one(self, pentagon):
        rep = grunbaum_distance(pentagon, pentagon, FAST)
        assert rep.verified
        assert rep.r == pytest.approx(1.0, abs=1e-6)

    def test_square_triangle_is_two(self, square, triangle):
        rep = banach_mazur_distance(square, triangle, FAST)
        assert rep.verified
        assert rep.r == pytest.approx(2.0, abs=1e-3)

    def test_pentagon_triangle(self, pentagon, triangle):
        rep = banach_mazur_distance(pentagon, triangle, FAST)
        assert rep.verified
        assert rep.r == pytest.approx(1.0 + np.sqrt(5.0) / 2.0, abs=1e-3)

    def test_pentagon_triangle_negative_branch(self, pentagon, triangle):
        rep = grunbaum_distance(pentagon, triangle, FAST)
        assert rep.verified
        assert rep.sign == -1
        assert rep.r == pytest.approx(2.0, abs=1e-3)

    def test_r_never_below_one(self):
        rng = np.random.default_rng(17)
        for i in range(5):
            k = random_convex_polygon(rng, 4)
            l = random_convex_polygon(rng, 5)
            rep = banach_mazur_distance(
                k, l, DistanceOptions(restarts=8, max_evals=500, seed=i))
            assert rep.r >= 1.0 - 1e-7


class TestReportSerialization:
    def test_round_trip_recertifies(self, square, triangle, tmp_path):
        rep = banach_mazur_distance(square, triangle, FAST)
        assert rep.verified
        path = tmp_path / "report.json"
        rep.save(path)
        import json
        with open(path) as fh:
            back = DistanceReport.from_json(json.load(fh))
        assert back.r == rep.r
        assert certify_sandwich(square, triangle, back.map, back.shift_inner,
                                back.shift_outer, back.r, back.sign)

    def test_history_is_monotone(self, square, triangle):
        rep = banach_mazur_distance(square, triangle, FAST)
        hist = rep.objective_history
        assert len(hist) == rep.restarts_used
        assert all(b <= a + 1e-12 for a, b in zip(hist, hist[1:]))


class TestWitnessComposition:
    def test_composed_witness_certifies(self):
        rng = np.random.default_rng(21)
        opts = DistanceOptions(restarts=12, max_evals=800, use_maxvol=False)
        for _ in range(3):
            k = random_convex_polygon(rng, 4)
            l = random_convex_polygon(rng, 5)
            m = random_convex_polygon(rng, 4)
            r1 = banach_mazur_distance(k, l, opts)
            r2 = banach_mazur_distance(l, m, opts)
            assert r1.verified and r2.verified
            t, u, v, r = compose_witnesses(r1, r2)
            assert r == pytest.approx(r1.r * r2.r)
            assert certify_sandwich(k, m, t, u, v, r, 1)

    def test_negative_branch_rejected(self, pentagon, triangle):
        rep = grunbaum_distance(pentagon, triangle, FAST)
        assert rep.sign == -1
        with pytest.raises(ValueError):
            compose_witnesses(rep, rep)


class TestInvarianceEstimates:
    def test_symmetry_of_estimate(self, square, triangle):
        r_ab = banach_mazur_distance(square, triangle, FAST).r
        r_ba = banach_mazur_distance(triangle, square, FAST).r
        assert abs(r_ab - r_ba) <= 2e-3

    def test_affine_invariance_of_estimate(self, square, triangle):
        s = np.array([[1.3, 0.4], [-0.1, 0.8]])
        sq2 = ConvexPolygon((square.vertices @ s.T))
        r1 = banach_mazur_distance(square, triangle, FAST).r
        r2 = banach_mazur_distance(sq2, triangle, FAST).r
        assert abs(r1 - r2) <= 2e-3

    def test_symmetric_vs_triangle_not_below_two(self, square, triangle):
        rep = banach_mazur_distance(square, triangle, FAST)
        assert rep.r >= 2.0 - 2e-3


class TestExtremalSearch:
    def test_budget_zero(self):
        out = extremal_pair_search(lambda rng: None, 0)
        assert out == []

    def test_parallelogram_triangle_class(self):
        opts = DistanceOptions(restarts=16, max_evals=800)

        def gen(rng):
            return random_parallelogram(rng), random_triangle(rng)

        found = extremal_pair_search(gen, 3, opts)
        assert len(found) == 3
        for k, l, est in found:
            assert est == pytest.approx(2.0, abs=1e-2)
