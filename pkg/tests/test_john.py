"""Maximal-volume positions, contact extraction and certificate checks."""

import numpy as np
import pytest

from bmforge.errors import (CertificateInvalid, NoCertificate, NoContacts,
                            NotAContactPoint, WrongArity)
from bmforge.geometry import (ConvexPolygon, apply_affine, area, contains,
                              scale_about, scale_negate)
from bmforge.john import (JohnCertificate, boundary_contacts, check_glmp,
                          check_john_certificate, dual_contact_hull_check,
                          equality_conditions, extract_contacts,
                          irredundant_pairs, lemma4_check,
                          max_volume_position, recenter_search,
                          solve_john_weights)
from bmforge.random_bodies import random_convex_polygon, regular_polygon


class TestMaxVolumePosition:
    def test_self_is_identity(self, pentagon):
        t = max_volume_position(pentagon, pentagon)
        assert t.det() == pytest.approx(1.0, abs=1e-6)

    def test_triangle_in_unit_square(self, triangle):
        sq = ConvexPolygon([[0, 0], [1, 0], [1, 1], [0, 1]])
        t = max_volume_position(triangle, sq)
        got = area(apply_affine(t, triangle))
        assert got == pytest.approx(0.5, abs=1e-5)

    def test_image_is_contained(self, triangle, pentagon):
        t = max_volume_position(triangle, pentagon)
        assert contains(pentagon, apply_affine(t, triangle), 1e-6)

    def test_affine_covariance(self, triangle):
        rng = np.random.default_rng(3)
        l = random_convex_polygon(rng, 5)
        base = max_volume_position(triangle, l).det()
        s = np.array([[1.4, 0.3], [-0.2, 0.8]])
        l2 = ConvexPolygon(l.vertices @ s.T)
        scaled = max_volume_position(triangle, l2).det()
        assert scaled == pytest.approx(abs(np.linalg.det(s)) * base, rel=1e-5)


class TestContacts:
    def test_strict_interior_raises(self, pentagon):
        inner = scale_about(pentagon, 0.5)
        with pytest.raises(NoContacts):
            extract_contacts(inner, pentagon, 1e-7)

    def test_triangle_in_hexagon(self, triangle, tri_hexagon):
        pairs = extract_contacts(triangle, tri_hexagon, 1e-7)
        assert len(pairs) == 3
        for p in pairs:
            assert float(p.u @ p.v) == pytest.approx(1.0, abs=1e-9)
            assert p.slack_primal <= 1e-7
            assert p.slack_dual <= 1e-7

    def test_boundary_contacts_segment_flag(self, square):
        taller = ConvexPolygon(square.vertices * np.array([1.0, 1.5]))
        pts, has_segment = boundary_contacts(square, taller)
        assert has_segment  # the vertical edges coincide
        pts2, seg2 = boundary_contacts(scale_about(square, 0.5), square)
        assert not pts2 and not seg2


class TestWeights:
    def test_triangle_in_hexagon_weights(self, triangle, tri_hexagon):
        pairs = extract_contacts(triangle, tri_hexagon, 1e-7)
        weights = solve_john_weights(pairs)
        assert all(w == pytest.approx(2.0 / 3.0, abs=1e-9) for w in weights)

    def test_wrong_arity(self, triangle, tri_hexagon):
        pairs = extract_contacts(triangle, tri_hexagon, 1e-7)
        with pytest.raises(WrongArity):
            solve_john_weights(pairs[:2])

    def test_certificate_check_and_json(self, triangle, tri_hexagon):
        z, cert = recenter_search(triangle, tri_hexagon)
        rep = check_john_certificate(cert)
        assert rep.passed
        assert rep.sum_weights == pytest.approx(2.0, abs=1e-7)
        back = JohnCertificate.from_json(cert.to_json())
        assert check_john_certificate(back).passed

    def test_lemma4_rigidity(self, triangle, tri_hexagon):
        z, cert = recenter_search(triangle, tri_hexagon)
        assert cert.m == 3
        ok, info = lemma4_check(cert)
        assert ok
        assert info["weight_deviation"] <= 1e-7
        assert info["cross_deviation"] <= 1e-7

    def test_lemma4_needs_three_pairs(self, cert_suite):
        for name, k, l, z, cert in cert_suite:
            if cert.m != 3:
                with pytest.raises(WrongArity):
                    lemma4_check(cert)


class TestCertificateSuite:
    def test_all_certificates_pass(self, cert_suite):
        assert len(cert_suite) >= 10
        for name, k, l, z, cert in cert_suite:
            rep = check_john_certificate(cert)
            assert rep.passed, name
            assert 3 <= cert.m <= 6, name

    def test_glmp_on_suite(self, cert_suite):
        for name, k, l, z, cert in cert_suite:
            holds, pts, s = check_glmp(k, l, cert)
            assert holds, name

    def test_m3_certificates_are_rigid(self, cert_suite):
        seen = 0
        for name, k, l, z, cert in cert_suite:
            if cert.m == 3:
                ok, _ = lemma4_check(cert)
                assert ok, name
                seen += 1
        assert seen >= 1

    def test_glmp_rejects_bad_certificate(self, triangle, tri_hexagon):
        z, cert = recenter_search(triangle, tri_hexagon)
        bad = JohnCertificate(pairs=cert.pairs,
                              weights=[w * 1.5 for w in cert.weights],
                              recenter=cert.recenter,
                              residual_identity=cert.residual_identity,
                              residual_u=cert.residual_u,
                              residual_v=cert.residual_v)
        with pytest.raises(CertificateInvalid):
            check_glmp(triangle, tri_hexagon, bad)


class TestRecenterSearch:
    def test_no_contact_raises(self, pentagon):
        inner = scale_about(pentagon, 0.5)
        with pytest.raises(NoCertificate):
            recenter_search(inner, pentagon)

    def test_self_certificate(self, square):
        z, cert = recenter_search(square, square)
        assert check_john_certificate(cert).passed


class TestEqualityConditions:
    def test_triangle_vertex_contact(self, triangle, tri_hexagon):
        z, cert = recenter_search(triangle, tri_hexagon)
        neg2 = scale_negate(triangle, 2.0)
        # the hexagon touches -2K at the reflected triangle vertices
        x = -2.0 * triangle.vertices[0]
        rep = equality_conditions(triangle, tri_hexagon, cert, x)
        assert rep.holds_convu and rep.holds_convv and rep.holds_xv
        assert sorted(rep.setA + rep.setB) == [0, 1, 2]
        assert float(rep.x @ rep.w) == pytest.approx(-2.0, abs=1e-9)
        assert len(rep.setA) <= 2 and len(rep.setB) <= 2
        assert contains(neg2, tri_hexagon, 1e-7)

    def test_non_contact_point_rejected(self, triangle, tri_hexagon):
        z, cert = recenter_search(triangle, tri_hexagon)
        with pytest.raises(NotAContactPoint):
            equality_conditions(triangle, tri_hexagon, cert, [0.1, 0.0])


class TestIrredundantPairs:
    def test_drops_redundant_contact(self, triangle, tri_hexagon):
        pairs = extract_contacts(triangle, tri_hexagon, 1e-7)
        kept = irredundant_pairs(pairs)
        assert 3 <= len(kept) <= len(pairs)

    def test_needs_three(self, triangle, tri_hexagon):
        pairs = extract_contacts(triangle, tri_hexagon, 1e-7)
        with pytest.raises(WrongArity):
            irredundant_pairs(pairs[:2])


class TestDualContactHull:
    def test_self_holds(self, square):
        holds, hull = dual_contact_hull_check(square, square)
        assert holds

    def test_strict_interior_empty(self, pentagon):
        holds, hull = dual_contact_hull_check(scale_about(pentagon, 0.5),
                                              pentagon)
        assert not holds
        assert hull is None

    def test_one_sided_contact_fails(self, square):
        # push the outer body right so contacts confine to the left edge
        outer = ConvexPolygon(scale_about(square, 1.5).vertices
                              + np.array([0.5 * np.sqrt(0.5), 0.0]))
        assert contains(outer, square, 1e-9)
        holds, hull = dual_contact_hull_check(square, outer)
        assert not holds

    def test_john_position_holds(self, triangle, tri_hexagon):
        holds, hull = dual_contact_hull_check(triangle, tri_hexagon)
        assert holds
