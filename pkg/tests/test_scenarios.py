"""Scenario replay tests: committed fixtures, perturbation maps, errors."""

import json

import numpy as np
import pytest

from bmforge.errors import (ChainViolated, DegenerateInput, EpsilonTooLarge,
                            NotSymmetric, ParameterOutOfRange,
                            PreconditionViolated, UnknownScenario)
from bmforge.geometry import ConvexPolygon, contains
from bmforge.scenarios import (SCENARIO_IDS, build_case1_frame,
                               build_case1c_fixture, build_case2b_fixture,
                               case1b_shift_stretch, case1b_stretch,
                               case1c_trapezoid_map, case2b_trapezoid_perturb,
                               case3_parallelogram_deduction,
                               epsilon_threshold, hexagon_fixture,
                               parallelogram_fixture, run_scenario)


class TestFixtures:
    def test_case1_frame_chain(self):
        bodies = build_case1_frame()
        assert contains(bodies["L"], bodies["K"], 1e-7)
        assert contains(bodies["neg2K"], bodies["L"], 1e-7)

    def test_case1_frame_rejects_bad_bulge(self):
        with pytest.raises(ChainViolated):
            build_case1_frame(delta_k=0.6, delta_l=0.12)

    def test_case1c_fixture_chain(self):
        bodies = build_case1c_fixture()
        assert contains(bodies["L"], bodies["K"], 1e-7)
        assert contains(bodies["neg2K"], bodies["L"], 1e-7)

    def test_case2b_fixture_chain(self):
        bodies = build_case2b_fixture()
        assert contains(bodies["L"], bodies["K"], 1e-7)
        assert contains(bodies["neg2K"], bodies["L"], 1e-7)


class TestRunner:
    @pytest.mark.parametrize("sid", SCENARIO_IDS)
    def test_all_scenarios_pass(self, sid):
        sc = run_scenario(sid)
        failed = [a.name for a in sc.assertions if not a.passed]
        assert not failed, f"{sid}: {failed}"

    def test_unknown_id(self):
        with pytest.raises(UnknownScenario):
            run_scenario({"id": "case9"})

    def test_file_input(self, tmp_path):
        spec = {"id": "case1b_stretch", "parameters": {"eps": 0.02}}
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps(spec))
        sc = run_scenario(str(path))
        assert sc.passed
        assert sc.parameters["eps"] == 0.02

    def test_json_shape(self):
        sc = run_scenario("case2b")
        obj = sc.to_json()
        assert obj["id"] == "case2b"
        assert obj["passed"] is True
        assert {"K", "L", "neg2K", "L_prime"} <= set(obj["bodies"])
        assert all({"name", "residual", "passed"} <= set(a)
                   for a in obj["assertions"])


class TestCase1bStretch:
    def test_eps_zero_keeps_contacts(self):
        l2, checks = case1b_stretch(eps=0.0)
        by_name = {c.name: c for c in checks}
        assert by_name["dual_contact_hull_origin"].passed

    def test_eps_positive_frees_contacts(self):
        l2, checks = case1b_stretch(eps=0.01)
        assert all(c.passed for c in checks)

    def test_negative_eps_rejected(self):
        with pytest.raises(ParameterOutOfRange):
            case1b_stretch(eps=-0.1)

    def test_large_eps_breaks_outer(self):
        with pytest.raises(EpsilonTooLarge):
            case1b_stretch(eps=0.5)


class TestCase1bShift:
    def test_small_eps_passes(self):
        _, checks = case1b_shift_stretch(0.05, 0.8)
        assert all(c.passed for c in checks)

    def test_precondition(self):
        with pytest.raises(PreconditionViolated):
            case1b_shift_stretch(0.2, 0.8)

    def test_parameter_ranges(self):
        with pytest.raises(ParameterOutOfRange):
            case1b_shift_stretch(0.05, 1.5)
        with pytest.raises(ParameterOutOfRange):
            case1b_shift_stretch(-0.05, 0.8)
        with pytest.raises(ParameterOutOfRange):
            case1b_shift_stretch(0.05, 0.8, samples=0)


class TestCase1c:
    def test_eps_zero_near_identity(self):
        bodies = build_case1c_fixture()
        l2, checks = case1c_trapezoid_map(bodies, eps=0.0)
        assert np.abs(l2.vertices.max() - bodies["L"].vertices.max()) <= 1e-9

    def test_eps_positive(self):
        l2, checks = case1c_trapezoid_map(eps=0.01)
        assert all(c.passed for c in checks)

    def test_large_eps_breaks_outer(self):
        with pytest.raises(EpsilonTooLarge):
            case1c_trapezoid_map(eps=1.2)


class TestCase2b:
    def test_contact_count_drops_to_zero(self):
        l2, checks = case2b_trapezoid_perturb(eps=0.01)
        by_name = {c.name: c for c in checks}
        assert by_name["outer_contact_count"].passed
        assert by_name["dual_contact_hull_origin"].passed

    def test_eps_zero_has_two_contacts(self):
        l2, checks = case2b_trapezoid_perturb(eps=0.0)
        assert all(c.passed for c in checks)


class TestCase3:
    def test_parallelogram_passes(self):
        checks = case3_parallelogram_deduction(*parallelogram_fixture())
        assert all(c.passed for c in checks)

    def test_hexagon_fails_equality(self):
        checks = case3_parallelogram_deduction(*hexagon_fixture())
        by_name = {c.name: c for c in checks}
        assert not by_name["L_equals_parallelogram"].passed

    def test_odd_polygon_rejected(self, pentagon):
        with pytest.raises(NotSymmetric):
            case3_parallelogram_deduction(pentagon, (1, 0), (0, 1),
                                          (-1, 0), (0, -1))

    def test_degenerate_points_rejected(self, square):
        with pytest.raises(DegenerateInput):
            case3_parallelogram_deduction(square, (1, 0), (0, 1),
                                          (1, 0), (0, -1))


class TestEpsilonThreshold:
    def test_case2b_threshold_positive(self):
        eps0 = epsilon_threshold("case2b", {}, cap=0.1, iters=8, grid=5)
        assert eps0 > 0.0
        sc = run_scenario({"id": "case2b", "parameters": {"eps": eps0 / 2}})
        assert sc.passed
