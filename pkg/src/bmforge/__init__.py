"""Planar convex-geometry engine: polygon primitives, polar duality,
John certificates, Banach-Mazur / Grünbaum distances, and scenario
replays of the associated extremal constructions."""

from .geometry import (AffineMap, ConvexPolygon, apply_affine, area,
                       contains, convex_hull, polar, scale_negate, support)
from .sandwich import asymmetry_constant, gauge, min_enclosing_scale
from .john import (JohnCertificate, check_glmp, check_john_certificate,
                   dual_contact_hull_check, extract_contacts, lemma4_check,
                   max_volume_position, recenter_search, solve_john_weights)
from .distance import (DistanceOptions, DistanceReport, banach_mazur_distance,
                       certify_sandwich, compose_witnesses,
                       extremal_pair_search, grunbaum_distance)
from .scenarios import Scenario, run_scenario
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "AffineMap", "ConvexPolygon", "apply_affine", "area", "contains",
    "convex_hull", "polar", "scale_negate", "support",
    "asymmetry_constant", "gauge", "min_enclosing_scale",
    "JohnCertificate", "check_glmp", "check_john_certificate",
    "dual_contact_hull_check", "extract_contacts", "lemma4_check",
    "max_volume_position", "recenter_search", "solve_john_weights",
    "DistanceOptions", "DistanceReport", "banach_mazur_distance",
    "certify_sandwich", "compose_witnesses", "extremal_pair_search",
    "grunbaum_distance",
    "Scenario", "run_scenario", "BACKEND",
]
