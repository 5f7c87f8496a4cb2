"""Containment-scaling computations: gauges, minimal enclosing scales and
the asymmetry constant."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import OriginNotInterior
from .geometry import (TAU_GEOM, ConvexPolygon, contains, scale_about,
                       scale_negate)

TAU_CERT = 1e-7


@dataclass(frozen=True)
class SandwichRatio:
    """Minimal r with the inner body inside r times the outer-gauge body."""

    r: float
    direction_witness: np.ndarray
    point_witness: np.ndarray


def gauge(p: ConvexPolygon, q) -> float:
    """Minkowski functional: smallest lam >= 0 with q in lam * p.

    Values above 1 are returned for points outside p (callers need the
    overshoot magnitude).
    """
    normals, supports = p.edge_normals()
    if np.any(supports <= TAU_GEOM):
        raise OriginNotInterior("gauge needs 0 strictly inside the polygon")
    return max(0.0, float((np.asarray(q, dtype=float) @ normals.T / supports).max()))


def min_enclosing_scale(k: ConvexPolygon, l: ConvexPolygon) -> SandwichRatio:
    """Smallest r with l inside r*k (scaling about the origin), with witnesses."""
    normals, supports = k.edge_normals()
    if np.any(supports <= TAU_GEOM):
        raise OriginNotInterior("min_enclosing_scale needs 0 strictly inside k")
    ratios = l.vertices @ normals.T / supports
    i, j = np.unravel_index(np.argmax(ratios), ratios.shape)
    return SandwichRatio(r=float(ratios[i, j]),
                         direction_witness=normals[j].copy(),
                         point_witness=l.vertices[i].copy())


def verify_sandwich_ratio(k: ConvexPolygon, l: ConvexPolygon, sr: SandwichRatio,
                          tol: float = TAU_GEOM) -> bool:
    """Independent re-check: r*k contains l but (r - 1e-6)*k does not."""
    if not contains(scale_about(k, sr.r * (1 + tol)), l, tol):
        return False
    return not contains(scale_about(k, sr.r - 1e-6), l, 0.0)


def _asymmetry_objective(neg_normals, neg_supports, verts):
    def f(v):
        return ((verts - v) @ neg_normals.T / neg_supports).max()
    return f


def asymmetry_constant(k: ConvexPolygon) -> tuple[float, np.ndarray]:
    """Minimal r with k inside -r*k + v over all shifts v.

    The inner scale is exact for fixed v; the outer minimization over v is a
    multistart direct search (the objective is convex in v).
    """
    g = k.centroid()
    kc = ConvexPolygon(k.vertices - g)
    neg = scale_negate(kc, 1.0)
    normals, supports = neg.edge_normals()
    f = _asymmetry_objective(normals, supports, kc.vertices)

    starts = [np.zeros(2)]
    for vert in kc.vertices:
        starts.append((2.0 / 3.0) * vert)
    rng = np.random.default_rng(0)
    scale = max(1.0, k.diameter())
    while len(starts) < 16:
        starts.append(rng.normal(scale=0.2 * scale, size=2))

    best_r, best_v = np.inf, np.zeros(2)
    for x0 in starts:
        res = minimize(f, x0, method="Nelder-Mead",
                       options={"xatol": 1e-10 * scale, "fatol": 1e-12,
                                "maxiter": 4000})
        r = float(res.fun)
        if r < best_r - 1e-15 or (abs(r - best_r) <= 1e-15
                                  and tuple(res.x) < tuple(best_v)):
            best_r, best_v = r, res.x

    # back to the original frame: k subset -r*k + v
    v = (1.0 + best_r) * g + best_v
    # re-verify with a slight enlargement about the homothety's fixed
    # point v/(1+r), so the check is translation invariant
    r_up = best_r * (1.0 + 1e-9)
    v_up = v * (1.0 + r_up) / (1.0 + best_r)
    assert contains(scale_negate(k, r_up, v_up), k, 1e-9 * scale)
    return best_r, v
