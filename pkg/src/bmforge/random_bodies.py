"""Seeded random polygon generators for sweeps and the extremal-pair probe."""

from __future__ import annotations

import numpy as np

from .geometry import ConvexPolygon


def random_convex_polygon(rng: np.random.Generator, n: int) -> ConvexPolygon:
    """Random convex polygon with exactly n vertices (Valtr's construction)."""
    while True:
        xs = np.sort(rng.uniform(0.0, 2.0, n))
        ys = np.sort(rng.uniform(0.0, 2.0, n))
        vx = _chain_components(rng, xs)
        vy = _chain_components(rng, ys)
        rng.shuffle(vy)
        vecs = np.stack([vx, vy], axis=1)
        angles = np.arctan2(vecs[:, 1], vecs[:, 0])
        vecs = vecs[np.argsort(angles)]
        verts = np.cumsum(vecs, axis=0)
        try:
            p = ConvexPolygon.from_points(verts)
        except Exception:
            continue
        if p.n == n:
            return ConvexPolygon(p.vertices - p.centroid())


def _chain_components(rng, coords):
    lo, hi = coords[0], coords[-1]
    mid = coords[1:-1]
    mask = rng.integers(0, 2, len(mid)).astype(bool)
    up = np.concatenate([[lo], mid[mask], [hi]])
    down = np.concatenate([[lo], mid[~mask], [hi]])
    return np.concatenate([np.diff(up), -np.diff(down)])


def random_symmetric_polygon(rng: np.random.Generator, half_edges: int) -> ConvexPolygon:
    """Centrally symmetric convex polygon with 2*half_edges vertices."""
    angles = np.sort(rng.uniform(0.0, np.pi, half_edges))
    lengths = rng.uniform(0.3, 1.0, half_edges)
    half = np.stack([lengths * np.cos(angles), lengths * np.sin(angles)], axis=1)
    edges = np.vstack([half, -half])
    verts = np.cumsum(edges, axis=0)
    p = ConvexPolygon.from_points(verts)
    # the centroid of a centrally symmetric body is its symmetry center
    return ConvexPolygon(p.vertices - p.centroid())


def random_triangle(rng: np.random.Generator) -> ConvexPolygon:
    return random_convex_polygon(rng, 3)


def random_parallelogram(rng: np.random.Generator) -> ConvexPolygon:
    a = rng.uniform(0.5, 1.5, 2)
    b = rng.uniform(0.5, 1.5, 2) * np.array([-1.0, 1.0])
    verts = np.array([a + b, a - b, -a - b, -a + b])
    return ConvexPolygon.from_points(verts)


def random_quadrilateral(rng: np.random.Generator) -> ConvexPolygon:
    return random_convex_polygon(rng, 4)


def random_pentagon(rng: np.random.Generator) -> ConvexPolygon:
    return random_convex_polygon(rng, 5)


def regular_polygon(n: int, radius: float = 1.0, phase: float = 0.0) -> ConvexPolygon:
    th = phase + 2.0 * np.pi * np.arange(n) / n
    return ConvexPolygon(radius * np.stack([np.cos(th), np.sin(th)], axis=1))
