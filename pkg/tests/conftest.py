"""Shared fixtures: canonical bodies and a curated suite of inner/outer
pairs that admit contact certificates."""

import numpy as np
import pytest

from bmforge.geometry import ConvexPolygon, apply_affine
from bmforge.john import max_volume_position, recenter_search
from bmforge.random_bodies import (random_convex_polygon,
                                   random_symmetric_polygon, regular_polygon)


@pytest.fixture(scope="session")
def square():
    return regular_polygon(4, phase=np.pi / 4.0)


@pytest.fixture(scope="session")
def diamond():
    return regular_polygon(4)


@pytest.fixture(scope="session")
def triangle():
    return regular_polygon(3, phase=np.pi / 2.0)


@pytest.fixture(scope="session")
def pentagon():
    return regular_polygon(5, phase=np.pi / 2.0)


@pytest.fixture(scope="session")
def tri_hexagon(triangle):
    """Hexagon conv{u_i, -u_i} built from the triangle's vertices."""
    v = triangle.vertices
    return ConvexPolygon.from_points(np.vstack([v, -v]))


def certificate_suite():
    """At least 10 (name, K, L, z, certificate) tuples with K in a contact
    position inside L; K and L are returned in the recentered frame."""
    rng = np.random.default_rng(5)
    tri = regular_polygon(3, phase=np.pi / 2.0)
    hexg = ConvexPolygon.from_points(np.vstack([tri.vertices, -tri.vertices]))
    specs = [("tri_in_hex", None, None)]
    shapes = [(regular_polygon(3, phase=0.3), regular_polygon(4)),
              (regular_polygon(4), regular_polygon(6)),
              (regular_polygon(5), regular_polygon(5, phase=0.4)),
              (regular_polygon(3), regular_polygon(5)),
              (regular_polygon(6), regular_polygon(4, phase=0.2))]
    for _ in range(6):
        shapes.append((random_convex_polygon(rng, int(rng.integers(3, 6))),
                       random_symmetric_polygon(rng, int(rng.integers(2, 4)))))

    out = []
    z, cert = recenter_search(tri, hexg)
    out.append(("tri_in_hex", ConvexPolygon(tri.vertices - z),
                ConvexPolygon(hexg.vertices - z), z, cert))
    for i, (k0, l) in enumerate(shapes):
        t = max_volume_position(k0, l)
        k = apply_affine(t, k0)
        z, cert = recenter_search(k, l)
        out.append((f"maxvol_{i}", ConvexPolygon(k.vertices - z),
                    ConvexPolygon(l.vertices - z), z, cert))
    return out


@pytest.fixture(scope="session")
def cert_suite():
    return certificate_suite()
