"""Planar convex polygon primitives.

Polygons are stored as (n, 2) float arrays of vertices in counterclockwise
order with every vertex a strict extreme point.  All operations are pure;
polygons are treated as immutable after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput, OriginNotInterior, SingularMap

TAU_GEOM = 1e-9
TAU_DET = 1e-12


def _as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DegenerateInput(f"expected (n, 2) point array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise DegenerateInput("non-finite coordinates")
    return pts


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_vertices(points: np.ndarray, tol: float) -> np.ndarray:
    """Monotone-chain hull, dropping non-strict (collinear) vertices."""
    order = np.lexsort((points[:, 1], points[:, 0]))
    pts = points[order]
    keep = [0]
    for i in range(1, len(pts)):
        if np.hypot(*(pts[i] - pts[keep[-1]])) > tol:
            keep.append(i)
    pts = pts[keep]
    if len(pts) < 3:
        raise DegenerateInput("fewer than 3 distinct points")

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= tol:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(pts[::-1])
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 3:
        raise DegenerateInput("all points collinear within tolerance")
    return np.array(verts)


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon, CCW vertex order, positive signed area."""

    vertices: np.ndarray

    def __post_init__(self):
        v = _as_points(self.vertices)
        v = np.ascontiguousarray(v)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        n = len(v)
        if n < 3:
            raise DegenerateInput("polygon needs at least 3 vertices")
        nxt = np.roll(v, -1, axis=0)
        if np.any(np.hypot(*(nxt - v).T) <= TAU_GEOM):
            raise DegenerateInput("consecutive vertices closer than tolerance")
        prv = np.roll(v, 1, axis=0)
        crosses = ((v[:, 0] - prv[:, 0]) * (nxt[:, 1] - v[:, 1])
                   - (v[:, 1] - prv[:, 1]) * (nxt[:, 0] - v[:, 0]))
        if np.any(crosses <= TAU_GEOM):
            raise DegenerateInput("vertex sequence not strictly convex CCW")

    @classmethod
    def from_points(cls, points, tol: float = TAU_GEOM) -> "ConvexPolygon":
        """Hull of an arbitrary point cloud; non-extreme points are dropped."""
        return cls(_hull_vertices(_as_points(points), tol))

    # -- cached edge data ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_normals(self) -> tuple[np.ndarray, np.ndarray]:
        """Outward unit normals and support values, one per edge."""
        v = self.vertices
        d = np.roll(v, -1, axis=0) - v
        normals = np.stack([d[:, 1], -d[:, 0]], axis=1)
        normals /= np.linalg.norm(normals, axis=1, keepdims=True)
        supports = np.einsum("ij,ij->i", v, normals)
        return normals, supports

    def centroid(self) -> np.ndarray:
        v = self.vertices
        nxt = np.roll(v, -1, axis=0)
        w = v[:, 0] * nxt[:, 1] - nxt[:, 0] * v[:, 1]
        a = w.sum() / 2.0
        return (v + nxt).T @ w / (6.0 * a)

    def translate(self, t) -> "ConvexPolygon":
        return ConvexPolygon(self.vertices + np.asarray(t, dtype=float))

    def diameter(self) -> float:
        v = self.vertices
        return max(np.hypot(*(v[i] - v[j])) for i in range(len(v)) for j in range(i))

    def to_json(self) -> dict:
        return {"vertices": self.vertices.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "ConvexPolygon":
        return cls.from_points(obj["vertices"])


@dataclass(frozen=True)
class AffineMap:
    """x -> linear @ x + translation with non-degenerate linear part."""

    linear: np.ndarray
    translation: np.ndarray = field(default_factory=lambda: np.zeros(2))

    def __post_init__(self):
        a = np.asarray(self.linear, dtype=float).reshape(2, 2)
        t = np.asarray(self.translation, dtype=float).reshape(2)
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(t))):
            raise SingularMap("non-finite map entries")
        if abs(np.linalg.det(a)) <= TAU_DET:
            raise SingularMap(f"|det| = {abs(np.linalg.det(a)):.3e} below tolerance")
        a.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "linear", a)
        object.__setattr__(self, "translation", t)

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(np.eye(2), np.zeros(2))

    def det(self) -> float:
        return float(np.linalg.det(self.linear))

    def apply(self, points) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.linear.T + self.translation

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other: x -> self(other(x))."""
        return AffineMap(self.linear @ other.linear,
                         self.linear @ other.translation + self.translation)

    def inverse(self) -> "AffineMap":
        inv = np.linalg.inv(self.linear)
        return AffineMap(inv, -inv @ self.translation)

    def to_json(self) -> dict:
        return {"linear": self.linear.tolist(), "translation": self.translation.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "AffineMap":
        return cls(np.asarray(obj["linear"]), np.asarray(obj.get("translation", [0.0, 0.0])))


# -- operations -------------------------------------------------------------

def convex_hull(points) -> ConvexPolygon:
    """Extreme points of the input in CCW order."""
    return ConvexPolygon.from_points(points)


def area(p: ConvexPolygon) -> float:
    """Shoelace area (positive by the CCW invariant)."""
    v = p.vertices
    nxt = np.roll(v, -1, axis=0)
    return float((v[:, 0] * nxt[:, 1] - nxt[:, 0] * v[:, 1]).sum() / 2.0)


def support(p: ConvexPolygon, d) -> tuple[float, np.ndarray]:
    """Support value max <v, d> and its argmax vertex (lowest index on ties)."""
    d = np.asarray(d, dtype=float)
    if not np.any(d):
        raise DegenerateInput("zero direction")
    vals = p.vertices @ d
    i = int(np.argmax(vals))
    return float(vals[i]), p.vertices[i]


def contains(outer: ConvexPolygon, inner: ConvexPolygon, tol: float) -> bool:
    """Every vertex of `inner` satisfies every edge inequality of `outer` with slack >= -tol."""
    return containment_slack(outer, inner) >= -tol


def containment_slack(outer: ConvexPolygon, inner: ConvexPolygon) -> float:
    """Worst-case slack of inner's vertices against outer's edge half-planes."""
    normals, supports = outer.edge_normals()
    return float((supports[None, :] - inner.vertices @ normals.T).min())


def point_in_polygon(p: ConvexPolygon, q, tol: float) -> bool:
    normals, supports = p.edge_normals()
    return bool(np.all(np.asarray(q, dtype=float) @ normals.T <= supports + tol))


def polar(p: ConvexPolygon) -> ConvexPolygon:
    """Polar dual: one vertex n/h per edge (outward normal n, support h)."""
    normals, supports = p.edge_normals()
    if np.any(supports <= TAU_GEOM):
        raise OriginNotInterior("origin not strictly inside the polygon")
    return ConvexPolygon(normals / supports[:, None])


def apply_affine(t: AffineMap, p: ConvexPolygon) -> ConvexPolygon:
    """Affine image, with CCW orientation restored after a reflection."""
    verts = t.apply(p.vertices)
    if t.det() < 0:
        verts = verts[::-1]
    return ConvexPolygon(verts)


def scale_negate(p: ConvexPolygon, lam: float, v=(0.0, 0.0)) -> ConvexPolygon:
    """Vertex-wise map x -> -lam * x + v (negative homothet for lam > 0)."""
    if lam == 0:
        raise SingularMap("zero homothety factor")
    # linear part -lam*I has determinant lam^2 > 0, so CCW order is kept
    return ConvexPolygon(-lam * p.vertices + np.asarray(v, dtype=float))


def scale_about(p: ConvexPolygon, lam: float, center=(0.0, 0.0)) -> ConvexPolygon:
    """Positive homothety about `center`."""
    c = np.asarray(center, dtype=float)
    return ConvexPolygon(c + lam * (p.vertices - c))


def is_triangle(p: ConvexPolygon, tol: float = 1e-7) -> bool:
    """True if the polygon is a triangle up to re-canonicalization at `tol`."""
    try:
        q = ConvexPolygon.from_points(p.vertices, tol=tol * max(1.0, p.diameter()))
    except DegenerateInput:
        return False
    return q.n == 3


def hull_distance(points, q) -> float:
    """Distance from q to the convex hull of a small point set (0 when inside).

    Handles degenerate hulls: single points and collinear sets fall back to
    segment distances.
    """
    pts = _as_points(points)
    q = np.asarray(q, dtype=float)
    best = float(np.min(np.hypot(*(pts - q).T)))
    for i in range(len(pts)):
        for j in range(i):
            a, b = pts[i], pts[j]
            d = b - a
            denom = d @ d
            t = 0.0 if denom == 0 else float(np.clip((q - a) @ d / denom, 0.0, 1.0))
            best = min(best, float(np.hypot(*(a + t * d - q))))
    try:
        hull = ConvexPolygon.from_points(pts)
    except DegenerateInput:
        return best
    if point_in_polygon(hull, q, 0.0):
        return 0.0
    return best


def in_convex_hull(points, q, tol: float) -> bool:
    """Whether q lies within `tol` of the convex hull of a small point set."""
    return hull_distance(points, q) <= tol


def load_polygon(path) -> ConvexPolygon:
    with open(path) as fh:
        return ConvexPolygon.from_json(json.load(fh))


def save_polygon(p: ConvexPolygon, path) -> None:
    with open(path, "w") as fh:
        json.dump(p.to_json(), fh)
