"""Maximal-volume positions, contact pairs, John weights and the associated
certificate checks (everything specialized to the plane)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize, nnls

from .errors import (CertificateInvalid, InfeasibleWeights, NoCertificate,
                     NoContacts, NonConverged, NotAContactPoint, WrongArity)
from .geometry import (TAU_GEOM, AffineMap, ConvexPolygon, contains,
                       hull_distance, point_in_polygon, polar, scale_about,
                       scale_negate)

TAU_CERT = 1e-7
DELTA_W = 1e-9


@dataclass(frozen=True)
class ContactPair:
    """Primal contact point u with dual functional v, <u, v> = 1.

    When the shared normal cone at u is an arc (vertex-vertex contact), the
    two extreme rays are kept in `cone` and v is the rescaled bisector.
    """

    u: np.ndarray
    v: np.ndarray
    slack_primal: float = 0.0
    slack_dual: float = 0.0
    cone: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "u", np.asarray(self.u, dtype=float))
        object.__setattr__(self, "v", np.asarray(self.v, dtype=float))


@dataclass(frozen=True)
class JohnCertificate:
    pairs: list
    weights: list
    recenter: np.ndarray
    residual_identity: float
    residual_u: float
    residual_v: float

    def __post_init__(self):
        object.__setattr__(self, "recenter", np.asarray(self.recenter, dtype=float))

    @property
    def m(self) -> int:
        return len(self.pairs)

    def to_json(self) -> dict:
        return {
            "pairs": [{"u": p.u.tolist(), "v": p.v.tolist()} for p in self.pairs],
            "weights": [float(a) for a in self.weights],
            "recenter": self.recenter.tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "JohnCertificate":
        pairs = [ContactPair(u=np.asarray(p["u"]), v=np.asarray(p["v"]))
                 for p in obj["pairs"]]
        weights = [float(a) for a in obj["weights"]]
        res = _residuals(pairs, weights)
        return cls(pairs=pairs, weights=weights,
                   recenter=np.asarray(obj["recenter"], dtype=float),
                   residual_identity=res[0], residual_u=res[1], residual_v=res[2])


@dataclass(frozen=True)
class EqualityConditionsReport:
    x: np.ndarray
    w: np.ndarray
    setA: list
    setB: list
    holds_convu: bool
    holds_convv: bool
    holds_xv: bool
    worst_violation: float
    collinearity_flag: bool = False
    collinearity_residual: float = 0.0


@dataclass(frozen=True)
class CertificateReport:
    residual_identity: float
    residual_u: float
    residual_v: float
    sum_weights: float
    pairing_residual: float
    worst: float
    passed: bool


# --------------------------------------------------------------------------
# contact extraction

def _vertex_cone(poly: ConvexPolygon, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Extreme rays (unit normals of the two incident edges) of the normal
    cone at vertex i; edge j runs from vertex j to j+1."""
    normals, _ = poly.edge_normals()
    return normals[(i - 1) % poly.n], normals[i]


def _angle(n) -> float:
    return math.atan2(n[1], n[0])


def _cone_intersection(c1, c2):
    """Intersection of two normal-cone arcs, each given by (lo, hi) unit rays
    in CCW order with opening < pi.  Returns (lo, hi) or None."""
    a1, b1 = _angle(c1[0]), _angle(c1[1])
    a2, b2 = _angle(c2[0]), _angle(c2[1])
    if b1 < a1:
        b1 += 2 * math.pi
    # shift the second arc near the first
    while a2 < a1 - math.pi:
        a2 += 2 * math.pi
    while a2 > a1 + math.pi:
        a2 -= 2 * math.pi
    b2 = a2 + ((_angle(c2[1]) - _angle(c2[0])) % (2 * math.pi))
    lo, hi = max(a1, a2), min(b1, b2)
    if lo > hi + 1e-12:
        return None
    return (np.array([math.cos(lo), math.sin(lo)]),
            np.array([math.cos(hi), math.sin(hi)]))


def _support_val(poly: ConvexPolygon, n) -> float:
    return float((poly.vertices @ np.asarray(n, dtype=float)).max())


def extract_contacts(k: ConvexPolygon, l: ConvexPolygon, tol: float) -> list:
    """Boundary coincidences of k inside l as contact pairs.

    One pair is emitted per contact point; arcs of shared normals
    (vertex-vertex contacts) carry their extreme rays in `cone`.
    """
    ln, lh = l.edge_normals()
    kn, kh = k.edge_normals()
    groups: list[dict] = []  # {"p": point, "normals": [...], "arc": bool}

    def add(p, normals, arc=False):
        for g in groups:
            if np.hypot(*(g["p"] - p)) <= max(tol, TAU_GEOM):
                g["normals"].extend(normals)
                g["arc"] = g["arc"] or arc
                return
        groups.append({"p": np.asarray(p, dtype=float),
                       "normals": list(normals), "arc": arc})

    # vertex-vertex first so arcs are recorded with their extreme rays
    for i, p in enumerate(k.vertices):
        for j, q in enumerate(l.vertices):
            if np.hypot(*(p - q)) <= max(tol, TAU_GEOM):
                arc = _cone_intersection(_vertex_cone(k, i), _vertex_cone(l, j))
                if arc is not None:
                    add(p, [arc[0], arc[1]], arc=True)

    # vertex of k on an edge of l
    for p in k.vertices:
        for e in range(l.n):
            if abs(p @ ln[e] - lh[e]) <= tol:
                add(p, [ln[e]])

    # vertex of l on an edge of k (the edge normal must also support l)
    for q in l.vertices:
        if not point_in_polygon(k, q, tol):
            continue
        for e in range(k.n):
            if abs(q @ kn[e] - kh[e]) <= tol and abs(_support_val(l, kn[e]) - kh[e]) <= tol:
                add(q, [kn[e]])

    pairs = []
    for g in groups:
        normals = np.asarray(g["normals"])
        ref = normals[0]
        angs = np.array([_angle(n) for n in normals])
        angs = (angs - _angle(ref) + math.pi) % (2 * math.pi) - math.pi
        lo, hi = normals[int(np.argmin(angs))], normals[int(np.argmax(angs))]
        span = float(angs.max() - angs.min())
        if span > 1e-9:
            rep = lo + hi
            rep = rep / np.hypot(*rep)
            cone = (lo, hi)
        else:
            rep, cone = ref, None
        u = g["p"]
        denom = float(u @ rep)
        if denom <= TAU_GEOM:
            continue
        v = rep / denom
        sp = max(abs(_support_val(k, rep) - denom), abs(_support_val(l, rep) - denom))
        sd = max(abs(_support_val(k, v) - 1.0), abs(_support_val(l, v) - 1.0))
        pairs.append(ContactPair(u=u, v=v, slack_primal=sp, slack_dual=sd, cone=cone))

    if not pairs:
        raise NoContacts("no boundary coincidences: inner body strictly interior")
    pairs.sort(key=lambda p: _angle(p.u))
    return pairs


# --------------------------------------------------------------------------
# weights

def _weight_matrix(us, vs) -> np.ndarray:
    a = np.empty((8, len(us)))
    for i, (u, v) in enumerate(zip(us, vs)):
        a[0, i] = v[0] * u[0]
        a[1, i] = v[0] * u[1]
        a[2, i] = v[1] * u[0]
        a[3, i] = v[1] * u[1]
        a[4, i] = u[0]
        a[5, i] = u[1]
        a[6, i] = v[0]
        a[7, i] = v[1]
    return a


_RHS = np.array([1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0])


def _nnls_weights(us, vs) -> tuple[np.ndarray, float]:
    a, res = nnls(_weight_matrix(us, vs), _RHS)
    return a, float(res)


def _residuals(pairs, weights) -> tuple[float, float, float]:
    m = np.zeros((2, 2))
    su = np.zeros(2)
    sv = np.zeros(2)
    for p, a in zip(pairs, weights):
        m += a * np.outer(p.v, p.u)
        su += a * p.u
        sv += a * p.v
    return (float(np.linalg.norm(m - np.eye(2), 2)),
            float(np.hypot(*su)), float(np.hypot(*sv)))


def solve_john_weights(pairs) -> list:
    """Nonnegative weights for the John identity/centering system."""
    m = len(pairs)
    if not 3 <= m <= 6:
        raise WrongArity(f"need 3..6 contact pairs, got {m}")
    a, res = _nnls_weights([p.u for p in pairs], [p.v for p in pairs])
    if res > TAU_CERT:
        raise InfeasibleWeights(f"weight residual {res:.3e} above tolerance")
    if np.any(a < DELTA_W):
        raise InfeasibleWeights("a contact pair received a vanishing weight")
    return [float(x) for x in a]


def check_john_certificate(cert: JohnCertificate) -> CertificateReport:
    """Recompute every algebraic residual of the certificate from scratch."""
    ri, ru, rv = _residuals(cert.pairs, cert.weights)
    sw = float(sum(cert.weights))
    pr = max(abs(float(p.u @ p.v) - 1.0) for p in cert.pairs)
    min_w = min(cert.weights)
    worst = max(ri, ru, rv, abs(sw - 2.0), pr)
    passed = worst <= TAU_CERT and min_w >= DELTA_W
    return CertificateReport(residual_identity=ri, residual_u=ru, residual_v=rv,
                             sum_weights=sw, pairing_residual=pr,
                             worst=worst, passed=passed)


def lemma4_check(cert: JohnCertificate) -> tuple[bool, dict]:
    """Rigidity at three contact pairs: equal weights 2/3 and cross products -1/2."""
    if cert.m != 3:
        raise WrongArity(f"lemma4_check needs m = 3, got {cert.m}")
    dev_a = max(abs(a - 2.0 / 3.0) for a in cert.weights)
    dev_cross = 0.0
    for i in range(3):
        for j in range(3):
            if i != j:
                dev_cross = max(dev_cross,
                                abs(float(cert.pairs[i].u @ cert.pairs[j].v) + 0.5))
    ok = dev_a <= TAU_CERT and dev_cross <= TAU_CERT
    return ok, {"weight_deviation": dev_a, "cross_deviation": dev_cross}


# --------------------------------------------------------------------------
# recentering search

def _contact_columns(records, z):
    """Expand raw contact records into (us, vs, owner) columns at shift z."""
    us, vs, owner = [], [], []
    for idx, (p, normals) in enumerate(records):
        u = p - z
        for n in normals:
            denom = float(p @ n) - float(z @ n)
            if denom <= TAU_GEOM:
                return None
            us.append(u)
            vs.append(n / denom)
            owner.append(idx)
    return us, vs, owner


def _grid_candidates(k: ConvexPolygon, steps: int = 61):
    """Candidate recentering points: a grid over (2/3)k plus the natural seeds."""
    shrunk = scale_about(k, 2.0 / 3.0)
    lo = shrunk.vertices.min(axis=0)
    hi = shrunk.vertices.max(axis=0)
    xs = np.linspace(lo[0], hi[0], steps)
    ys = np.linspace(lo[1], hi[1], steps)
    pts = [np.zeros(2), k.centroid() * (2.0 / 3.0)]
    for x in xs:
        for y in ys:
            z = np.array([x, y])
            if point_in_polygon(shrunk, z, 0.0):
                pts.append(z)
    step = max((hi - lo).max() / (steps - 1), 1e-6)
    return pts, step


def recenter_search(k: ConvexPolygon, l: ConvexPolygon,
                    grid_steps: int = 61) -> tuple[np.ndarray, JohnCertificate]:
    """Find z making k-z / l-z a John position; grid over (2/3)k then
    coordinate descent with step halving."""
    try:
        raw = extract_contacts(k, l, TAU_CERT)
    except NoContacts as exc:
        raise NoCertificate(str(exc)) from exc

    records = []
    for p in raw:
        normals = list(p.cone) if p.cone is not None else [p.v / np.hypot(*p.v)]
        records.append((p.u, normals))

    def residual(z):
        cols = _contact_columns(records, z)
        if cols is None:
            return np.inf, None
        us, vs, owner = cols
        a, res = _nnls_weights(us, vs)
        return res, (us, vs, owner, a)

    candidates, step0 = _grid_candidates(k, grid_steps)
    best_z, best_res = None, np.inf
    for z in candidates:
        res, _ = residual(z)
        if res < best_res - 1e-15 or (
                abs(res - best_res) <= 1e-15 and best_z is not None
                and tuple(z) < tuple(best_z)):
            best_res, best_z = res, z
    if best_z is None:
        raise NoCertificate("no admissible recentering candidate")

    step = step0
    z = best_z.copy()
    while step > 1e-10:
        improved = False
        for d in (np.array([step, 0.0]), np.array([-step, 0.0]),
                  np.array([0.0, step]), np.array([0.0, -step])):
            res, _ = residual(z + d)
            if res < best_res - 1e-16:
                best_res, z = res, z + d
                improved = True
        if not improved:
            step /= 2.0

    res, data = residual(z)
    if data is None or res > TAU_CERT:
        raise NoCertificate(f"best residual {res:.3e} above tolerance")
    us, vs, owner, a = data

    # prune vanished columns, then re-solve on the support
    keep = [i for i in range(len(a)) if a[i] >= DELTA_W]
    if len(set(owner[i] for i in keep)) >= 3:
        a2, res2 = _nnls_weights([us[i] for i in keep], [vs[i] for i in keep])
        if res2 <= res + TAU_CERT * 0.1:
            us = [us[i] for i in keep]
            vs = [vs[i] for i in keep]
            owner = [owner[i] for i in keep]
            a = a2

    # merge columns that share a contact point (arc rays recombine exactly)
    merged: dict[int, list] = {}
    for i, o in enumerate(owner):
        merged.setdefault(o, []).append(i)
    pairs, weights = [], []
    ks = ConvexPolygon(k.vertices - z)
    ls = ConvexPolygon(l.vertices - z)
    for o in sorted(merged):
        idx = merged[o]
        w = float(sum(a[i] for i in idx))
        if w < DELTA_W:
            continue
        v = sum(a[i] * vs[i] for i in idx) / w
        u = us[idx[0]]
        nrep = v / np.hypot(*v)
        denom = float(u @ nrep)
        sp = max(abs(_support_val(ks, nrep) - denom),
                 abs(_support_val(ls, nrep) - denom))
        sd = max(abs(_support_val(ks, v) - 1.0), abs(_support_val(ls, v) - 1.0))
        cone = None
        if len(idx) > 1:
            cone = (vs[idx[0]] / np.hypot(*vs[idx[0]]), vs[idx[-1]] / np.hypot(*vs[idx[-1]]))
        pairs.append(ContactPair(u=u, v=v, slack_primal=sp, slack_dual=sd, cone=cone))
        weights.append(w)

    if not 3 <= len(pairs) <= 6:
        raise NoCertificate(f"merged contact count {len(pairs)} outside 3..6")
    ri, ru, rv = _residuals(pairs, weights)
    if max(ri, ru, rv) > TAU_CERT:
        raise NoCertificate(f"merged residual {max(ri, ru, rv):.3e} above tolerance")
    cert = JohnCertificate(pairs=pairs, weights=weights, recenter=z,
                           residual_identity=ri, residual_u=ru, residual_v=rv)
    return z, cert


# --------------------------------------------------------------------------
# maximal volume position

def max_volume_position(k: ConvexPolygon, l: ConvexPolygon,
                        n_starts: int = 8) -> AffineMap:
    """Affine map T with T(k) inside l maximizing det of the linear part."""
    ln, lh = l.edge_normals()
    kv = k.vertices
    gk, gl = k.centroid(), l.centroid()
    lc = ConvexPolygon(l.vertices - gl)
    lcn, lch = lc.edge_normals()
    r0 = float(((kv - gk) @ lcn.T / lch).max())
    s0 = 1.0 / (r0 * (1.0 + 1e-3)) if r0 > 0 else 1.0

    # containment constraints: C x <= d with x = (a11,a12,a21,a22,t1,t2)
    rows, rhs = [], []
    for kx, ky in kv:
        for (nx, ny), h in zip(ln, lh):
            rows.append([nx * kx, nx * ky, ny * kx, ny * ky, nx, ny])
            rhs.append(h)
    c_mat = np.asarray(rows)
    d_vec = np.asarray(rhs)

    def neg_logdet(x):
        det = x[0] * x[3] - x[1] * x[2]
        if det <= 1e-300:
            return 1e300
        return -math.log(det)

    def neg_logdet_grad(x):
        det = x[0] * x[3] - x[1] * x[2]
        g = np.zeros(6)
        g[0], g[1], g[2], g[3] = x[3], -x[2], -x[1], x[0]
        return -g / det

    cons = [
        {"type": "ineq",
         "fun": lambda x: d_vec - c_mat @ x,
         "jac": lambda x: -c_mat},
        {"type": "ineq",
         "fun": lambda x: np.array([x[0] * x[3] - x[1] * x[2] - 1e-12]),
         "jac": lambda x: np.array([[x[3], -x[2], -x[1], x[0], 0.0, 0.0]])},
    ]

    best = None
    for i in range(n_starts):
        th = 2 * math.pi * i / n_starts
        rot = s0 * np.array([[math.cos(th), -math.sin(th)],
                             [math.sin(th), math.cos(th)]])
        t0 = gl - rot @ gk
        x0 = np.array([rot[0, 0], rot[0, 1], rot[1, 0], rot[1, 1], t0[0], t0[1]])
        res = minimize(neg_logdet, x0, jac=neg_logdet_grad, method="SLSQP",
                       constraints=cons,
                       options={"ftol": 1e-14, "maxiter": 1000})
        x = res.x
        det = x[0] * x[3] - x[1] * x[2]
        viol = float(np.maximum(c_mat @ x - d_vec, 0.0).max())
        if det > 1e-12 and viol <= 1e-7:
            if best is None or det > best[0] * (1 + 1e-9):
                best = (det, x)
    if best is None:
        raise NonConverged("no feasible maximal-volume iterate found")
    x = best[1]
    return AffineMap(np.array([[x[0], x[1]], [x[2], x[3]]]),
                     np.array([x[4], x[5]]))


# --------------------------------------------------------------------------
# theorem-level checks

def boundary_contacts(inner: ConvexPolygon, outer: ConvexPolygon,
                      tol: float = TAU_CERT):
    """Coincidence points of the two boundaries (inner inside outer) and a
    flag for shared segments."""
    on_, oh = outer.edge_normals()
    in_, ih = inner.edge_normals()
    pts = []

    def add(p):
        for q in pts:
            if np.hypot(*(q - p)) <= 10 * tol:
                return
        pts.append(np.asarray(p, dtype=float))

    for p in inner.vertices:
        if np.min(np.abs(p @ on_.T - oh)) <= tol:
            add(p)
    for q in outer.vertices:
        if point_in_polygon(inner, q, tol) and np.min(np.abs(q @ in_.T - ih)) <= tol:
            add(q)

    has_segment = False
    for i in range(len(pts)):
        for j in range(i):
            mid = (pts[i] + pts[j]) / 2.0
            if (np.min(np.abs(mid @ on_.T - oh)) <= tol
                    and np.min(np.abs(mid @ in_.T - ih)) <= tol):
                has_segment = True
    center = inner.centroid()
    pts.sort(key=lambda p: math.atan2(p[1] - center[1], p[0] - center[0]))
    return pts, has_segment


def check_glmp(k: ConvexPolygon, l: ConvexPolygon, cert: JohnCertificate):
    """Verify l inside -2k and classify the boundary contact count."""
    if not check_john_certificate(cert).passed:
        raise CertificateInvalid("certificate fails its residual checks")
    neg2k = scale_negate(k, 2.0)
    holds = contains(neg2k, l, TAU_CERT)
    pts, segment = boundary_contacts(l, neg2k, TAU_CERT)
    s = "segment" if segment else len(pts)
    return holds, pts, s


def irredundant_pairs(pairs) -> list:
    """Greedily drop pairs whose u (or v) lies in the hull of the others,
    keeping the weight system feasible after each removal."""
    if len(pairs) < 3:
        raise WrongArity("need at least 3 contact pairs")
    pairs = list(pairs)

    def feasible(subset):
        if len(subset) < 3:
            return False
        _, res = _nnls_weights([p.u for p in subset], [p.v for p in subset])
        return res <= TAU_CERT

    changed = True
    while changed:
        changed = False
        for i in range(len(pairs)):
            others = pairs[:i] + pairs[i + 1:]
            redundant = (
                hull_distance([p.u for p in others], pairs[i].u) <= TAU_CERT
                or hull_distance([p.v for p in others], pairs[i].v) <= TAU_CERT)
            if redundant and feasible(others):
                pairs = others
                changed = True
                break
    if not feasible(pairs):
        raise InfeasibleWeights("no feasible irredundant subset remains")
    return pairs


def equality_conditions(k: ConvexPolygon, l: ConvexPolygon,
                        cert: JohnCertificate, x) -> EqualityConditionsReport:
    """Evaluate the equality conditions at a contact point x of the outer
    boundaries, partitioning contact indices by <u_i, w>."""
    if not check_john_certificate(cert).passed:
        raise CertificateInvalid("certificate fails its residual checks")
    x = np.asarray(x, dtype=float)
    kp = polar(k)
    vals = kp.vertices @ x
    minv = float(vals.min())
    if minv > -2.0 + TAU_CERT:
        raise NotAContactPoint(f"min <x, K-polar> = {minv:.6f} > -2")
    cand_idx = np.flatnonzero(vals <= minv + TAU_CERT)

    best = None
    scale = max(1.0, k.diameter())
    for ci in cand_idx:
        w = kp.vertices[ci] * (-2.0 / float(kp.vertices[ci] @ x))
        uw = np.array([float(p.u @ w) for p in cert.pairs])
        set_a = [i for i in range(cert.m) if uw[i] < 1.0 - TAU_CERT]
        set_b = [i for i in range(cert.m) if uw[i] >= 1.0 - TAU_CERT]
        viol = 0.0
        if set_b:
            du = hull_distance([cert.pairs[i].u for i in set_b], -x / 2.0)
        else:
            du = np.inf
        holds_u = du <= TAU_CERT * scale
        viol = max(viol, 0.0 if holds_u else du)
        if set_a:
            dv = hull_distance([cert.pairs[i].v for i in set_a], -w / 2.0)
        else:
            dv = np.inf
        holds_v = dv <= TAU_CERT * scale
        viol = max(viol, 0.0 if holds_v else dv)
        xv_res = max((abs(float(x @ cert.pairs[i].v) - 1.0) for i in set_a),
                     default=0.0)
        holds_xv = xv_res <= TAU_CERT * scale
        viol = max(viol, xv_res if not holds_xv else 0.0)

        coll_flag, coll_res = False, 0.0
        if len(set_b) >= 3:
            coll_flag = True
            coll_res = _collinearity_residual([cert.pairs[i].u for i in set_b])
        if len(set_a) >= 3 and holds_xv:
            coll_flag = True
            coll_res = max(coll_res,
                           _collinearity_residual([cert.pairs[i].v for i in set_a]))

        rep = EqualityConditionsReport(
            x=x, w=w, setA=set_a, setB=set_b,
            holds_convu=holds_u, holds_convv=holds_v, holds_xv=holds_xv,
            worst_violation=float(viol),
            collinearity_flag=coll_flag, collinearity_residual=float(coll_res))
        if best is None or rep.worst_violation < best.worst_violation:
            best = rep
    return best


def _collinearity_residual(points) -> float:
    pts = np.asarray(points, dtype=float)
    c = pts.mean(axis=0)
    d = pts - c
    sv = np.linalg.svd(d, compute_uv=False)
    return float(sv[-1]) if len(sv) > 1 else 0.0


def dual_contact_hull_check(k: ConvexPolygon, l: ConvexPolygon):
    """Whether 0 lies in the hull of the common support functionals of
    k inside l (the dual contact set)."""
    kn, kh = k.edge_normals()
    ln, lh = l.edge_normals()
    scale = max(1.0, l.diameter())
    tol = TAU_CERT * scale

    angles = sorted({_angle(n) % (2 * math.pi) for n in np.vstack([kn, ln])})
    vs = []

    def try_dir(theta):
        n = np.array([math.cos(theta), math.sin(theta)])
        hk = _support_val(k, n)
        hl = _support_val(l, n)
        if hl - hk <= tol and hk > TAU_GEOM:
            vs.append(n / hk)

    for th in angles:
        try_dir(th)
    m = len(angles)
    for i in range(m):
        a = angles[i]
        b = angles[(i + 1) % m] + (2 * math.pi if i + 1 == m else 0.0)
        mid = (a + b) / 2.0
        n = np.array([math.cos(mid), math.sin(mid)])
        qk = k.vertices[int(np.argmax(k.vertices @ n))]
        ql = l.vertices[int(np.argmax(l.vertices @ n))]
        if np.hypot(*(ql - qk)) <= tol:
            try_dir(mid)
        else:
            d = ql - qk
            base = math.atan2(d[1], d[0])
            for th in (base + math.pi / 2.0, base - math.pi / 2.0):
                t = th % (2 * math.pi)
                if a <= t <= b or a <= t + 2 * math.pi <= b:
                    try_dir(th)

    if not vs:
        return False, None
    pts = np.asarray(vs)
    holds = hull_distance(pts, np.zeros(2)) <= TAU_CERT
    try:
        hull = ConvexPolygon.from_points(pts)
    except Exception:
        hull = pts
    return holds, hull
