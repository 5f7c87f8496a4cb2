"""Banach-Mazur and Grünbaum distance estimation over convex polygons.

The outer search runs a multistart pattern search over an 8-parameter
encoding of the sandwich (linear map, translation, homothety center); the
inner problem (the smallest certified ratio for a fixed parameter vector)
is solved exactly by the kernel, so every reported r is a certified upper
bound on the true distance.  Certification is a pure containment check,
independent of the optimizer.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import NonConverged
from .geometry import (AffineMap, ConvexPolygon, TAU_DET, apply_affine,
                       contains, is_triangle)
from .john import max_volume_position
from .sandwich import TAU_CERT

_N_PARAMS = 8


@dataclass
class DistanceOptions:
    """Knobs for the multistart search; one 64-bit seed fixes everything."""

    restarts: int = 64
    seed: int = 0
    max_evals: int = 2000
    step_init: float = 0.25
    step_factor: float = 0.5
    step_floor: float = 1e-9
    cert_tol: float = TAU_CERT
    use_maxvol: bool = True


@dataclass
class DistanceReport:
    """Certified sandwich witness K+u ⊂ map(L+v) ⊂ sign·r·(K+u)."""

    r: float
    sign: int
    map: AffineMap
    shift_inner: np.ndarray
    shift_outer: np.ndarray
    verified: bool
    restarts_used: int
    objective_history: list[float] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "sign": self.sign,
            "map": self.map.to_json(),
            "shift_inner": np.asarray(self.shift_inner).tolist(),
            "shift_outer": np.asarray(self.shift_outer).tolist(),
            "verified": self.verified,
            "restarts_used": self.restarts_used,
            "objective_history": list(self.objective_history),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DistanceReport":
        return cls(r=float(obj["r"]), sign=int(obj["sign"]),
                   map=AffineMap.from_json(obj["map"]),
                   shift_inner=np.asarray(obj["shift_inner"], dtype=float),
                   shift_outer=np.asarray(obj["shift_outer"], dtype=float),
                   verified=bool(obj["verified"]),
                   restarts_used=int(obj["restarts_used"]),
                   objective_history=[float(x) for x in obj.get("objective_history", [])])

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2)


def _homothet(p: ConvexPolygon, lam: float) -> ConvexPolygon:
    # lam*I has determinant lam^2 > 0 either way, so CCW order is kept
    return ConvexPolygon(lam * p.vertices)


def certify_sandwich(k: ConvexPolygon, l: ConvexPolygon, t: AffineMap,
                     u, v, r: float, sign: int,
                     tol: float = TAU_CERT) -> bool:
    """Check K+u ⊂ T(L+v) ⊂ sign·r·(K+u) by direct containment at `tol`."""
    if r < 1.0 - tol or sign not in (1, -1):
        return False
    try:
        if abs(t.det()) <= TAU_DET:
            return False
        kp = k.translate(u)
        lp = apply_affine(t, l.translate(v))
        outer = _homothet(kp, sign * r)
    except Exception:
        return False
    return contains(lp, kp, tol) and contains(outer, lp, tol)


# -- parameter encoding -----------------------------------------------------
#
# params = [t11, t12, t21, t22, q1, q2, o1, o2]; the mapped body is
# Q = T(L - centroid(L)) + q and o is the homothety center inside K.  The
# kernel rescales Q by the exact s with K-o ⊂ s(Q-o)+o and returns the exact
# enclosing ratio r, so the scalar gauge of T is quotiented out and the
# effective search dimension is six.

class _Problem:
    def __init__(self, k: ConvexPolygon, l: ConvexPolygon, sign: int):
        self.k = k
        self.l = l
        self.sign = float(sign)
        self.kv = np.ascontiguousarray(k.vertices)
        kn, kh = k.edge_normals()
        self.kn = np.ascontiguousarray(kn)
        self.kh = np.ascontiguousarray(kh)
        self.gl = l.centroid()
        self.lc = np.ascontiguousarray(l.vertices - self.gl)
        self.gk = k.centroid()
        dk = k.diameter()
        self.scale = np.array([1.0, 1.0, 1.0, 1.0, dk, dk, 0.5 * dk, 0.5 * dk])

    def __call__(self, params: np.ndarray) -> tuple[float, float]:
        return kernels.sandwich_objective(params, self.kv, self.kn, self.kh,
                                          self.lc, self.sign)

    def witness(self, params: np.ndarray) -> tuple[AffineMap, np.ndarray, np.ndarray]:
        """Rebuild (T, u, v) with K+u ⊂ T(L+v) ⊂ sign·r·(K+u) from params."""
        r, s = self(params)
        t = params[:4].reshape(2, 2)
        q = params[4:6]
        o = params[6:8]
        lin = s * t
        trans = s * (q - o) - lin @ self.gl
        return AffineMap(lin, trans), -o, np.zeros(2)


def _pattern_search(prob: _Problem, x0: np.ndarray, opts: DistanceOptions):
    x = np.asarray(x0, dtype=float).copy()
    f, _ = prob(x)
    step = opts.step_init
    evals = 1
    while evals < opts.max_evals and step > opts.step_floor:
        improved = False
        for i in range(_N_PARAMS):
            for d in (1.0, -1.0):
                y = x.copy()
                y[i] += d * step * prob.scale[i]
                fy, _ = prob(y)
                evals += 1
                if fy < f - 1e-15:
                    x, f = y, fy
                    improved = True
                    break
                if evals >= opts.max_evals:
                    break
            if evals >= opts.max_evals:
                break
        if not improved:
            step *= opts.step_factor
    return x, f


# -- seeds ------------------------------------------------------------------

def _pack(t: np.ndarray, q: np.ndarray, o: np.ndarray) -> np.ndarray:
    return np.concatenate([np.asarray(t, dtype=float).ravel(),
                           np.asarray(q, dtype=float),
                           np.asarray(o, dtype=float)])

def _identity_seed(prob: _Problem) -> np.ndarray:
    return _pack(np.eye(2), prob.gk, prob.gk)


def _maxvol_seeds(prob: _Problem) -> list[np.ndarray]:
    """Constructive starts from the maximal-volume affine positions.

    Placing L in maximal-volume position inside K (or K inside L and
    inverting) puts the sandwich near the ratio-2 configuration that the
    John analysis guarantees, which is the right basin for near-extremal
    pairs.
    """
    seeds = []
    try:
        a = max_volume_position(prob.l, prob.k)
        t = a.linear
        q = t @ prob.gl + a.translation
        seeds.append(_pack(t, q, prob.gk))
    except Exception:
        pass
    try:
        b = max_volume_position(prob.k, prob.l)
        binv = b.inverse()
        t = binv.linear
        q = t @ prob.gl + binv.translation
        seeds.append(_pack(t, q, prob.gk))
    except Exception:
        pass
    return seeds


def _symmetry_center(p: ConvexPolygon):
    """Center of symmetry, or None if the polygon is not symmetric."""
    n = p.n
    if n % 2 != 0:
        return None
    c = p.centroid()
    res = np.abs(p.vertices + np.roll(p.vertices, n // 2, axis=0) - 2.0 * c).max()
    if res > 1e-7 * max(1.0, p.diameter()):
        return None
    return c


def _john_seeds(prob: _Problem, sign: int) -> list[np.ndarray]:
    """Constructive ratio-2 witnesses from the John-position chain.

    With K in maximal-volume position inside L and z the recentering
    point, L - z is inside -2(K - z); that is a ratio-2 witness for the
    negative branch of any pair, and reflecting through a symmetry center
    of K or L turns it into a positive-branch witness.  The seeds land in
    the basin of the extremal configuration, which random and matching
    starts often miss.
    """
    from .john import recenter_search

    seeds = []
    try:
        b = max_volume_position(prob.k, prob.l)
        kp = apply_affine(b, prob.k)
        z, _ = recenter_search(kp, prob.l, grid_steps=21)
        binv = b.inverse()
        t = binv.linear
        q = t @ prob.gl + binv.translation
        if sign < 0:
            seeds.append(_pack(t, q, binv.apply(z)))
        else:
            cl = _symmetry_center(prob.l)
            if cl is not None:
                o = -(binv.linear @ (b.translation + 2.0 * cl - 3.0 * z))
                seeds.append(_pack(t, q, o))
    except Exception:
        pass
    if sign > 0:
        ck = _symmetry_center(prob.k)
        if ck is not None:
            try:
                a = max_volume_position(prob.l, prob.k)
                lp = apply_affine(a, prob.l)
                z, _ = recenter_search(lp, prob.k, grid_steps=21)
                lin = 2.0 * a.linear
                trans = 2.0 * a.translation + 2.0 * ck - 3.0 * z
                q = lin @ prob.gl + trans
                seeds.append(_pack(lin, q, 3.0 * z - 2.0 * ck))
            except Exception:
                pass
    return seeds


def _matching_seeds(prob: _Problem, cap: int = 240) -> list[np.ndarray]:
    """Affine maps carrying a vertex triple of L onto a vertex triple of K."""
    kv = prob.k.vertices
    lv = prob.l.vertices
    nk, nl = len(kv), len(lv)
    seeds = []
    for ik, il, flip in itertools.product(range(nk), range(nl), (False, True)):
        if len(seeds) >= cap:
            break
        tri_k = kv[[ik, (ik + 1) % nk, (ik + 2) % nk]]
        idx = [il, (il + 1) % nl, (il + 2) % nl]
        if flip:
            idx = idx[::-1]
        tri_l = lv[idx]
        mk = np.column_stack([tri_k[1] - tri_k[0], tri_k[2] - tri_k[0]])
        ml = np.column_stack([tri_l[1] - tri_l[0], tri_l[2] - tri_l[0]])
        try:
            t = mk @ np.linalg.inv(ml)
        except np.linalg.LinAlgError:
            continue
        if np.linalg.det(t) <= TAU_DET:
            continue
        # map: x -> t(x - tri_l[0]) + tri_k[0]; translate into the q slot
        q = t @ (prob.gl - tri_l[0]) + tri_k[0]
        seeds.append(_pack(t, q, prob.gk))
    return seeds


def _triangle_tangent_seeds(prob: _Problem, sign: int) -> list[np.ndarray]:
    """Reduced search when L is a triangle.

    Any optimal triangle around K can be slid inward until all three edges
    touch K, so the configuration space shrinks to the three tangent-line
    normal angles plus the homothety center.  A Nelder-Mead multistart over
    that 5-dim space is far less multimodal than the raw 8-param problem;
    its best configurations are converted back to full parameter vectors
    and handed to the main search as seeds.
    """
    from scipy.optimize import minimize

    if len(prob.lc) != 3:
        return []
    kv, kn, kh = prob.kv, prob.kn, prob.kh
    gk = prob.gk
    ln, _ = _edge_angles(prob.lc)

    def red_obj(y):
        ang = y[:3]
        o = y[3:5]
        ns = np.stack([np.cos(ang), np.sin(ang)], axis=1)
        hs = (kv @ ns.T).max(axis=0)
        kh_o = kh - kn @ o
        if np.any(kh_o <= 1e-12):
            return kernels.BIG
        verts = []
        for i in range(3):
            j = (i + 1) % 3
            a = np.array([ns[i], ns[j]])
            det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
            if det <= 1e-9:
                return kernels.BIG
            verts.append(np.linalg.solve(a, np.array([hs[i], hs[j]])))
        verts = np.asarray(verts)
        rel = (verts - o) * float(sign)
        return float(((rel @ kn.T) / kh_o).max())

    starts = []
    for phi in np.linspace(0.0, 2.0 * np.pi / 3.0, 7)[:-1]:
        starts.append(np.concatenate([np.sort((ln + phi) % (2 * np.pi)), gk]))
    best = []
    for y0 in starts:
        res = minimize(red_obj, y0, method="Nelder-Mead",
                       options=dict(maxfev=1500, xatol=1e-10, fatol=1e-12))
        best.append((float(res.fun), res.x))
    best.sort(key=lambda t: t[0])

    seeds = []
    for val, y in best[:3]:
        if val >= kernels.BIG:
            continue
        ang = y[:3]
        o = y[3:5]
        ns = np.stack([np.cos(ang), np.sin(ang)], axis=1)
        hs = (kv @ ns.T).max(axis=0)
        try:
            verts = np.asarray([
                np.linalg.solve(np.array([ns[i], ns[(i + 1) % 3]]),
                                np.array([hs[i], hs[(i + 1) % 3]]))
                for i in range(3)])
        except np.linalg.LinAlgError:
            continue
        order = np.argsort(np.arctan2(*(verts - verts.mean(axis=0)).T[::-1]))
        verts = verts[order]
        for shift in range(3):
            tri_l = prob.lc[[shift, (shift + 1) % 3, (shift + 2) % 3]]
            ml = np.column_stack([tri_l[1] - tri_l[0], tri_l[2] - tri_l[0]])
            md = np.column_stack([verts[1] - verts[0], verts[2] - verts[0]])
            try:
                t = md @ np.linalg.inv(ml)
            except np.linalg.LinAlgError:
                continue
            if np.linalg.det(t) <= TAU_DET:
                continue
            q = verts[0] - t @ tri_l[0]
            seeds.append(_pack(t, q, o))
    return seeds


def _edge_angles(verts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d = np.roll(verts, -1, axis=0) - verts
    normals = np.stack([d[:, 1], -d[:, 0]], axis=1)
    angles = np.arctan2(normals[:, 1], normals[:, 0]) % (2 * np.pi)
    return angles, normals


def _random_seed(prob: _Problem, rng: np.random.Generator) -> np.ndarray:
    th1, th2 = rng.uniform(0.0, 2.0 * np.pi, 2)
    a = rng.uniform(-0.7, 0.7)
    rot1 = np.array([[np.cos(th1), -np.sin(th1)], [np.sin(th1), np.cos(th1)]])
    rot2 = np.array([[np.cos(th2), -np.sin(th2)], [np.sin(th2), np.cos(th2)]])
    t = rot1 @ np.diag([np.exp(a), np.exp(-a)]) @ rot2
    dk = prob.k.diameter()
    q = prob.gk + rng.uniform(-0.2, 0.2, 2) * dk
    o = prob.gk + rng.uniform(-0.1, 0.1, 2) * dk
    return _pack(t, q, o)


def _optimize_branch(k: ConvexPolygon, l: ConvexPolygon, sign: int,
                     opts: DistanceOptions) -> DistanceReport:
    prob = _Problem(k, l, sign)
    seeds = [_identity_seed(prob)]
    if opts.use_maxvol:
        seeds += _maxvol_seeds(prob)
        seeds += _john_seeds(prob, sign)
    seeds += _triangle_tangent_seeds(prob, sign)
    seeds += _matching_seeds(prob)
    rng = np.random.default_rng(np.random.SeedSequence([opts.seed & (2**64 - 1),
                                                        1 if sign > 0 else 2]))
    while len(seeds) < opts.restarts:
        seeds.append(_random_seed(prob, rng))
    seeds = seeds[:max(opts.restarts, 1)]

    best_r = np.inf
    best_x = None
    history = []
    for x0 in seeds:
        x, f = _pattern_search(prob, x0, opts)
        history.append(float(min(f, best_r)))
        if f < best_r:
            best_r, best_x = f, x
    if best_x is None or not np.isfinite(best_r) or best_r >= kernels.BIG:
        raise NonConverged("no restart reached a feasible sandwich")

    # derivative-free polish of the winning restart
    from scipy.optimize import minimize
    res = minimize(lambda p: prob(p)[0], best_x, method="Nelder-Mead",
                   options=dict(maxfev=2000, xatol=1e-12, fatol=1e-14))
    if np.isfinite(res.fun) and res.fun < best_r:
        best_r, best_x = float(res.fun), res.x

    t, u, v = prob.witness(best_x)
    verified = certify_sandwich(k, l, t, u, v, best_r, sign, tol=opts.cert_tol)
    return DistanceReport(r=float(best_r), sign=sign, map=t, shift_inner=u,
                          shift_outer=v, verified=verified,
                          restarts_used=len(seeds), objective_history=history)


def compose_witnesses(rep_kl: DistanceReport,
                      rep_lm: DistanceReport) -> tuple[AffineMap, np.ndarray, np.ndarray, float]:
    """Compose positive-branch witnesses for (K, L) and (L, M) into one for
    (K, M) at ratio r1 * r2.

    With A = K+u1 inside B = T1(L+v1) inside r1*A and C = L+u2 inside
    D = T2(M+v2) inside r2*C, the map T1 after the shift v1-u2 after T2
    sandwiches A between an affine image of M and a homothet of A about a
    shifted center; a common translation s moves that center back to the
    origin so certify_sandwich applies verbatim.
    """
    if rep_kl.sign != 1 or rep_lm.sign != 1:
        raise ValueError("composition requires positive-branch witnesses")
    t1, t2 = rep_kl.map, rep_lm.map
    u1 = np.asarray(rep_kl.shift_inner, dtype=float)
    v1 = np.asarray(rep_kl.shift_outer, dtype=float)
    u2 = np.asarray(rep_lm.shift_inner, dtype=float)
    v2 = np.asarray(rep_lm.shift_outer, dtype=float)
    r1, r2 = rep_kl.r, rep_lm.r
    r = r1 * r2
    w = t1.linear @ (v1 - u2) + t1.translation
    s = (1.0 - r2) * w / (r - 1.0) if r > 1.0 + 1e-12 else np.zeros(2)
    mid = AffineMap(np.eye(2), v1 - u2 + np.linalg.solve(t1.linear, s))
    t = t1.compose(mid).compose(t2)
    return t, u1 + s, v2, r


def banach_mazur_distance(k: ConvexPolygon, l: ConvexPolygon,
                          opts: DistanceOptions | None = None) -> DistanceReport:
    """Certified upper bound on d(K, L); positive homothets only."""
    return _optimize_branch(k, l, 1, opts or DistanceOptions())


def grunbaum_distance(k: ConvexPolygon, l: ConvexPolygon,
                      opts: DistanceOptions | None = None) -> DistanceReport:
    """Certified upper bound on d_G(K, L); both homothety signs tried."""
    opts = opts or DistanceOptions()
    pos = _optimize_branch(k, l, 1, opts)
    neg = _optimize_branch(k, l, -1, opts)
    return pos if pos.r <= neg.r else neg


def extremal_pair_search(generator, budget: int,
                         opts: DistanceOptions | None = None,
                         eps_search: float = 0.05) -> list[tuple[ConvexPolygon, ConvexPolygon, float]]:
    """Heuristic probe for non-triangle pairs with d_G close to 2.

    `generator` is a callable rng -> (K, L).  Samples `budget` pairs,
    estimates d_G for each, and returns the pairs where the bodies are
    not both triangles and the estimate exceeds 2 - eps_search, sorted by
    closeness of the estimate to 2.
    """
    opts = opts or DistanceOptions(restarts=24, max_evals=1200)
    rng = np.random.default_rng(np.random.SeedSequence([opts.seed & (2**64 - 1), 7]))
    found = []
    for _ in range(max(budget, 0)):
        k, l = generator(rng)
        rep = grunbaum_distance(k, l, opts)
        if is_triangle(k) and is_triangle(l):
            continue
        if rep.r > 2.0 - eps_search:
            found.append((k, l, rep.r))
    found.sort(key=lambda item: abs(item[2] - 2.0))
    return found
