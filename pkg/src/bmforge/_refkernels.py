"""Pure numpy reference implementation of the hot sandwich-ratio kernel.

Mirrors bmforge._fastkernels exactly; the compiled module is preferred at
import time when available (see bmforge.kernels).
"""

import numpy as np

BIG = 1e18


def sandwich_objective(params, kv, kn, kh, lc, sign):
    """Certified sandwich ratio for one parameter vector.

    params: [t11, t12, t21, t22, q1, q2, o1, o2] - T is the linear part
        applied to the centered L vertices, q the world translation of the
        mapped body, o the homothety center inside K.
    kv, kn, kh: K vertices (CCW), edge unit normals, edge supports.
    lc: L vertices minus L's centroid, CCW.
    sign: +1 or -1, the homothety sign of the outer body.

    Evaluates, in the frame centered at o, the smallest certified r with
    K-o inside s*Q inside sign*r*(K-o), where Q = T(lc)+q-o and s is the
    exact rescale making Q just enclose K-o.  Returns (r, s); (BIG, 0.0)
    when the parameters are infeasible (degenerate map, o outside K, or
    origin outside the mapped body).
    """
    t11, t12, t21, t22, q1, q2, o1, o2 = params
    det = t11 * t22 - t12 * t21
    if det <= 1e-12:
        return BIG, 0.0

    kh_o = kh - (kn[:, 0] * o1 + kn[:, 1] * o2)
    if np.any(kh_o <= 1e-12):
        return BIG, 0.0

    w = np.empty_like(lc)
    w[:, 0] = lc[:, 0] * t11 + lc[:, 1] * t12 + (q1 - o1)
    w[:, 1] = lc[:, 0] * t21 + lc[:, 1] * t22 + (q2 - o2)

    d = np.roll(w, -1, axis=0) - w
    m = np.stack([d[:, 1], -d[:, 0]], axis=1)      # outward, unnormalized
    g = np.einsum("ij,ij->i", w, m)
    if np.any(g <= 0.0):
        return BIG, 0.0

    kv_o = kv - np.array([o1, o2])
    s = float(((kv_o @ m.T) / g).max())
    if s <= 0.0:
        return BIG, 0.0

    r = float(((w @ kn.T) * (sign * s) / kh_o).max())
    return r, s
