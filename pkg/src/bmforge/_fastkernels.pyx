# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sandwich-ratio kernel.

Semantics must match bmforge._refkernels.sandwich_objective up to
floating-point evaluation-order differences below 1e-15.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

DEF BIG = 1e18


def sandwich_objective(const double[::1] params,
                       const double[:, ::1] kv,
                       const double[:, ::1] kn,
                       const double[::1] kh,
                       const double[:, ::1] lc,
                       double sign):
    cdef double t11 = params[0], t12 = params[1]
    cdef double t21 = params[2], t22 = params[3]
    cdef double q1 = params[4], q2 = params[5]
    cdef double o1 = params[6], o2 = params[7]
    cdef double det = t11 * t22 - t12 * t21
    if det <= 1e-12:
        return BIG, 0.0

    cdef Py_ssize_t nl = lc.shape[0]
    cdef Py_ssize_t nk = kv.shape[0]
    cdef Py_ssize_t i, j, jn
    cdef double wx, wy, mx, my, g, dot, s, r, ho

    cdef cnp.ndarray[double, ndim=1] khobuf = np.empty(nk, dtype=np.float64)
    cdef double[::1] kh_o = khobuf
    for j in range(nk):
        ho = kh[j] - (kn[j, 0] * o1 + kn[j, 1] * o2)
        if ho <= 1e-12:
            return BIG, 0.0
        kh_o[j] = ho

    cdef cnp.ndarray[double, ndim=2] wbuf = np.empty((nl, 2), dtype=np.float64)
    cdef double[:, ::1] w = wbuf
    cdef cnp.ndarray[double, ndim=2] mbuf = np.empty((nl, 2), dtype=np.float64)
    cdef double[:, ::1] m = mbuf
    cdef cnp.ndarray[double, ndim=1] gbuf = np.empty(nl, dtype=np.float64)
    cdef double[::1] gv = gbuf

    for i in range(nl):
        w[i, 0] = lc[i, 0] * t11 + lc[i, 1] * t12 + (q1 - o1)
        w[i, 1] = lc[i, 0] * t21 + lc[i, 1] * t22 + (q2 - o2)

    for i in range(nl):
        jn = i + 1
        if jn == nl:
            jn = 0
        mx = w[jn, 1] - w[i, 1]
        my = w[i, 0] - w[jn, 0]
        g = w[i, 0] * mx + w[i, 1] * my
        if g <= 0.0:
            return BIG, 0.0
        m[i, 0] = mx
        m[i, 1] = my
        gv[i] = g

    s = -BIG
    for i in range(nk):
        wx = kv[i, 0] - o1
        wy = kv[i, 1] - o2
        for j in range(nl):
            dot = (wx * m[j, 0] + wy * m[j, 1]) / gv[j]
            if dot > s:
                s = dot
    if s <= 0.0:
        return BIG, 0.0

    r = -BIG
    for i in range(nl):
        wx = w[i, 0] * sign * s
        wy = w[i, 1] * sign * s
        for j in range(nk):
            dot = (wx * kn[j, 0] + wy * kn[j, 1]) / kh_o[j]
            if dot > r:
                r = dot
    return r, s
