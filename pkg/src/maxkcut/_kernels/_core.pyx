# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the hot loops.

Contracts match ``maxkcut._kernels.reference``; see that module for shapes.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport atan2, fmod

cnp.import_array()

cdef double TWO_PI = 6.283185307179586476925287


def sector_labels(double[:, ::1] theta, double[::1] psi, int k):
    cdef Py_ssize_t T = theta.shape[0]
    cdef Py_ssize_t n = theta.shape[1]
    cdef Py_ssize_t t, i
    cdef double scale = k / TWO_PI
    cdef double x
    cdef int lab
    out_arr = np.empty((T, n), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] out = out_arr
    for t in range(T):
        for i in range(n):
            x = fmod(theta[t, i] - psi[t], TWO_PI)
            if x < 0.0:
                x += TWO_PI
            lab = <int>(x * scale)
            if lab >= k:
                lab -= k
            out[t, i] = lab
    return out_arr


def cut_values(cnp.int32_t[:, ::1] labels, cnp.int64_t[::1] u, cnp.int64_t[::1] v,
               double[::1] w):
    cdef Py_ssize_t T = labels.shape[0]
    cdef Py_ssize_t m = u.shape[0]
    cdef Py_ssize_t t, e
    cdef double acc
    out_arr = np.empty(T, dtype=np.float64)
    cdef double[::1] out = out_arr
    for t in range(T):
        acc = 0.0
        for e in range(m):
            if labels[t, u[e]] != labels[t, v[e]]:
                acc += w[e]
        out[t] = acc
    return out_arr


def diff_counts(cnp.int32_t[:, ::1] labels, cnp.int64_t[::1] u, cnp.int64_t[::1] v):
    cdef Py_ssize_t T = labels.shape[0]
    cdef Py_ssize_t m = u.shape[0]
    cdef Py_ssize_t t, e
    out_arr = np.zeros(m, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    for t in range(T):
        for e in range(m):
            if labels[t, u[e]] != labels[t, v[e]]:
                out[e] += 1
    return out_arr


def gamma_angles(double[:, ::1] g, double r, double s):
    cdef Py_ssize_t T = g.shape[0]
    cdef Py_ssize_t t
    cdef double ti, tj, gam
    out_arr = np.empty(T, dtype=np.float64)
    cdef double[::1] out = out_arr
    for t in range(T):
        ti = atan2(g[t, 1], g[t, 0])
        tj = atan2(r * g[t, 1] + s * g[t, 3], r * g[t, 0] + s * g[t, 2])
        gam = fmod(tj - ti, TWO_PI)
        if gam < 0.0:
            gam += TWO_PI
        out[t] = gam
    return out_arr


def edge_dots(double[:, ::1] V, cnp.int64_t[::1] u, cnp.int64_t[::1] v):
    cdef Py_ssize_t m = u.shape[0]
    cdef Py_ssize_t d = V.shape[1]
    cdef Py_ssize_t e, c
    cdef double dot
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    for e in range(m):
        dot = 0.0
        for c in range(d):
            dot += V[u[e], c] * V[v[e], c]
        out[e] = dot
    return out_arr


def sdp_sweep(double[:, ::1] V, cnp.int64_t[::1] u, cnp.int64_t[::1] v,
              double[::1] w, double coeff, double thresh,
              double[::1] lam, double rho, double[:, ::1] grad):
    cdef Py_ssize_t m = u.shape[0]
    cdef Py_ssize_t n = V.shape[0]
    cdef Py_ssize_t d = V.shape[1]
    cdef Py_ssize_t e, c, i, j
    cdef double dot, a, viol, ge
    cdef double obj = 0.0
    cdef double penalty = 0.0
    cdef double max_violation = 0.0
    for i in range(n):
        for c in range(d):
            grad[i, c] = 0.0
    for e in range(m):
        i = u[e]
        j = v[e]
        dot = 0.0
        for c in range(d):
            dot += V[i, c] * V[j, c]
        obj += w[e] * (1.0 - dot)
        viol = thresh - dot
        if viol > max_violation:
            max_violation = viol
        a = lam[e] + rho * viol
        if a > 0.0:
            penalty += a * a - lam[e] * lam[e]
            ge = -coeff * w[e] + a
        else:
            penalty += -lam[e] * lam[e]
            ge = -coeff * w[e]
        for c in range(d):
            grad[i, c] += ge * V[j, c]
            grad[j, c] += ge * V[i, c]
    obj *= coeff
    return obj, obj - penalty / (2.0 * rho), max_violation
