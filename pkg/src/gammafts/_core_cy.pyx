# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Semantics must stay branch-for-branch identical to ``_core_py``; the grade
arithmetic is bit-compatible, the SOM loop matches up to libm rounding.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, log

cnp.import_array()

BACKEND = "cython"


cdef inline double _grade(double x, double lo, double c, double up) nogil:
    if x == c:
        return 1.0
    if x < c:
        if lo == c:
            return 1.0
        if x <= lo:
            return 0.0
        return (x - lo) / (c - lo)
    if up == c:
        return 1.0
    if x >= up:
        return 0.0
    return (up - x) / (up - c)


def max_membership_column(x, lowers, centers, uppers):
    """Index of the maximum-membership set for every value of a column."""
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] lo = np.ascontiguousarray(lowers, dtype=np.float64)
    cdef double[::1] ce = np.ascontiguousarray(centers, dtype=np.float64)
    cdef double[::1] up = np.ascontiguousarray(uppers, dtype=np.float64)
    out = np.empty(xv.shape[0], dtype=np.int64)
    cdef long long[::1] ov = out
    cdef Py_ssize_t t, i, j1, j2, n = xv.shape[0], k = ce.shape[0]
    cdef double val, g1, g2
    with nogil:
        for t in range(n):
            val = xv[t]
            # binary search: first center >= val (numpy searchsorted 'left')
            i = 0
            j2 = k
            while i < j2:
                j1 = (i + j2) >> 1
                if ce[j1] < val:
                    i = j1 + 1
                else:
                    j2 = j1
            j1 = i - 1
            if j1 < 0:
                j1 = 0
            elif j1 > k - 1:
                j1 = k - 1
            j2 = i
            if j2 > k - 1:
                j2 = k - 1
            g1 = _grade(val, lo[j1], ce[j1], up[j1])
            g2 = _grade(val, lo[j2], ce[j2], up[j2])
            ov[t] = j1 if g1 >= g2 else j2
    return out


def som_bmu_batch(grid, data):
    """Linear index of the best-matching cell for every data row."""
    cdef double[:, ::1] g = np.ascontiguousarray(grid, dtype=np.float64)
    cdef double[:, ::1] d = np.ascontiguousarray(data, dtype=np.float64)
    out = np.empty(d.shape[0], dtype=np.int64)
    cdef long long[::1] ov = out
    cdef Py_ssize_t t, c, m, n = d.shape[0], nc = g.shape[0], nm = g.shape[1]
    cdef Py_ssize_t best
    cdef double acc, diff, best_d
    with nogil:
        for t in range(n):
            best = 0
            best_d = -1.0
            for c in range(nc):
                acc = 0.0
                for m in range(nm):
                    diff = d[t, m] - g[c, m]
                    acc += diff * diff
                if best_d < 0.0 or acc < best_d:
                    best_d = acc
                    best = c
            ov[t] = best
    return out


def som_train(grid, data, double alpha0, double sigma0, double alpha_final,
              double sigma_final, long long epochs):
    """Run the SOM training loop in place over ``epochs`` passes."""
    cdef double[:, ::1] g = grid
    cdef double[:, ::1] d = np.ascontiguousarray(data, dtype=np.float64)
    cdef Py_ssize_t n = d.shape[0], nc = g.shape[0], nm = g.shape[1]
    cdef long long step, total = epochs * n
    cdef Py_ssize_t t, c, m, u
    cdef double acc, diff, best_d, frac, alpha, sigma, f
    cdef double log_ar = log(alpha_final / alpha0)
    cdef double log_sr = log(sigma_final / sigma0)
    wu_arr = np.empty(nm, dtype=np.float64)
    cdef double[::1] wu = wu_arr
    with nogil:
        for step in range(total):
            t = <Py_ssize_t>(step % n)
            u = 0
            best_d = -1.0
            for c in range(nc):
                acc = 0.0
                for m in range(nm):
                    diff = d[t, m] - g[c, m]
                    acc += diff * diff
                if best_d < 0.0 or acc < best_d:
                    best_d = acc
                    u = c
            frac = (<double>step) / (<double>total)
            alpha = alpha0 * exp(log_ar * frac)
            sigma = sigma0 * exp(log_sr * frac)
            for m in range(nm):
                wu[m] = g[u, m]
            for c in range(nc):
                acc = 0.0
                for m in range(nm):
                    diff = g[c, m] - wu[m]
                    acc += diff * diff
                f = alpha * exp(-acc / (2.0 * sigma * sigma))
                for m in range(nm):
                    g[c, m] = g[c, m] + f * (d[t, m] - g[c, m])
