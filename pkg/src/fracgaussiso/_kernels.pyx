# cython: boundscheck=False, wraparound=False, cdivision=False, language_level=3
"""Compiled series kernels.

Semantics are defined by the reference implementation in ``_kernels_py.py``;
keep the two in lockstep (same recurrences, same Kahan updates, same order of
floating-point operations).
"""
from libc.math cimport exp, sqrt, pow, pi

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "cython"


def coeff_antideriv_table(double x, int K):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] A = np.zeros(K + 1)
    cdef double g_prev, g, g_next
    cdef int k, n
    if K < 1:
        return A
    g_prev = exp(-0.5 * x * x)
    A[1] = g_prev / sqrt(2.0 * pi)
    if K == 1:
        return A
    g = x * g_prev
    A[2] = g / sqrt(2.0 * pi * 2.0)
    for k in range(3, K + 1):
        n = k - 2
        g_next = (x * g - sqrt(<double>n) * g_prev) / sqrt(<double>(n + 1))
        g_prev = g
        g = g_next
        A[k] = g / sqrt(2.0 * pi * <double>k)
    return A


def hermite_weighted_series(cnp.ndarray[cnp.float64_t, ndim=1] c,
                            cnp.ndarray[cnp.float64_t, ndim=1] x):
    cdef int K = c.shape[0] - 1
    cdef int n = x.shape[0]
    # k-outer / x-inner layout: the inner loops carry no dependence across
    # points, so they vectorize; per-point operation order is unchanged.
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] comp = np.zeros(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hp = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] h = np.empty(n)
    cdef double sk_prev, sk, ck, y, t, h_next
    cdef int i, k
    ck = c[0]
    for i in range(n):
        hp[i] = 1.0
        y = ck - comp[i]; t = out[i] + y; comp[i] = (t - out[i]) - y; out[i] = t
    if K > 0:
        ck = c[1]
        for i in range(n):
            h[i] = x[i]
            y = ck * h[i] - comp[i]; t = out[i] + y; comp[i] = (t - out[i]) - y; out[i] = t
        for k in range(2, K + 1):
            sk_prev = sqrt(<double>(k - 1))
            sk = sqrt(<double>k)
            ck = c[k]
            for i in range(n):
                h_next = (x[i] * h[i] - sk_prev * hp[i]) / sk
                hp[i] = h[i]
                h[i] = h_next
                y = ck * h_next - comp[i]; t = out[i] + y; comp[i] = (t - out[i]) - y; out[i] = t
    return out


def halfspace_series_sum(double r, double p, int K):
    cdef double s = 0.0, comp = 0.0, y, t, term, gk
    cdef double g_prev, g, g_next
    cdef int k, n_rec
    g_prev = exp(-0.5 * r * r)
    g = r * g_prev
    for k in range(1, K + 1):
        if k == 1:
            gk = g_prev
        elif k == 2:
            gk = g
        else:
            n_rec = k - 2
            g_next = (r * g - sqrt(<double>n_rec) * g_prev) / sqrt(<double>(n_rec + 1))
            g_prev = g
            g = g_next
            gk = g
        term = pow(<double>k, p) * gk * gk
        y = term - comp
        t = s + y
        comp = (t - s) - y
        s = t
    return s
