"""Pure-Python (numpy) fallback for the hot series kernels.

Mirrors ``_kernels.pyx`` operation for operation: the same recurrences, the
same Kahan compensation, the same evaluation order.  The compiled module is
built with ``-ffp-contract=off`` so both backends produce identical doubles.

All Hermite polynomials here are the orthonormal probabilists' family
h_0 = 1, h_1 = x, h_{n+1} = (x h_n - sqrt(n) h_{n-1}) / sqrt(n+1).
"""
from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"


def coeff_antideriv_table(x: float, K: int) -> np.ndarray:
    """Antiderivative values A_k(x) = e^{-x^2/2} h_{k-1}(x) / sqrt(2 pi k).

    Returns an array A of length K+1 with A[0] = 0.0 (the k = 0 projection
    is handled by the Gaussian CDF, not by this table).  The exponential
    factor is folded into the recurrence so large |x| cannot overflow.
    """
    A = np.zeros(K + 1)
    if K < 1:
        return A
    g_prev = math.exp(-0.5 * x * x)  # e^{-x^2/2} h_0(x)
    A[1] = g_prev / math.sqrt(2.0 * math.pi)
    if K == 1:
        return A
    g = x * g_prev  # e^{-x^2/2} h_1(x)
    A[2] = g / math.sqrt(2.0 * math.pi * 2.0)
    for k in range(3, K + 1):
        n = k - 2  # recurrence index: computing h_{n+1} = h_{k-1}
        g_next = (x * g - math.sqrt(float(n)) * g_prev) / math.sqrt(float(n + 1))
        g_prev = g
        g = g_next
        A[k] = g / math.sqrt(2.0 * math.pi * float(k))
    return A


def hermite_weighted_series(c: np.ndarray, x: np.ndarray) -> np.ndarray:
    """sum_k c[k] h_k(x_i) for every grid point, Kahan-compensated in k."""
    c = np.ascontiguousarray(c, dtype=np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    K = c.shape[0] - 1
    n = x.shape[0]
    s = np.zeros(n)
    comp = np.zeros(n)
    h_prev = np.ones(n)

    def kahan(term):
        nonlocal s, comp
        y = term - comp
        t = s + y
        comp = (t - s) - y
        s = t

    kahan(c[0] * h_prev)
    if K == 0:
        return s
    h = x.copy()
    kahan(c[1] * h)
    for k in range(2, K + 1):
        n_rec = k - 1
        h_next = (x * h - math.sqrt(float(n_rec)) * h_prev) / math.sqrt(float(n_rec + 1))
        h_prev = h
        h = h_next
        kahan(c[k] * h)
    return s


def halfspace_series_sum(r: float, p: float, K: int) -> float:
    """sum_{k=1}^{K} k^p (e^{-r^2/2} h_{k-1}(r))^2, Kahan-compensated."""
    s = 0.0
    comp = 0.0
    g_prev = math.exp(-0.5 * r * r)
    g = r * g_prev
    for k in range(1, K + 1):
        if k == 1:
            gk = g_prev  # e^{-r^2/2} h_0(r)
        elif k == 2:
            gk = g
        else:
            n_rec = k - 2
            g_next = (r * g - math.sqrt(float(n_rec)) * g_prev) / math.sqrt(float(n_rec + 1))
            g_prev = g
            g = g_next
            gk = g
        term = math.pow(float(k), p) * gk * gk
        y = term - comp
        t = s + y
        comp = (t - s) - y
        s = t
    return s
