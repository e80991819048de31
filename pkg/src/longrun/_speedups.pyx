# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled recurrence kernels for exact longest-run tail probabilities.

The quantity computed is ln P(no success run of length >= k in n trials).
Two forms of the same linear recurrence are used, chosen per k for forward
stability, and both are carried as per-step ratios so the log never
underflows:

* k-term form a_m = q sum_{j=1..k} p^{j-1} a_{m-j}: all coefficients are
  positive, so it is stable for every k, at O(k) per step;
* compact form a_m = a_{m-1} - q p^k a_{m-k-1}: O(1) per step, but its
  characteristic polynomial carries a spurious root at x = p which dominates
  the true decay exactly when k < p/q, so it is used only above that.
"""

from libc.math cimport log, log1p, pow
from libc.stdlib cimport free, malloc

import numpy as np

BACKEND = "compiled"

# sliding-window product drift in the compact form is killed by a periodic
# recompute
DEF REFRESH_EVERY = 4096


cdef double _single_windowed(Py_ssize_t n, Py_ssize_t k, double p, double q) nogil:
    # w[j-1] = a_{m-j} / a_{m-1}; every step rebuilds the positive sum
    cdef double pk = pow(p, <double> k)
    cdef double total = log1p(-pk)
    cdef double comp = 0.0  # Kahan carry for the log accumulation
    cdef double ak = 1.0 - pk
    cdef double s, pj, y, t
    cdef Py_ssize_t m, j
    if k >= n:
        return total
    cdef double* w = <double*> malloc(k * sizeof(double))
    if w == NULL:
        with gil:
            raise MemoryError("window allocation failed")
    w[0] = 1.0
    for j in range(1, k):
        w[j] = 1.0 / ak
    for m in range(k + 1, n + 1):
        s = 0.0
        pj = q
        for j in range(k):
            s += pj * w[j]
            pj *= p
        y = log(s) - comp
        t = total + y
        comp = (t - total) - y
        total = t
        for j in range(k - 1, 0, -1):
            w[j] = w[j - 1] / s
        w[0] = 1.0
    free(w)
    return total


cdef double _single_compact(Py_ssize_t n, Py_ssize_t k, double p, double q) nogil:
    cdef double pk = pow(p, <double> k)
    cdef double c = q * pk
    cdef double total = log1p(-pk)
    cdef double comp = 0.0  # Kahan carry for the log accumulation
    cdef double V = 1.0 - pk
    cdef double r, u, old, y, t
    cdef Py_ssize_t m, idx, j, since
    if k >= n:
        return total
    # ring holds the last k ratios r_{m-k} .. r_{m-1}; V is their product
    cdef double* ring = <double*> malloc(k * sizeof(double))
    if ring == NULL:
        with gil:
            raise MemoryError("ring buffer allocation failed")
    for j in range(k - 1):
        ring[j] = 1.0
    ring[k - 1] = 1.0 - pk
    idx = 0
    since = 0
    for m in range(k + 1, n + 1):
        u = c / V
        y = log1p(-u) - comp
        t = total + y
        comp = (t - total) - y
        total = t
        r = 1.0 - u
        old = ring[idx]
        ring[idx] = r
        idx += 1
        if idx == k:
            idx = 0
        V = V * r / old
        since += 1
        if since == REFRESH_EVERY:
            V = 1.0
            for j in range(k):
                V *= ring[j]
            since = 0
    free(ring)
    return total


cdef inline double _single(Py_ssize_t n, Py_ssize_t k, double p, double q) nogil:
    if k <= <Py_ssize_t> (p / q) + 2:
        return _single_windowed(n, k, p, q)
    return _single_compact(n, k, p, q)


def log_prob_no_run_single(n, k, double p, double q):
    """ln P(L(n) < k) for 1 <= k <= n; bounds are the caller's job."""
    cdef Py_ssize_t n_ = n
    cdef Py_ssize_t k_ = k
    cdef double out
    with nogil:
        out = _single(n_, k_, p, q)
    return out


def log_prob_no_run_block(n, kmax, double p, double q):
    """Vector of ln P(L(n) < k) for k = 1..kmax."""
    cdef Py_ssize_t n_ = n
    cdef Py_ssize_t kmax_ = kmax
    cdef Py_ssize_t k
    out_arr = np.empty(kmax_, dtype=np.float64)
    cdef double[::1] out = out_arr
    with nogil:
        for k in range(1, kmax_ + 1):
            out[k - 1] = _single(n_, k, p, q)
    return out_arr
