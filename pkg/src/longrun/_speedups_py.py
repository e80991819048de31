"""Pure-Python recurrence kernels, algorithmically identical to the
compiled extension.

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

from __future__ import annotations

import math

import numpy as np

BACKEND = "pure"

# sliding-window product drift in the compact form is killed by a periodic
# recompute
_REFRESH_EVERY = 4096


def _single_windowed(n: int, k: int, p: float, q: float) -> float:
    pk = p**k
    total = math.log1p(-pk)
    if k >= n:
        return total
    ak = 1.0 - pk
    # w[j-1] = a_{m-j} / a_{m-1}; every step rebuilds the positive sum
    w = [1.0] + [1.0 / ak] * (k - 1)
    comp = 0.0  # Kahan carry for the log accumulation
    for _ in range(k + 1, n + 1):
        s = 0.0
        pj = q
        for wj in w:
            s += pj * wj
            pj *= p
        y = math.log(s) - comp
        t = total + y
        comp = (t - total) - y
        total = t
        for j in range(k - 1, 0, -1):
            w[j] = w[j - 1] / s
        w[0] = 1.0
    return total


def _single_compact(n: int, k: int, p: float, q: float) -> float:
    pk = p**k
    c = q * pk
    total = math.log1p(-pk)
    if k >= n:
        return total
    # ring holds the last k ratios r_{m-k} .. r_{m-1}; V is their product
    ring = [1.0] * (k - 1) + [1.0 - pk]
    V = 1.0 - pk
    idx = 0
    since = 0
    comp = 0.0  # Kahan carry for the log accumulation
    for _ in range(k + 1, n + 1):
        u = c / V
        y = math.log1p(-u) - comp
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
        if since == _REFRESH_EVERY:
            V = math.prod(ring)
            since = 0
    return total


def _single(n: int, k: int, p: float, q: float) -> float:
    if k <= int(p / q) + 2:
        return _single_windowed(n, k, p, q)
    return _single_compact(n, k, p, q)


def log_prob_no_run_single(n: int, k: int, p: float, q: float) -> float:
    """ln P(L(n) < k) for 1 <= k <= n; bounds are the caller's job."""
    return _single(n, k, p, q)


def log_prob_no_run_block(n: int, kmax: int, p: float, q: float) -> np.ndarray:
    """Vector of ln P(L(n) < k) for k = 1..kmax."""
    out = np.empty(kmax, dtype=np.float64)
    for k in range(1, kmax + 1):
        out[k - 1] = _single(n, k, p, q)
    return out
