"""Shared numeric helpers: stable log-sum-exp and scalar maximization."""

import math
from typing import Callable, Tuple

import numpy as np

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def logsumexp(values: np.ndarray) -> float:
    """ln sum(exp(values)) with max shift; -inf for an empty or all -inf input."""
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        return -math.inf
    m = np.max(v)
    if not np.isfinite(m):
        # +inf propagates, all -inf collapses
        return float(m)
    return float(m + np.log(np.sum(np.exp(v - m))))


def golden_max(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12
) -> Tuple[float, float]:
    """Golden-section maximization on [lo, hi]; endpoints are candidates too."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    # widen the stop threshold to the float spacing at this magnitude, else
    # the bracket can stall above an absolute tol it can never reach
    tol = max(tol, 4.0 * math.ulp(max(abs(lo), abs(hi), 1.0)))
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    candidates = [(lo, f(lo)), (hi, f(hi)), (c, fc), (d, fd)]
    return max(candidates, key=lambda xv: xv[1])


def grid_golden_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    grid: int = 129,
    tol: float = 1e-12,
) -> Tuple[float, float]:
    """Coarse grid scan then golden-section refinement around the best cell."""
    xs = np.linspace(lo, hi, grid)
    vals = [f(float(x)) for x in xs]
    i = int(np.argmax(vals))
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, grid - 1)]
    x, v = golden_max(f, float(a), float(b), tol)
    if vals[i] > v:
        return float(xs[i]), vals[i]
    return x, v
