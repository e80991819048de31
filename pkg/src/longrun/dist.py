"""Exact distribution of the longest success run L(n): log-domain CDF/PMF,
two-sided product bounds, and moments.

Everything is exact up to floating rounding.  For a single cutoff k the cost
is O(n); a full distribution costs O(n * k_cut) where k_cut is the point past
which the survival probability is small enough for a closed-form tail.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from longrun import kernels
from longrun.config import DEFAULT, EULER_GAMMA, NumericConfig, ResourceLimitError
from longrun.model import BernoulliModel, nominal_value

_LN_HALF = -math.log(2.0)


@dataclass(frozen=True)
class RunLengthDistribution:
    """Immutable exact law of L(n) for one (n, p).

    ``log_cdf[k] = ln P(L(n) < k)`` for k = 0..n+1 and ``log_sf[k] =
    ln P(L(n) >= k)``; ``log_pmf[k] = ln P(L(n) = k)`` for k = 0..n.
    """

    n: int
    model: BernoulliModel
    log_cdf: np.ndarray
    log_sf: np.ndarray
    log_pmf: np.ndarray

    def pmf(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_pmf)

    def support(self) -> np.ndarray:
        return np.arange(self.n + 1)


def _closed_form_log_sf(n: int, k, model: BernoulliModel):
    """ln P(L(n) >= k) = k ln p + ln(1 + (n-k) q), valid deep in the tail.

    Comes from unrolling the recurrence with the no-run probability replaced
    by 1; the dropped terms have relative size P(L(n) >= k) itself.
    """
    return k * math.log(model.p) + np.log1p((n - k) * model.q)


def _k_cutoff(n: int, model: BernoulliModel, cfg: NumericConfig) -> int:
    """Smallest k past which the closed-form tail is below the threshold."""
    t = cfg.tail_log_threshold
    kc = int(math.ceil((math.log1p(n * model.q) - t) / model.lambda_p))
    return max(1, min(kc, n))


def log_tail_pair(
    n: int, k: int, model: BernoulliModel, cfg: NumericConfig = DEFAULT
) -> Tuple[float, float]:
    """(ln P(L(n) < k), ln P(L(n) >= k)) for integer k, exact for any k.

    k <= 0 gives (-inf, 0); k > n gives (0, -inf).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > cfg.max_n_single:
        raise ResourceLimitError(
            f"n={n} exceeds the single-query cap {cfg.max_n_single}"
        )
    if k <= 0:
        return (-math.inf, 0.0)
    if k > n:
        return (0.0, -math.inf)
    if k > _k_cutoff(n, model, cfg):
        lsf = float(_closed_form_log_sf(n, k, model))
        return (math.log1p(-math.exp(lsf)), lsf)
    lc = kernels.log_prob_no_run_single(n, k, model.p, model.q)
    sf = -math.expm1(lc)
    lsf = math.log(sf) if sf > 0.0 else -math.inf
    return (lc, lsf)


def log_prob_no_run(
    n: int, k: int, model: BernoulliModel, cfg: NumericConfig = DEFAULT
) -> float:
    """ln P(L(n) < k); 0 when k > n."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return log_tail_pair(n, k, model, cfg)[0]


def tail_bounds(
    n: int, k: int, model: BernoulliModel
) -> Tuple[float, float]:
    """Two-sided product bounds on ln P(L(n) < k):
    (n-k+1) ln(1-p^k) <= ln P(L(n) < k) <= (n-k+1) ln(1-q p^k).
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    pk = model.p**k
    lo = (n - k + 1) * math.log1p(-pk)
    hi = (n - k + 1) * math.log1p(-model.q * pk)
    return (lo, hi)


def distribution(
    n: int,
    model: BernoulliModel,
    cfg: NumericConfig = DEFAULT,
) -> RunLengthDistribution:
    """Materialize the exact law of L(n)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > cfg.max_n_distribution:
        raise ResourceLimitError(
            f"n={n} exceeds the full-distribution cap {cfg.max_n_distribution}"
        )
    lc = np.empty(n + 2)
    lsf = np.empty(n + 2)
    lc[0], lsf[0] = -math.inf, 0.0
    lc[n + 1], lsf[n + 1] = 0.0, -math.inf

    kc = _k_cutoff(n, model, cfg)
    block = kernels.log_prob_no_run_block(n, kc, model.p, model.q)
    lc[1 : kc + 1] = block
    with np.errstate(divide="ignore"):
        lsf[1 : kc + 1] = np.log(-np.expm1(block))
    if kc < n:
        ks = np.arange(kc + 1, n + 1, dtype=np.float64)
        tail = _closed_form_log_sf(n, ks, model)
        lsf[kc + 1 : n + 1] = tail
        lc[kc + 1 : n + 1] = np.log1p(-np.exp(tail))

    # pmf(k) = cdf(k+1) - cdf(k) = sf(k) - sf(k+1); take whichever difference
    # is between small quantities so no precision is lost to cancellation
    with np.errstate(divide="ignore", invalid="ignore"):
        use_cdf = lc[1 : n + 2] < _LN_HALF
        d_cdf = lc[1 : n + 2] + np.log1p(-np.exp(lc[0 : n + 1] - lc[1 : n + 2]))
        d_sf = lsf[0 : n + 1] + np.log1p(-np.exp(lsf[1 : n + 2] - lsf[0 : n + 1]))
    lpmf = np.where(use_cdf, d_cdf, d_sf)
    # lc[0] = -inf makes the first cdf difference collapse to lc[1]
    lpmf[0] = lc[1]

    for arr in (lc, lsf, lpmf):
        arr.setflags(write=False)
    return RunLengthDistribution(n=n, model=model, log_cdf=lc, log_sf=lsf, log_pmf=lpmf)


def moment(dist: RunLengthDistribution, order: int) -> float:
    """Exact E L(n)^order, accumulated with compensated summation."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    ks = dist.support().astype(np.float64)
    with np.errstate(over="ignore"):
        terms = ks**order * np.exp(dist.log_pmf)
    return math.fsum(terms.tolist())


def mean_asymptotic(n: int, model: BernoulliModel) -> float:
    """Asymptotic mean log_{1/p} n + log_{1/p}(1-p) + gamma/ln(1/p) - 1/2
    with the vanishing correction term dropped.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    lam = model.lambda_p
    return nominal_value(n, model) + math.log(model.q) / lam + EULER_GAMMA / lam - 0.5
