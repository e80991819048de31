"""Moment generating function of the longest run, by two independent exact
methods, plus its three-regime growth limits and convergence diagnostics.
"""

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from longrun import ldp
from longrun.config import DEFAULT, NumericConfig, ResourceLimitError
from longrun.dist import RunLengthDistribution, distribution
from longrun.model import BernoulliModel, nominal_value
from longrun.numerics import logsumexp

Speed = Literal["near", "away"]
RegimeTag = Literal["subcritical", "critical", "supercritical"]


@dataclass(frozen=True)
class MgfRegime:
    """Exponent lambda relative to the critical point ln(1/p)."""

    tag: RegimeTag
    lam: float
    model: BernoulliModel

    @classmethod
    def classify(
        cls,
        lam: float,
        model: BernoulliModel,
        tol: float = DEFAULT.regime_tol,
        force: Optional[RegimeTag] = None,
    ) -> "MgfRegime":
        if force is not None:
            return cls(tag=force, lam=lam, model=model)
        gap = lam - model.lambda_p
        if abs(gap) <= tol:
            tag: RegimeTag = "critical"
        elif gap < 0:
            tag = "subcritical"
        else:
            tag = "supercritical"
        return cls(tag=tag, lam=lam, model=model)


def log_mgf(dist: RunLengthDistribution, lam: float) -> float:
    """ln E exp(lam * L(n)) as a log-sum-exp over the exact pmf."""
    ks = dist.support().astype(np.float64)
    return logsumexp(lam * ks + dist.log_pmf)


def log_mgf_recursive(
    n: int, model: BernoulliModel, lam: float, cfg: NumericConfig = DEFAULT
) -> float:
    """Independent evaluation through the first-failure decomposition

        E e^{lam L(n)} = q sum_{j=0}^{n-1} p^j E e^{lam max(L(n-j-1), j)}
                         + p^n e^{lam n},

    with E e^{lam max(L(m), j)} expanded over the exact law of L(m).
    All sums run in log domain; sub-distributions are materialized once.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > cfg.max_n_recursion:
        raise ResourceLimitError(
            f"n={n} exceeds the recursion cap {cfg.max_n_recursion}"
        )
    ln_p = math.log(model.p)
    ln_q = math.log(model.q)
    terms = np.empty(n + 1)
    # j >= m forces max(L(m), j) = j, so only m > j needs the law of L(m)
    suffix_cache = {}
    for j in range(n):
        m = n - 1 - j
        if j >= m:
            mval = lam * j
        else:
            if m not in suffix_cache:
                d = distribution(m, model, cfg)
                v = lam * d.support() + d.log_pmf
                rev = np.logaddexp.accumulate(v[::-1])[::-1]
                suffix_cache[m] = (d, rev)
            d, rev = suffix_cache[m]
            # e^{lam j} P(L(m) <= j) + sum_{k > j} e^{lam k} P(L(m) = k)
            above = rev[j + 1] if j + 1 <= m else -math.inf
            mval = np.logaddexp(lam * j + d.log_cdf[j + 1], above)
        terms[j] = ln_q + j * ln_p + mval
    terms[n] = n * ln_p + lam * n
    return logsumexp(terms)


def normalized_log_mgf(
    n: int,
    model: BernoulliModel,
    lam: float,
    speed: Speed,
    dist: Optional[RunLengthDistribution] = None,
    cfg: NumericConfig = DEFAULT,
) -> float:
    """log MGF divided by the growth scale: log_{1/p} n (near) or n (away)."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if dist is None:
        dist = distribution(n, model, cfg)
    value = log_mgf(dist, lam)
    if speed == "near":
        return value / nominal_value(n, model)
    if speed == "away":
        return value / n
    raise ValueError(f"unknown speed {speed!r}")


def limit_normalized_log_mgf(lam: float, model: BernoulliModel, speed: Speed) -> float:
    """Limiting value of the normalized log MGF (may be +inf at near speed)."""
    if speed not in ("near", "away"):
        raise ValueError(f"unknown speed {speed!r}")
    return ldp.cumulant(ldp.CumulantSpec(family=speed, model=model), lam)
