"""Exponential-functional limits max[f - rate] with exact finite-n
counterparts, and the closed-form coefficient for power functionals
f(x) = t x^alpha.
"""

import math
from dataclasses import dataclass
from typing import Callable, Literal, Optional

import numpy as np

from longrun.config import DEFAULT, DivergenceError, NumericConfig
from longrun.dist import RunLengthDistribution, distribution
from longrun.ldp import Family, RateFunctionSpec, rate
from longrun.model import BernoulliModel, nominal_value
from longrun.numerics import grid_golden_max, logsumexp


@dataclass(frozen=True)
class FunctionalSpec:
    """Admissible functional: either t x^alpha (t > 0, 0 < alpha < 1) or a
    declared-bounded custom map. Admissibility is structural; no analytic
    growth checking is attempted.
    """

    kind: Literal["power", "bounded"]
    t: Optional[float] = None
    alpha: Optional[float] = None
    func: Optional[Callable[[float], float]] = None
    bound: Optional[float] = None

    @classmethod
    def power(cls, t: float, alpha: float) -> "FunctionalSpec":
        if t <= 0:
            raise ValueError(f"t must be > 0, got {t}")
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
        return cls(kind="power", t=t, alpha=alpha)

    @classmethod
    def bounded(cls, func: Callable[[float], float], bound: float) -> "FunctionalSpec":
        if not math.isfinite(bound) or bound < 0:
            raise ValueError(f"bound must be finite and >= 0, got {bound}")
        return cls(kind="bounded", func=func, bound=bound)

    def __call__(self, x):
        if self.kind == "power":
            return self.t * np.power(x, self.alpha)
        assert self.func is not None
        if np.ndim(x) == 0:
            return self.func(float(x))
        return np.array([self.func(float(v)) for v in np.ravel(x)]).reshape(
            np.shape(x)
        )


def functional_limit(
    f: FunctionalSpec,
    family: Family,
    model: BernoulliModel,
    cfg: NumericConfig = DEFAULT,
) -> float:
    """max over the rate's effective domain of f(x) - rate(x).

    The away domain is [0, 1].  The near domain is truncated at an x_max that
    doubles until the objective is decreasing over the last grid points; a
    functional that keeps growing there is rejected as inadmissible.
    """
    spec = RateFunctionSpec(family=family, model=model)

    def objective(x: float) -> float:
        return float(f(x)) - rate(spec, x)

    if family == "away":
        _, best = grid_golden_max(objective, 0.0, 1.0, cfg.search_grid, cfg.search_tol)
        return best
    if family != "near":
        raise ValueError(f"unknown family {family!r}")
    x_max = 10.0
    for _ in range(cfg.search_max_doublings):
        xs = np.linspace(1.0, x_max, cfg.search_grid)
        vals = np.array([objective(float(x)) for x in xs])
        if vals[-1] < vals[-2] < vals[-3]:
            _, best = grid_golden_max(
                objective, 1.0, x_max, cfg.search_grid, cfg.search_tol
            )
            return best
        x_max *= 2.0
    raise DivergenceError(
        "objective still increasing at the search horizon; functional looks "
        "inadmissible for the near family"
    )


def power_coefficient(t: float, alpha: float, model: BernoulliModel) -> float:
    """Coefficient of ln n in the growth of ln E exp{t (ln n)^(1-alpha) L(n)^alpha}:
    t / ln^alpha(1/p) below the threshold t* = ln^alpha(1/p)/alpha, and
    (t / ln^alpha(1/p))^(1/(1-alpha)) C_alpha + 1 above it, with
    C_alpha = alpha^(alpha/(1-alpha)) - alpha^(1/(1-alpha)).
    """
    if t <= 0:
        raise ValueError(f"t must be > 0, got {t}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    lam_p = model.lambda_p
    scaled = t / lam_p**alpha
    if t <= lam_p**alpha / alpha:
        return scaled
    c_alpha = alpha ** (alpha / (1.0 - alpha)) - alpha ** (1.0 / (1.0 - alpha))
    return scaled ** (1.0 / (1.0 - alpha)) * c_alpha + 1.0


def power_coefficient_numeric(
    t: float, alpha: float, model: BernoulliModel, cfg: NumericConfig = DEFAULT
) -> float:
    """Same coefficient, but from the numeric maximization.

    The two parametrizations differ by a change of variables: the coefficient
    statement scales by (ln n)^(1-alpha), the variational one by
    (log_{1/p} n)^(1-alpha), so t maps to t ln^(1-alpha)(1/p) and the
    maximum divides by ln(1/p).
    """
    lam_p = model.lambda_p
    f = FunctionalSpec.power(t * lam_p ** (1.0 - alpha), alpha)
    return functional_limit(f, "near", model, cfg) / lam_p


def finite_n_functional(
    n: int,
    f: FunctionalSpec,
    family: Family,
    model: BernoulliModel,
    dist: Optional[RunLengthDistribution] = None,
    cfg: NumericConfig = DEFAULT,
) -> float:
    """Exact (1/s(n)) ln E exp{s(n) f(L(n)/s(n))} with s(n) the family speed."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if dist is None:
        dist = distribution(n, model, cfg)
    speed = nominal_value(n, model) if family == "near" else float(n)
    ks = dist.support().astype(np.float64)
    return logsumexp(speed * f(ks / speed) + dist.log_pmf) / speed
