"""Rate functions and scaled cumulants for the two large-deviation regimes,
their numeric Legendre transforms, and exact finite-n deviation ratios.

Two families throughout: "near" normalizes L(n) by log_{1/p} n, "away"
normalizes by n.
"""

import math
from dataclasses import dataclass
from typing import Literal, Optional

from longrun.config import DEFAULT, DomainError, NumericConfig
from longrun.dist import log_tail_pair
from longrun.model import BernoulliModel, nominal_value
from longrun.numerics import golden_max

Family = Literal["near", "away"]

_LN_HALF = -math.log(2.0)


@dataclass(frozen=True)
class CumulantSpec:
    family: Family
    model: BernoulliModel


@dataclass(frozen=True)
class RateFunctionSpec:
    family: Family
    model: BernoulliModel


@dataclass(frozen=True)
class SearchOptions:
    tolerance: float = 1e-10
    grid: int = 129
    span: float = 50.0
    allow_infinite: bool = True


def cumulant(spec: CumulantSpec, lam: float) -> float:
    """Scaled cumulant: piecewise closed form, +inf allowed."""
    lam_p = spec.model.lambda_p
    if spec.family == "near":
        if lam > lam_p:
            return math.inf
        if lam == lam_p:
            return 2.0 * lam
        return lam
    if spec.family == "away":
        return lam - lam_p if lam >= lam_p else 0.0
    raise ValueError(f"unknown family {spec.family!r}")


def rate(spec: RateFunctionSpec, x: float) -> float:
    """Good rate function: (x-1) ln(1/p) on [1, inf) for the near family,
    x ln(1/p) on [0, 1] for the away family, +inf elsewhere.
    """
    lam_p = spec.model.lambda_p
    if spec.family == "near":
        return (x - 1.0) * lam_p if x >= 1.0 else math.inf
    if spec.family == "away":
        return x * lam_p if 0.0 <= x <= 1.0 else math.inf
    raise ValueError(f"unknown family {spec.family!r}")


def legendre_numeric(
    spec: CumulantSpec, x: float, opts: Optional[SearchOptions] = None
) -> float:
    """sup_lambda [lambda x - cumulant(lambda)] by search on each affine piece.

    The near family's isolated critical value (2 lambda at the critical point)
    is compared explicitly; the supremum over the open subcritical piece is
    realized by including the piece's closure endpoint.
    """
    opts = opts or SearchOptions()
    lam_p = spec.model.lambda_p
    if spec.family == "near":
        if x < 1.0:
            if opts.allow_infinite:
                return math.inf
            raise DomainError(f"x={x} outside the near effective domain [1, inf)")
        _, best = golden_max(
            lambda lam: lam * x - lam, lam_p - opts.span, lam_p, opts.tolerance
        )
        return max(best, lam_p * x - 2.0 * lam_p)
    if spec.family == "away":
        if not 0.0 <= x <= 1.0:
            if opts.allow_infinite:
                return math.inf
            raise DomainError(f"x={x} outside the away effective domain [0, 1]")
        _, left = golden_max(
            lambda lam: lam * x, lam_p - opts.span, lam_p, opts.tolerance
        )
        _, right = golden_max(
            lambda lam: lam * x - (lam - lam_p),
            lam_p,
            lam_p + opts.span,
            opts.tolerance,
        )
        return max(left, right)
    raise ValueError(f"unknown family {spec.family!r}")


def finite_n_upper_near(
    n: int,
    x: float,
    model: BernoulliModel,
    cfg: NumericConfig = DEFAULT,
    allow_infinite: bool = True,
) -> float:
    """(1/log_{1/p} n) ln P(L(n) >= (1+x) log_{1/p} n), exact.

    Converges to -x ln(1/p) as n grows.
    """
    if x <= 0:
        raise ValueError(f"x must be > 0, got {x}")
    ell = nominal_value(n, model)
    k = math.ceil((1.0 + x) * ell)
    if k > n:
        if allow_infinite:
            return -math.inf
        raise DomainError(f"threshold {(1 + x) * ell:.3f} exceeds n={n}")
    return log_tail_pair(n, k, model, cfg)[1] / ell


def finite_n_lower_near(
    n: int, x: float, model: BernoulliModel, cfg: NumericConfig = DEFAULT
) -> float:
    """(1/log_{1/p} n) ln[-ln P(L(n) <= (1-x) log_{1/p} n)], exact.

    Converges to x ln(1/p) as n grows; 0 < x < 1.
    """
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must lie in (0, 1), got {x}")
    ell = nominal_value(n, model)
    m = math.floor((1.0 - x) * ell)
    lc = log_tail_pair(n, m + 1, model, cfg)[0]
    if lc == 0.0:
        raise DomainError("the event has probability one; inner log undefined")
    if lc == -math.inf:
        raise DomainError("the event has probability zero; inner log undefined")
    return math.log(-lc) / ell


def finite_n_away(
    n: int, x: float, model: BernoulliModel, cfg: NumericConfig = DEFAULT
) -> float:
    """(1/n) ln P(L(n) >= n x), exact; converges to -x ln(1/p) on [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    k = math.ceil(n * x)
    if k <= 0:
        return 0.0
    return log_tail_pair(n, k, model, cfg)[1] / n


def finite_n_interval_near(
    n: int, a: float, b: float, model: BernoulliModel, cfg: NumericConfig = DEFAULT
) -> float:
    """(1/log_{1/p} n) ln P(a <= L(n)/log_{1/p} n <= b), exact; -inf for an
    event that is empty at this n.
    """
    if a > b:
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    ell = nominal_value(n, model)
    k1 = max(math.ceil(a * ell), 0)
    k2 = min(math.floor(b * ell), n)
    if k1 > k2:
        return -math.inf
    lc1, lsf1 = log_tail_pair(n, k1, model, cfg)
    lc2, lsf2 = log_tail_pair(n, k2 + 1, model, cfg)
    # P = cdf(k2+1) - cdf(k1) = sf(k1) - sf(k2+1); pick the non-cancelling side
    if lc2 < _LN_HALF:
        val = lc2 + math.log1p(-math.exp(lc1 - lc2)) if lc1 > -math.inf else lc2
    else:
        val = (
            lsf1 + math.log1p(-math.exp(lsf2 - lsf1))
            if lsf2 > -math.inf
            else lsf1
        )
    return val / ell
