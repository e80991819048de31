"""Self-contained special functions for the interval machinery: inverse
standard normal CDF and the regularized incomplete beta with its inverse.
"""

import math

from longrun.config import DEFAULT, ConvergenceError, NumericConfig

_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Acklam's rational approximation to the normal quantile (|error| < 1.15e-9
# before refinement)
_A = (
    -3.969683028665376e01,
    2.209460984245205e02,
    -2.759285104469687e02,
    1.383577518672690e02,
    -3.066479806614716e01,
    2.506628277459239e00,
)
_B = (
    -5.447609879822406e01,
    1.615858368580409e02,
    -1.556989798598866e02,
    6.680131188771972e01,
    -1.328068155288572e01,
)
_C = (
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e00,
    -2.549732539343734e00,
    4.374664141464968e00,
    2.938163982698783e00,
)
_D = (
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e00,
    3.754408661907416e00,
)
_P_LOW = 0.02425


def norm_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / _SQRT2)


def norm_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / _SQRT_2PI


def std_normal_quantile(q: float, cfg: NumericConfig = DEFAULT) -> float:
    """Inverse standard normal CDF: rational approximation plus Halley
    refinement of Phi(x) - q through the complementary error function.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"quantile argument must lie in (0, 1), got {q}")
    if q < _P_LOW:
        u = math.sqrt(-2.0 * math.log(q))
        x = (
            ((((_C[0] * u + _C[1]) * u + _C[2]) * u + _C[3]) * u + _C[4]) * u + _C[5]
        ) / ((((_D[0] * u + _D[1]) * u + _D[2]) * u + _D[3]) * u + 1.0)
    elif q > 1.0 - _P_LOW:
        u = math.sqrt(-2.0 * math.log(1.0 - q))
        x = -(
            ((((_C[0] * u + _C[1]) * u + _C[2]) * u + _C[3]) * u + _C[4]) * u + _C[5]
        ) / ((((_D[0] * u + _D[1]) * u + _D[2]) * u + _D[3]) * u + 1.0)
    else:
        u = q - 0.5
        r = u * u
        x = (
            ((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]
        ) * u / (
            ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
        )
    for _ in range(2):
        e = norm_cdf(x) - q
        u = e / norm_pdf(x)
        x -= u / (1.0 + 0.5 * x * u)
    return x


def _log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def _beta_cf(a: float, b: float, x: float, cfg: NumericConfig) -> float:
    """Continued fraction for the incomplete beta, modified Lentz scheme."""
    tiny = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, cfg.beta_max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        step = d * c
        h *= step
        if abs(step - 1.0) < cfg.beta_rel_tol:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction stalled at a={a}, b={b}, x={x}"
    )


def regularized_incomplete_beta(
    a: float, b: float, x: float, cfg: NumericConfig = DEFAULT
) -> float:
    """I_x(a, b), with the symmetry switch at x > (a+1)/(a+b+2)."""
    if a <= 0 or b <= 0:
        raise ValueError(f"a and b must be > 0, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    front = math.exp(
        a * math.log(x) + b * math.log1p(-x) - _log_beta(a, b)
    )
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x, cfg) / a
    return 1.0 - math.exp(
        b * math.log1p(-x) + a * math.log(x) - _log_beta(a, b)
    ) * _beta_cf(b, a, 1.0 - x, cfg) / b


def beta_quantile(a: float, b: float, q: float, cfg: NumericConfig = DEFAULT) -> float:
    """Inverse of I_x(a, b) in x: Newton with a maintained bisection bracket."""
    if a <= 0 or b <= 0:
        raise ValueError(f"a and b must be > 0, got a={a}, b={b}")
    if not 0.0 < q < 1.0:
        raise ValueError(f"quantile argument must lie in (0, 1), got {q}")
    if q > 0.5:
        # work on the smaller tail; plain Newton stalls on a saturated CDF
        return 1.0 - beta_quantile(b, a, 1.0 - q, cfg)
    lo, hi = 0.0, 1.0
    x = a / (a + b)
    log_beta = _log_beta(a, b)
    log_q = math.log(q)
    for _ in range(200):
        cdf = regularized_incomplete_beta(a, b, x, cfg)
        if cdf > q:
            hi = x
        else:
            lo = x
        if cdf == q:
            return x
        pdf = math.exp((a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x) - log_beta)
        if cdf > 0.0 and pdf > 0.0:
            # Newton on ln I_x - ln q: takes exponential tails in useful strides
            step = (math.log(cdf) - log_q) * cdf / pdf
        else:
            step = 0.0
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) < cfg.quantile_abs_tol * max(1.0, abs(x)):
            return x_new
        x = x_new
    raise ConvergenceError(f"beta quantile failed to converge at a={a}, b={b}, q={q}")
