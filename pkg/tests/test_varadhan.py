"""Exponential-functional limits and the power-law coefficient."""

import math

import numpy as np
import pytest

from longrun.config import DivergenceError
from longrun.dist import tail_bounds
from longrun.varadhan import (
    FunctionalSpec,
    finite_n_functional,
    functional_limit,
    power_coefficient,
    power_coefficient_numeric,
)
from longrun.model import BernoulliModel

HALF = BernoulliModel(0.5)
LN2 = math.log(2.0)

T_GRID = (0.5, 1.0, 2.0, 5.0)
ALPHA_GRID = (0.25, 0.5, 0.75)
P_GRID = (0.3, 0.5, 0.8)


# ---------------------------------------------------------------- spec


def test_functional_spec_validation():
    with pytest.raises(ValueError):
        FunctionalSpec.power(0.0, 0.5)
    with pytest.raises(ValueError):
        FunctionalSpec.power(1.0, 1.0)
    with pytest.raises(ValueError):
        FunctionalSpec.bounded(lambda x: x, math.inf)


def test_power_spec_evaluates():
    f = FunctionalSpec.power(2.0, 0.5)
    assert f(4.0) == pytest.approx(4.0, rel=1e-14)
    assert np.allclose(f(np.array([1.0, 4.0])), [2.0, 4.0])


# ---------------------------------------------------------------- limits


def test_zero_functional_limit_is_zero():
    f = FunctionalSpec.bounded(lambda x: 0.0, 0.0)
    assert abs(functional_limit(f, "near", HALF)) <= 1e-9
    assert abs(functional_limit(f, "away", HALF)) <= 1e-9


def test_subthreshold_power_max_at_one():
    # t = 1 <= sqrt(ln 2) / 0.5, so the max of t x^a - (x-1) ln 2 is at x = 1
    f = FunctionalSpec.power(1.0, 0.5)
    assert functional_limit(f, "near", HALF) == pytest.approx(1.0, abs=1e-9)


def test_divergent_functional_rejected():
    # declared bounded but actually super-linear: the search must refuse
    f = FunctionalSpec.bounded(lambda x: 10.0 * x, 5.0)
    with pytest.raises(DivergenceError):
        functional_limit(f, "near", HALF)


# ---------------------------------------------------------------- coefficient


def test_power_coefficient_examples():
    assert power_coefficient(1.0, 0.5, HALF) == pytest.approx(
        1.0 / math.sqrt(LN2), rel=1e-13
    )
    expected = (2.0 / math.sqrt(LN2)) ** 2 * 0.25 + 1.0
    assert power_coefficient(2.0, 0.5, HALF) == pytest.approx(expected, rel=1e-13)
    with pytest.raises(ValueError):
        power_coefficient(-1.0, 0.5, HALF)
    with pytest.raises(ValueError):
        power_coefficient(1.0, 1.2, HALF)


@pytest.mark.parametrize("p", P_GRID)
@pytest.mark.parametrize("alpha", [round(a, 1) for a in np.arange(0.1, 0.95, 0.1)])
def test_branch_continuity_at_threshold(p, alpha):
    m = BernoulliModel(p)
    t_star = m.lambda_p**alpha / alpha
    below = power_coefficient(t_star, alpha, m)
    above = power_coefficient(t_star * (1.0 + 1e-12), alpha, m)
    assert below == pytest.approx(1.0 / alpha, rel=1e-10)
    assert abs(above - below) <= 1e-10


@pytest.mark.parametrize("p", P_GRID)
@pytest.mark.parametrize("alpha", ALPHA_GRID)
def test_coefficient_monotone_in_t(p, alpha):
    m = BernoulliModel(p)
    ts = np.linspace(0.05, 8.0, 60)
    vals = [power_coefficient(float(t), alpha, m) for t in ts]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("p", P_GRID)
@pytest.mark.parametrize("alpha", ALPHA_GRID)
@pytest.mark.parametrize("t", T_GRID)
def test_numeric_matches_closed_form(t, alpha, p):
    m = BernoulliModel(p)
    closed = power_coefficient(t, alpha, m)
    numeric = power_coefficient_numeric(t, alpha, m)
    assert abs(closed - numeric) <= 1e-8


# ---------------------------------------------------------------- finite n


def test_constant_functional_exact():
    f = FunctionalSpec.bounded(lambda x: 0.75, 0.75)
    for family in ("near", "away"):
        assert finite_n_functional(100, f, family, HALF) == pytest.approx(
            0.75, abs=1e-12
        )


def test_finite_n_power_converges():
    f = FunctionalSpec.power(1.0, 0.5)
    limit = functional_limit(f, "near", HALF)
    gaps = [
        abs(finite_n_functional(n, f, "near", HALF) - limit)
        for n in (10**3, 10**4, 10**5)
    ]
    assert gaps[0] >= gaps[1] >= gaps[2]


def test_finite_n_bounded_within_sandwich():
    # f supported near its interior max at x0: E exp{n f(L/n)} is bracketed by
    # replacing the pmf tail beyond n x0 with the product bounds
    n = 10**3
    x0 = 0.2
    f = FunctionalSpec.bounded(lambda x: 1.0 if x >= x0 else 0.0, 1.0)
    v = finite_n_functional(n, f, "away", HALF)
    k = math.ceil(n * x0)
    lo, hi = tail_bounds(n, k, HALF)
    sf_lo = math.log(-math.expm1(hi))
    sf_hi = math.log(-math.expm1(lo))
    # ln E = ln(P(L < k) + e^n P(L >= k)); bracket through the sf bounds
    lo_v = np.logaddexp(0.0, n + sf_lo) / n
    hi_v = np.logaddexp(0.0, n + sf_hi) / n
    assert lo_v - 1e-9 <= v <= hi_v + 1e-9
