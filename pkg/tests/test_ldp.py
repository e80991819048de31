"""Rate functions, cumulants, numeric Legendre transforms, finite-n ratios."""

import math

import numpy as np
import pytest

from longrun.config import DomainError
from longrun.dist import tail_bounds
from longrun.ldp import (
    CumulantSpec,
    RateFunctionSpec,
    SearchOptions,
    cumulant,
    finite_n_away,
    finite_n_interval_near,
    finite_n_lower_near,
    finite_n_upper_near,
    legendre_numeric,
    rate,
)
from longrun.model import BernoulliModel, nominal_value

HALF = BernoulliModel(0.5)
LN2 = math.log(2.0)


# ---------------------------------------------------------------- closed form


def test_rate_examples():
    near = RateFunctionSpec("near", HALF)
    away = RateFunctionSpec("away", HALF)
    assert rate(near, 1.0) == 0.0
    assert rate(near, 2.0) == pytest.approx(LN2, rel=1e-14)
    assert rate(near, 0.999) == math.inf
    assert rate(away, 0.5) == pytest.approx(0.5 * LN2, rel=1e-14)
    assert rate(away, 1.5) == math.inf
    assert rate(away, -0.1) == math.inf


def test_cumulant_examples():
    near = CumulantSpec("near", HALF)
    away = CumulantSpec("away", HALF)
    assert cumulant(near, 0.0) == 0.0
    assert cumulant(near, LN2) == pytest.approx(2.0 * LN2, rel=1e-14)
    assert cumulant(near, LN2 + 0.1) == math.inf
    assert cumulant(away, -5.0) == 0.0
    assert cumulant(away, LN2 + 1.0) == pytest.approx(1.0, rel=1e-12)


def test_rate_goodness():
    for p in (0.3, 0.5, 0.8):
        m = BernoulliModel(p)
        near = RateFunctionSpec("near", m)
        away = RateFunctionSpec("away", m)
        xs_near = np.linspace(1.0, 8.0, 71)
        vals = [rate(near, x) for x in xs_near]
        assert all(math.isfinite(v) and v >= 0.0 for v in vals)
        assert rate(near, 1.0) == 0.0
        xs_away = np.linspace(0.0, 1.0, 21)
        vals = [rate(away, x) for x in xs_away]
        assert all(math.isfinite(v) and v >= 0.0 for v in vals)
        assert rate(away, 0.0) == 0.0


# ---------------------------------------------------------------- Legendre


@pytest.mark.parametrize("p", (0.3, 0.5, 0.8, 0.95))
def test_legendre_matches_rate_on_grids(p):
    m = BernoulliModel(p)
    near_c = CumulantSpec("near", m)
    near_r = RateFunctionSpec("near", m)
    for x in np.arange(1.0, 5.0 + 1e-9, 0.1):
        assert abs(legendre_numeric(near_c, float(x)) - rate(near_r, float(x))) <= 1e-8
    away_c = CumulantSpec("away", m)
    away_r = RateFunctionSpec("away", m)
    for x in np.arange(0.0, 1.0 + 1e-9, 0.05):
        assert abs(legendre_numeric(away_c, float(x)) - rate(away_r, float(x))) <= 1e-8


def test_legendre_outside_domain():
    spec = CumulantSpec("near", HALF)
    assert legendre_numeric(spec, 0.5) == math.inf
    with pytest.raises(DomainError):
        legendre_numeric(spec, 0.5, SearchOptions(allow_infinite=False))


# ---------------------------------------------------------------- finite-n


def sf_brackets(n, k, model):
    """Sandwich-induced brackets on ln P(L(n) >= k)."""
    lo, hi = tail_bounds(n, k, model)
    return math.log(-math.expm1(hi)), math.log(-math.expm1(lo))


def test_finite_n_away_examples():
    assert finite_n_away(100, 0.0, HALF) == 0.0
    assert finite_n_away(100, 1.0, HALF) == pytest.approx(math.log(0.5), rel=1e-12)
    assert abs(finite_n_away(2000, 0.5, HALF) - (-0.5 * LN2)) <= 0.01
    with pytest.raises(ValueError):
        finite_n_away(100, 1.5, HALF)


def test_finite_n_away_within_sandwich():
    n, x = 2000, 0.5
    k = math.ceil(n * x)
    lo, hi = sf_brackets(n, k, HALF)
    v = finite_n_away(n, x, HALF) * n
    assert lo - 1e-9 <= v <= hi + 1e-9


def test_finite_n_upper_near_within_sandwich():
    n, x = 10**3, 0.5
    ell = nominal_value(n, HALF)
    k = math.ceil((1.0 + x) * ell)
    lo, hi = sf_brackets(n, k, HALF)
    v = finite_n_upper_near(n, x, HALF) * ell
    assert lo - 1e-9 <= v <= hi + 1e-9


def test_finite_n_upper_near_gap_shrinks():
    for x in (0.5, 1.0):
        gaps = [
            abs(finite_n_upper_near(n, x, HALF) + x * LN2)
            for n in (10**3, 10**4, 10**5)
        ]
        assert gaps[0] >= gaps[1] >= gaps[2]


def test_finite_n_upper_near_impossible_event():
    # (1+x) ell(n) > n makes the event empty
    assert finite_n_upper_near(4, 30.0, HALF) == -math.inf
    with pytest.raises(DomainError):
        finite_n_upper_near(4, 30.0, HALF, allow_infinite=False)
    with pytest.raises(ValueError):
        finite_n_upper_near(100, 0.0, HALF)


def test_finite_n_lower_near_approaches_limit():
    # discretization of floor((1-x) ell) makes the path non-monotone, so only
    # a bracket around the limit is asserted
    for n in (10**4, 10**5, 10**6):
        v = finite_n_lower_near(n, 0.5, HALF)
        assert abs(v - 0.5 * LN2) < 0.2


def test_finite_n_lower_near_small_case_finite():
    v = finite_n_lower_near(10**3, 0.9, BernoulliModel(0.25))
    assert math.isfinite(v)


def test_finite_n_lower_near_validates():
    with pytest.raises(ValueError):
        finite_n_lower_near(100, 1.5, HALF)
    with pytest.raises(ValueError):
        finite_n_lower_near(100, 0.0, HALF)


def test_interval_full_event_is_zero():
    assert finite_n_interval_near(500, 0.0, 1e9, HALF) == 0.0


def test_interval_consistency_with_upper():
    for n in (10**3, 10**4):
        for x in (0.5, 1.0, 1.7):
            ell = nominal_value(n, HALF)
            a = finite_n_upper_near(n, x, HALF)
            b = finite_n_interval_near(n, 1.0 + x, n / ell + 1e-9, HALF)
            assert a == pytest.approx(b, rel=1e-10, abs=1e-12)


def test_interval_examples():
    v = finite_n_interval_near(10**4, 2.0, 3.0, HALF)
    assert abs(v + LN2) < 0.35
    # below-nominal window: strongly negative and decreasing in n
    v1 = finite_n_interval_near(10**4, 0.0, 0.5, HALF)
    v2 = finite_n_interval_near(10**5, 0.0, 0.5, HALF)
    assert v2 < v1 < -1.0


def test_interval_empty_event():
    # a window between consecutive integers at tiny n holds no integer
    assert finite_n_interval_near(4, 0.55, 0.56, HALF) == -math.inf
    with pytest.raises(ValueError):
        finite_n_interval_near(100, 2.0, 1.0, HALF)
