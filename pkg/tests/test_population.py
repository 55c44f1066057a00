import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ramsey_allee.errors import DomainError, ParameterError
from ramsey_allee.population import (
    AlleeParams,
    RegimeTag,
    classify_regime,
    crossing_time,
    growth_rate,
    integrate_population,
    labour_rhs,
)


def params(L0, r=0.025, N=1.0, M=2.0):
    return AlleeParams(r=r, N=N, M=M, L0=L0)


def phi(L, N, M):
    """Antiderivative of 1 / (L (1 - L/M) (L/N - 1)) by partial fractions."""
    return (-math.log(L) - N / (M - N) * math.log(abs(L - M))
            + M / (M - N) * math.log(abs(L - N)))


@pytest.mark.parametrize("bad", [
    dict(r=0.0, N=1, M=2, L0=1), dict(r=0.1, N=2, M=1, L0=1), dict(r=0.1, N=0, M=1, L0=1),
    dict(r=0.1, N=1, M=2, L0=0), dict(r=0.1, N=1, M=math.inf, L0=1),
])
def test_invalid_params(bad):
    with pytest.raises(ParameterError):
        AlleeParams(**bad)


def test_growth_rate_examples():
    p = params(1.0)
    assert growth_rate(p, 1.0) == 0.0
    assert growth_rate(p, 2.0) == 0.0
    assert growth_rate(p, 1.5) == pytest.approx(0.003125, rel=1e-15)


def test_growth_rate_domain():
    with pytest.raises(DomainError):
        growth_rate(params(1.0), 0.0)
    with pytest.raises(DomainError):
        growth_rate(params(1.0), np.array([1.0, -1.0]))


def test_fixed_points_exact():
    p = params(1.0, N=1.3, M=3.7)
    assert growth_rate(p, 1.3) == 0.0
    assert growth_rate(p, 3.7) == 0.0
    assert labour_rhs(p, 0.0) == 0.0


@given(L=st.floats(1e-6, 50.0))
def test_sign_pattern(L):
    p = params(1.0)
    n = growth_rate(p, L)
    if L < 1.0:
        assert n < 0
    elif 1.0 < L < 2.0:
        assert n > 0
    elif L > 2.0:
        assert n < 0


def test_regime_examples():
    r = 0.025
    below = classify_regime(params(0.5))
    assert below.tag is RegimeTag.BELOW_THRESHOLD and below.n_infinity == -r and below.eta == r
    fixed = classify_regime(params(1.0))
    assert fixed.tag is RegimeTag.FIXED and fixed.n_infinity == 0.0 and fixed.eta == 0.0
    above = classify_regime(params(3.0))
    assert above.tag is RegimeTag.ABOVE_CAPACITY and above.n_infinity == 0.0
    assert above.eta == pytest.approx(abs(growth_rate(params(3.0), 3.0)))
    assert classify_regime(params(2.0)).tag is RegimeTag.FIXED
    assert classify_regime(params(1.2)).tag is RegimeTag.MID_LOW
    assert classify_regime(params(1.5)).tag is RegimeTag.MID_LOW
    assert classify_regime(params(1.8)).tag is RegimeTag.MID_HIGH


def test_fixed_point_trajectory():
    path = integrate_population(params(1.0), t_end=500.0)
    assert np.all(path.L == 1.0)
    assert np.all(path.n == 0.0)


def test_below_threshold_decreasing_to_zero():
    path = integrate_population(params(0.5), t_end=2000.0)
    assert np.all(np.diff(path.L) < 0)
    assert path.L[-1] < 1e-9
    # n strictly decreasing along the path (n'(t) < 0 in this regime)
    assert np.all(np.diff(path.n) < 0)


def test_mid_regime_increasing_to_capacity():
    path = integrate_population(params(1.5), t_end=2000.0)
    assert np.all(np.diff(path.L) > 0)
    assert path.L[-1] == pytest.approx(2.0, abs=1e-9 * 2.0)


@pytest.mark.parametrize("L0,t_end", [(0.5, 300.0), (1.5, 300.0), (1.1, 600.0), (3.0, 300.0)])
def test_matches_implicit_closed_form(L0, t_end):
    p = params(L0, r=0.05)
    path = integrate_population(p, t_end=t_end, rtol=1e-12, atol=1e-15)
    for t, L in zip(path.t[1:], path.L[1:]):
        if abs(L - p.N) < 1e-9 or abs(L - p.M) < 1e-9:
            continue  # phi is singular at the fixed points
        assert (phi(L, p.N, p.M) - phi(L0, p.N, p.M)) / p.r == pytest.approx(t, rel=1e-6, abs=1e-6)


@pytest.mark.parametrize("L0,limit", [(0.5, 0.0), (0.99, 0.0), (1.01, 2.0), (1.9, 2.0), (4.0, 2.0)])
def test_regime_consistent_limits(L0, limit):
    path = integrate_population(params(L0, r=0.1), t_end=2000.0)
    assert abs(path.L[-1] - limit) <= 1e-9 * 2.0


@pytest.mark.parametrize("L0", [0.3, 0.9, 1.05, 1.5, 1.7, 1.99, 2.5, 10.0])
def test_eta_bounds_growth_rate(L0):
    p = params(L0, r=0.2)
    path = integrate_population(p, t_end=400.0)
    eta = classify_regime(p).eta
    assert np.all(np.abs(path.n) <= eta + 1e-12)


def test_cumulative_growth_matches_log_ratio():
    p = params(1.5)
    path = integrate_population(p, t_end=300.0)
    grid = np.linspace(0, 300, 31)
    assert np.allclose(path.cumulative_growth(grid), np.log(path.labour_at(grid) / 1.5),
                       rtol=0, atol=1e-7)


def test_crossing_time_examples():
    mid = 1.5
    assert crossing_time(params(mid), mid) == 0.0
    assert crossing_time(params(0.5), 1.5) is None
    t_bar = crossing_time(params(1.1), 1.5)
    assert t_bar > 0
    oracle = (phi(1.5, 1.0, 2.0) - phi(1.1, 1.0, 2.0)) / 0.025
    assert t_bar == pytest.approx(oracle, rel=1e-7)


def test_crossing_time_rejects_bad_level():
    with pytest.raises(DomainError):
        crossing_time(params(1.1), 0.0)


@settings(max_examples=30, deadline=None)
@given(L0=st.floats(0.05, 5.0), r=st.floats(0.01, 0.5))
def test_monotone_within_regime(L0, r):
    p = params(L0, r=r)
    path = integrate_population(p, t_end=100.0)
    d = np.diff(path.L)
    if L0 < 1.0 or L0 > 2.0:
        assert np.all(d <= 0)
    elif 1.0 < L0 < 2.0:
        assert np.all(d >= 0)
