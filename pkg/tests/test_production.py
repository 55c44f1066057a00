import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ramsey_allee.errors import DomainError, NoSolutionError, ParameterError
from ramsey_allee.production import (
    Kind,
    ProductionSpec,
    average_product,
    curvature_gap,
    curvature_gap_critical_point,
    curvature_gap_slope,
    intensive_output,
    inverse_marginal,
    marginal_product,
    marginal_range,
    second_derivative,
)

mp.mp.dps = 40

FAMILIES = [
    ProductionSpec.ces(0.3, 0.01),
    ProductionSpec.ces(0.4, 0.5),
    ProductionSpec.ces(0.3, -0.5),
    ProductionSpec.cobb_douglas(0.3),
    ProductionSpec.cobb_douglas(0.5),
    ProductionSpec.log(),
    ProductionSpec.cara(),
]
IDS = [f"{s.kind.value}-{s.alpha}-{s.tau}" for s in FAMILIES]


def grid_for(spec, lo=1e-4, hi=1e4, size=81):
    # 1 - exp(-k) is flat to machine precision well before k = 1e4
    if spec.kind is Kind.CARA:
        hi = min(hi, 20.0)
    return np.geomspace(lo, hi, size)


def mp_f(spec, k):
    k = mp.mpf(k)
    if spec.kind is Kind.CES:
        a, t = mp.mpf(spec.alpha), mp.mpf(spec.tau)
        return (a * k ** t + 1 - a) ** (1 / t)
    if spec.kind is Kind.COBB_DOUGLAS:
        return k ** mp.mpf(spec.alpha)
    if spec.kind is Kind.LOG:
        return mp.log(1 + k)
    return 1 - mp.exp(-k)


# -- spec validation ----------------------------------------------------------------

@pytest.mark.parametrize("kwargs", [
    dict(kind=Kind.CES, alpha=0.3, tau=0.0),
    dict(kind=Kind.CES, alpha=0.3, tau=1.0),
    dict(kind=Kind.CES, alpha=0.3, tau=1.5),
    dict(kind=Kind.CES, alpha=0.0, tau=0.5),
    dict(kind=Kind.CES, alpha=1.0, tau=0.5),
    dict(kind=Kind.CES, alpha=0.3),
    dict(kind=Kind.COBB_DOUGLAS, alpha=1.2),
    dict(kind=Kind.COBB_DOUGLAS, alpha=0.3, tau=0.5),
    dict(kind=Kind.LOG, alpha=0.3),
    dict(kind=Kind.CARA, tau=0.1),
    dict(kind="Quadratic"),
])
def test_invalid_specs_rejected(kwargs):
    with pytest.raises(ParameterError):
        ProductionSpec(**kwargs)


def test_kind_accepts_string():
    assert ProductionSpec("Log").kind is Kind.LOG


# -- worked examples --------------------------------------------------------------

def test_log_output_at_log_steady_state():
    assert intensive_output(ProductionSpec.log(), 0.428571) == pytest.approx(0.356675, abs=1e-6)


def test_cara_output_at_zero():
    assert intensive_output(ProductionSpec.cara(), 0.0) == 0.0


def test_ces_output_at_one():
    assert intensive_output(ProductionSpec.ces(0.3, 0.01), 1.0) == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("spec", [ProductionSpec.cobb_douglas(0.3), ProductionSpec.log(),
                                  ProductionSpec.cara()])
def test_output_zero_at_origin(spec):
    assert intensive_output(spec, 0.0) == 0.0


def test_ces_origin_values():
    assert intensive_output(ProductionSpec.ces(0.3, 0.5), 0.0) == pytest.approx(0.7 ** 2)
    assert intensive_output(ProductionSpec.ces(0.3, -0.5), 0.0) == 0.0


def test_marginal_product_examples():
    assert marginal_product(ProductionSpec.log(), 0.428571) == pytest.approx(0.7, abs=1e-6)
    assert marginal_product(ProductionSpec.cara(), 0.356675) == pytest.approx(0.7, abs=1e-6)
    assert marginal_product(ProductionSpec.cobb_douglas(0.5), 1.0) == 0.5


def test_inverse_marginal_examples():
    assert inverse_marginal(ProductionSpec.log(), 0.7) == pytest.approx(0.428571, abs=1e-6)
    assert inverse_marginal(ProductionSpec.cara(), 0.95) == pytest.approx(0.051293, abs=1e-6)
    assert inverse_marginal(ProductionSpec.cara(), 1.0) == 0.0
    assert inverse_marginal(ProductionSpec.log(), 1.0) == 0.0


def test_average_product_examples():
    assert average_product(ProductionSpec.log(), 0.428571) == pytest.approx(0.832241, abs=1e-6)
    assert average_product(ProductionSpec.cobb_douglas(0.5), 4.0) == 0.5
    assert average_product(ProductionSpec.cara(), 1e-12) == pytest.approx(1.0, abs=1e-11)


def test_curvature_gap_examples():
    assert curvature_gap(ProductionSpec.log(), 0.428571) == pytest.approx(0.132241, abs=1e-6)
    # high-precision oracle for (1 - e^-k)/k - e^-k at k = 0.051293
    k = mp.mpf("0.051293")
    oracle = float((1 - mp.exp(-k)) / k - mp.exp(-k))
    assert curvature_gap(ProductionSpec.cara(), 0.051293) == pytest.approx(oracle, rel=1e-12)
    assert oracle == pytest.approx(0.0247861, abs=1e-7)


@pytest.mark.parametrize("alpha", [0.2, 0.3, 0.7])
@pytest.mark.parametrize("k", [0.01, 1.0, 37.5])
def test_cobb_douglas_gap_closed_form(alpha, k):
    spec = ProductionSpec.cobb_douglas(alpha)
    assert curvature_gap(spec, k) == pytest.approx((1 - alpha) * k ** (alpha - 1), rel=1e-12)


def test_critical_points():
    assert curvature_gap_critical_point(ProductionSpec.log()) == pytest.approx(2.16258, abs=1e-4)
    assert curvature_gap_critical_point(ProductionSpec.cara()) == pytest.approx(1.79328, abs=1e-4)
    assert curvature_gap_critical_point(ProductionSpec.cobb_douglas(0.3)) is None


@pytest.mark.parametrize("spec", [ProductionSpec.log(), ProductionSpec.cara()])
def test_critical_point_matches_mpmath(spec):
    def h(k):
        return mp_f(spec, k) / k - mp.diff(lambda x: mp_f(spec, x), k)

    oracle = mp.findroot(lambda k: mp.diff(h, k), 2.0)
    assert curvature_gap_critical_point(spec) == pytest.approx(float(oracle), abs=1e-7)
    assert abs(curvature_gap_slope(spec, float(oracle))) < 1e-10


# -- domain errors ------------------------------------------------------------------

@pytest.mark.parametrize("fn", [marginal_product, average_product, curvature_gap,
                                second_derivative])
def test_nonpositive_capital_rejected(fn):
    with pytest.raises(DomainError):
        fn(ProductionSpec.log(), 0.0)
    with pytest.raises(DomainError):
        fn(ProductionSpec.log(), -1.0)


def test_negative_output_argument_rejected():
    with pytest.raises(DomainError):
        intensive_output(ProductionSpec.cara(), -0.1)


@pytest.mark.parametrize("spec,y", [
    (ProductionSpec.log(), 1.2),
    (ProductionSpec.cara(), 0.0),
    (ProductionSpec.cobb_douglas(0.3), -0.1),
    (ProductionSpec.ces(0.3, -0.5), 0.3 ** (-1 / 0.5) * 1.01),
    (ProductionSpec.ces(0.4, 0.5), 0.4 ** 2 * 0.99),
])
def test_inverse_outside_range(spec, y):
    with pytest.raises(NoSolutionError):
        inverse_marginal(spec, y)


def test_marginal_ranges():
    assert marginal_range(ProductionSpec.log()) == (0.0, 1.0)
    lo, hi = marginal_range(ProductionSpec.ces(0.4, 0.5))
    assert lo == pytest.approx(0.16) and hi == math.inf


def test_array_inputs_map_elementwise():
    spec = ProductionSpec.ces(0.3, 0.01)
    ks = np.array([0.5, 1.0, 2.0])
    out = intensive_output(spec, ks)
    assert out.shape == (3,)
    assert out[1] == pytest.approx(1.0)
    assert np.allclose(out, [intensive_output(spec, float(k)) for k in ks], rtol=0, atol=0)


# -- invariants on grids -------------------------------------------------------------

@pytest.mark.parametrize("spec", FAMILIES, ids=IDS)
def test_output_matches_mpmath(spec):
    for k in grid_for(spec, size=25):
        assert intensive_output(spec, k) == pytest.approx(float(mp_f(spec, k)), rel=1e-12)


@pytest.mark.parametrize("spec", FAMILIES, ids=IDS)
def test_strict_concavity_finite_difference(spec):
    for k in grid_for(spec):
        h = 1e-3 * k
        d2 = (intensive_output(spec, k + h) - 2 * intensive_output(spec, k)
              + intensive_output(spec, k - h)) / h ** 2
        assert d2 < 0, k


@pytest.mark.parametrize("spec", FAMILIES, ids=IDS)
def test_marginal_product_consistency(spec):
    for k in grid_for(spec, lo=1e-3):
        h = 1e-6 * max(k, 1.0)
        fd = (intensive_output(spec, k + h) - intensive_output(spec, k - h)) / (2 * h)
        fp = marginal_product(spec, k)
        assert abs(fp - fd) <= 1e-6 * (1 + abs(fp)), k


@pytest.mark.parametrize("spec", FAMILIES, ids=IDS)
def test_second_derivative_matches_mpmath(spec):
    for k in grid_for(spec, lo=1e-2, hi=1e2, size=13):
        oracle = mp.diff(lambda x: mp_f(spec, x), mp.mpf(k), 2)
        assert second_derivative(spec, k) == pytest.approx(float(oracle), rel=1e-9)


@pytest.mark.parametrize("spec", FAMILIES, ids=IDS)
def test_curvature_gap_positive(spec):
    for k in grid_for(spec):
        assert curvature_gap(spec, k) > 0, k


@pytest.mark.parametrize("spec", FAMILIES, ids=IDS)
def test_inverse_round_trip(spec):
    for k in grid_for(spec, hi=1e3 if spec.kind is Kind.CES else 1e4):
        assert inverse_marginal(spec, marginal_product(spec, k)) == pytest.approx(k, rel=1e-9)


@pytest.mark.parametrize("spec", FAMILIES, ids=IDS)
def test_average_product_decreasing(spec):
    ap = average_product(spec, grid_for(spec))
    assert np.all(np.diff(ap) < 0)


@pytest.mark.parametrize("tau", [1e-6, -1e-6])
def test_ces_near_zero_tau_is_cobb_douglas(tau):
    ces, cd = ProductionSpec.ces(0.3, tau), ProductionSpec.cobb_douglas(0.3)
    for k in np.linspace(0.1, 10.0, 40):
        assert intensive_output(ces, k) == pytest.approx(intensive_output(cd, k), rel=1e-3)
        assert marginal_product(ces, k) == pytest.approx(marginal_product(cd, k), rel=1e-3)


def test_ces_large_tau_log_k_branch():
    # |tau ln k| > 1 takes the logaddexp branch; compare against mpmath there
    spec = ProductionSpec.ces(0.3, 0.5)
    for k in (1e-4, 1e3, 1e6):
        assert intensive_output(spec, k) == pytest.approx(float(mp_f(spec, k)), rel=1e-12)


# -- property tests -----------------------------------------------------------------

specs = st.one_of(
    st.builds(ProductionSpec.ces,
              st.floats(0.05, 0.95),
              st.one_of(st.floats(-3.0, -1e-3), st.floats(1e-3, 0.9))),
    st.builds(ProductionSpec.cobb_douglas, st.floats(0.05, 0.95)),
    st.just(ProductionSpec.log()),
    st.just(ProductionSpec.cara()),
)


@settings(max_examples=200, deadline=None)
@given(spec=specs, k=st.floats(1e-3, 1e3))
def test_gap_and_concavity_properties(spec, k):
    if spec.kind is Kind.CARA:
        k = min(k, 20.0)
    assert curvature_gap(spec, k) > 0
    assert second_derivative(spec, k) < 0
    assert marginal_product(spec, k) > 0


@settings(max_examples=200, deadline=None)
@given(spec=specs, k=st.floats(1e-2, 1e2))
def test_inverse_round_trip_property(spec, k):
    if spec.kind is Kind.CARA:
        k = min(k, 20.0)
    y = marginal_product(spec, k)
    k_back = inverse_marginal(spec, y)
    # conditioning of the inverse: relative error in k ~ eps |f'| / (k |f''|)
    cond = abs(y) / (k * abs(second_derivative(spec, k)))
    assert k_back == pytest.approx(k, rel=1e-9 * max(1.0, cond))
