import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import solved
from oracles import catalan_alternating
from trinomials import (
    DomainError,
    TrinomialSpec,
    clausen,
    limit_report,
    mahler_measure,
    measure_limit_extended,
    measure_limit_maillot,
    measure_limit_quadrature,
    rate_limit,
    solve,
)
from trinomials.limits import QuadratureInfo, gauss_legendre_adaptive

LIMIT_AT_ONE = 1.3813564


def test_rate_limit_values():
    assert rate_limit(1.0) == pytest.approx(2 / 3, abs=1e-15)
    assert rate_limit(2.0) == 1.0
    assert rate_limit(0.9) == pytest.approx(0.64858, abs=5e-6)
    assert rate_limit(1e-12) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("bad", [0.0, -0.5, 2.0001, float("nan")])
def test_rate_limit_domain(bad):
    with pytest.raises(DomainError):
        rate_limit(bad)
    with pytest.raises(DomainError):
        measure_limit_quadrature(bad)
    with pytest.raises(DomainError):
        measure_limit_maillot(bad)


def test_measure_limit_table_values():
    assert measure_limit_quadrature(1.3) == pytest.approx(1.5294116, abs=5e-7)
    assert measure_limit_quadrature(1.0) == pytest.approx(LIMIT_AT_ONE, abs=5e-8)
    assert measure_limit_maillot(0.7) == pytest.approx(1.2515544, abs=1e-6)


def test_measure_limit_at_two():
    assert measure_limit_maillot(2.0) == pytest.approx(2.0, abs=1e-15)
    assert measure_limit_quadrature(2.0) == pytest.approx(2.0, abs=1e-12)


def test_measure_limit_vanishing_a():
    assert measure_limit_quadrature(1e-8) == pytest.approx(1.0, abs=1e-7)
    assert measure_limit_maillot(1e-8) == pytest.approx(1.0, abs=1e-7)


def test_limit_at_one_five_decimals():
    # printed as 1.38135... : truncated, not rounded
    for value in (measure_limit_quadrature(1.0), measure_limit_maillot(1.0)):
        assert math.floor(value * 1e5) / 1e5 == pytest.approx(1.38135, abs=1e-12)


def test_cross_method_agreement_grid():
    grid = np.linspace(0.01, 2.0, 200)
    delta = [abs(measure_limit_quadrature(a, 1e-12) - measure_limit_maillot(a)) for a in grid]
    assert max(delta) <= 1e-9


def test_limit_report_fields():
    rep = limit_report(1.0)
    assert rep.cross_delta <= 1e-9
    assert rep.method["panels"] > 0 and rep.method["clausen_terms"] == 30
    assert rep.to_dict()["a"] == 1.0


def test_limits_strictly_increasing():
    grid = np.linspace(0.005, 2.0, 400)
    r = [rate_limit(a) for a in grid]
    m = [measure_limit_quadrature(a) for a in grid]
    assert np.all(np.diff(r) > 0) and np.all(np.diff(m) > 0)


def test_measure_limit_against_mpmath_integral():
    for a in (0.25, 1.0, 1.75):
        with mpmath.workdps(30):
            ref = mpmath.quad(lambda t: mpmath.log(1 + a * a + 2 * a * mpmath.cos(t)),
                              [0, mpmath.acos(-a / 2)]) / (2 * mpmath.pi)
        assert measure_limit_quadrature(a) == pytest.approx(math.exp(float(ref)), abs=1e-13)


# --- quadrature --------------------------------------------------------------

def test_quadrature_polynomial_exact():
    info = QuadratureInfo()
    val = gauss_legendre_adaptive(lambda x: x**7 - 3 * x**2, -1.0, 2.0, 1e-10, info=info)
    assert val == pytest.approx((2**8 - 1) / 8 - (8 + 1), abs=1e-13)
    assert info.panels == 2


def test_quadrature_refines_difficult_integrand():
    info = QuadratureInfo()
    val = gauss_legendre_adaptive(np.sqrt, 0.0, 1.0, 1e-12, info=info)
    assert val == pytest.approx(2 / 3, abs=1e-11)
    assert info.panels > 2


def test_quadrature_tolerance_must_be_positive():
    with pytest.raises(DomainError):
        gauss_legendre_adaptive(np.cos, 0.0, 1.0, 0.0)


# --- Clausen function --------------------------------------------------------

def test_clausen_special_values():
    assert clausen(0.0) == 0.0
    assert clausen(math.pi) == 0.0
    assert clausen(2 * math.pi) == 0.0
    assert clausen(math.pi / 2) == pytest.approx(catalan_alternating(200_000), abs=1e-13)


def test_clausen_against_mpmath():
    theta = np.linspace(-7.0, 7.0, 281)
    ours = clausen(theta)
    ref = np.array([float(mpmath.clsin(2, t)) for t in theta])
    np.testing.assert_allclose(ours, ref, atol=5e-14)


def test_clausen_vectorized_shape():
    assert clausen(np.zeros((2, 3))).shape == (2, 3)
    assert isinstance(clausen(1.0), float)


@given(st.floats(0.001, math.pi - 0.001))
def test_clausen_duplication(theta):
    lhs = clausen(2 * theta)
    rhs = 2 * clausen(theta) - 2 * clausen(math.pi - theta)
    assert abs(lhs - rhs) <= 1e-11


@given(st.floats(-20, 20))
def test_clausen_odd_and_periodic(theta):
    assert clausen(-theta) == pytest.approx(-clausen(theta), abs=1e-13)
    assert clausen(theta + 2 * math.pi) == pytest.approx(clausen(theta), abs=1e-12)


# --- extended parameters -----------------------------------------------------

def test_extended_large_modulus():
    ext = measure_limit_extended(3.0)
    assert ext.value == 3.0 and ext.regime == "large-modulus"
    assert measure_limit_extended(-4.0).value == 4.0


def test_extended_finite_n_large_modulus():
    assert abs(mahler_measure(solve(TrinomialSpec(100, 3.0))) - 3.0) <= 1e-3


def test_extended_complex():
    ext = measure_limit_extended(1j)
    assert ext.value == pytest.approx(LIMIT_AT_ONE, abs=5e-8)
    assert ext.regime == "complex" and ext.diagnostics
    assert not measure_limit_extended(1j, rational_angle=True).diagnostics


def test_complex_a_matches_rotated_trinomial():
    # x = -i t maps x^n - i x - 1 onto t^n - t - 1 when 4 | n
    m_complex = mahler_measure(solve(TrinomialSpec(300, 1j)))
    assert m_complex == pytest.approx(mahler_measure(solved(300, 1.0)), rel=1e-10)
    assert abs(m_complex - LIMIT_AT_ONE) < 1e-5


def test_extended_zero_is_degenerate():
    ext = measure_limit_extended(0.0)
    assert ext.value == 1.0 and ext.degenerate and ext.regime == "zero"


def test_extended_negative():
    ext = measure_limit_extended(-1.0)
    assert ext.regime == "negative"
    assert ext.value == pytest.approx(LIMIT_AT_ONE, abs=5e-8)
    # even n: x -> -x turns x^n + x - 1 into x^n - x - 1
    assert mahler_measure(solve(TrinomialSpec(100, -1.0))) == pytest.approx(
        mahler_measure(solved(100, 1.0)), rel=1e-10)


def test_finite_n_convergence_for_a1():
    dist = [abs(mahler_measure(solved(n, 1.0)) - LIMIT_AT_ONE) for n in (50, 100, 150, 300)]
    assert all(x > y for x, y in zip(dist, dist[1:]))


@pytest.mark.parametrize("a", [round(0.1 * i, 1) for i in range(1, 21)])
def test_finite_n_rate_near_limit(a):
    for n in (100, 150, 300):
        nu = np.count_nonzero(solved(n, a).rho > 1 + 1e-10)
        assert abs(nu / n - rate_limit(a)) <= 2 / n + 0.02


@pytest.mark.parametrize("a", [round(0.1 * i, 1) for i in range(1, 21)])
def test_finite_n_measure_within_envelope(a):
    # the deviation oscillates in n, so only an O(1/n) envelope holds for every a
    limit = measure_limit_quadrature(a)
    for n in (50, 100, 150, 300):
        assert abs(mahler_measure(solved(n, a)) - limit) <= 0.05 / n


def test_reference_table_is_not_monotone_in_n(reference_table):
    row = next(r for r in reference_table if r["a"] == "0.1")
    lim = float(row["measure_limit"])
    assert abs(float(row["mahler_n100"]) - lim) < abs(float(row["mahler_n150"]) - lim)
