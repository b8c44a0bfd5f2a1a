"""Randomized structural properties of the trinomial roots."""

import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from trinomials import (
    TrinomialSpec,
    analyze,
    check_equispacing,
    check_monotone_modulus,
    count_outside_unit,
    rate_limit,
    real_brackets,
    solve,
)
from trinomials.analysis import max_discrepancy, on_curve

degrees = st.integers(4, 320)
params = st.floats(0.05, 2.0, allow_nan=False)
inner = st.sampled_from([1, 2, 4])

SLOW = settings(max_examples=40, deadline=None)


@SLOW
@given(degrees, params, inner)
def test_roots_lie_in_bracket_annulus(n, a, k):
    assume(k < n)
    spec = TrinomialSpec(n, a, k)
    rs = solve(spec)
    b = real_brackets(spec)
    assert np.all(rs.rho >= b.alpha - 1e-10) and np.all(rs.rho <= b.beta + 1e-10)


@SLOW
@given(degrees, params, inner)
def test_every_root_on_its_curve(n, a, k):
    assume(k < n)
    spec = TrinomialSpec(n, a, k)
    assert on_curve(solve(spec), spec).all()


@SLOW
@given(degrees, params)
def test_monotone_and_equispaced(n, a):
    rs = solve(TrinomialSpec(n, a))
    assert check_monotone_modulus(rs)
    assert check_equispacing(rs)


@SLOW
@given(degrees, params, inner)
def test_sector_discrepancy_below_bound(n, a, k):
    assume(k < n)
    dev, bound = max_discrepancy(solve(TrinomialSpec(n, a, k)))
    assert dev < bound
    assert math.isclose(bound, 16 * math.sqrt(n * math.log(2 + a)), rel_tol=1e-12)


@SLOW
@given(st.integers(100, 400), params)
def test_rate_sandwich(n, a):
    nu, _ = count_outside_unit(solve(TrinomialSpec(n, a)))
    assert abs(nu / n - rate_limit(a)) <= 2 / n + 0.02


@SLOW
@given(st.integers(2, 80), params, st.sampled_from([2, 4]))
def test_rotational_symmetry(m, a, k):
    # x^(km) - a x^k - 1 is invariant under x -> exp(2 pi i / k) x
    n = k * m
    assume(k < n)
    z = solve(TrinomialSpec(n, a, k)).roots
    w = np.exp(2j * np.pi / k) * z
    d = np.abs(w[:, None] - z[None, :]).min(axis=1)
    assert d.max() <= 1e-10 * max(1.0, np.abs(z).max())


@SLOW
@given(degrees, params, inner)
def test_analysis_report_consistent(n, a, k):
    assume(k < n)
    rep = analyze(TrinomialSpec(n, a, k))
    assert 0 <= rep.nu <= n and rep.rate == rep.nu / n
    assert rep.mahler >= 1.0 and rep.house >= rep.mahler ** (1 / n) * (1 - 1e-15)
    assert rep.max_polar_residual < 1e-8
