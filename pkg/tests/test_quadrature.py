from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraclab.errors import ConvergenceError, DomainError
from fraclab.quadrature import (
    QuadEstimate,
    integrate_endpoint_power,
    integrate_smooth,
    integrate_weighted_endpoint,
    kernel_moment,
)
from fraclab.specfun import beta_fn

S_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)
K_GRID = range(7)
INTERVALS = ((0.0, 1.0), (0.5, 2.5))


def _oracle_cases():
    for lo, hi in INTERVALS:
        for s in S_GRID:
            for k in K_GRID:
                yield lo, hi, s, k


def _moment_integrand(a, k):
    return lambda t: (t - a) ** k


def test_quad_estimate_invariants():
    with pytest.raises(ValueError):
        QuadEstimate(1.0, -1.0, 1)
    with pytest.raises(ValueError):
        QuadEstimate(1.0, float("inf"), 1)
    with pytest.raises(ValueError):
        QuadEstimate(1.0, 0.0, 0)
    total = QuadEstimate(1.0, 1e-12, 15) + QuadEstimate(2.0, 2e-12, 15)
    assert total.value == 3.0 and total.nodes_used == 30
    assert math.isclose(total.abs_error_estimate, 3e-12)


def test_smooth_examples():
    assert abs(integrate_smooth(lambda t: t**2, 0.0, 1.0).value - 1.0 / 3.0) <= 1e-14
    assert abs(integrate_smooth(np.exp, 0.0, 1.0).value - (math.e - 1.0)) <= 1e-14
    empty = integrate_smooth(np.exp, 0.7, 0.7)
    assert empty.value == 0.0 and empty.abs_error_estimate == 0.0


def test_smooth_accepts_scalar_only_callable():
    est = integrate_smooth(lambda t: math.cos(t), 0.0, math.pi / 2)
    assert abs(est.value - 1.0) <= 1e-13


def test_smooth_rejects_reversed_bounds():
    with pytest.raises(DomainError):
        integrate_smooth(np.exp, 1.0, 0.0)


def test_smooth_nonfinite_is_domain_error():
    with pytest.raises(DomainError):
        integrate_smooth(lambda t: 1.0 / (t - 0.5) if t != 0.5 else float("nan"), 0.0, 1.0)
    with pytest.raises(DomainError):
        integrate_smooth(lambda t: np.full_like(t, np.inf), 0.0, 1.0)


def test_smooth_subdivision_limit():
    # far too oscillatory for the panel budget
    with pytest.raises(ConvergenceError):
        integrate_smooth(lambda t: np.sin(1e7 * t), 0.0, 1.0, tol=1e-13)


def test_weighted_examples():
    one = lambda t: np.ones_like(t)
    assert abs(integrate_weighted_endpoint(one, 0.0, 1.0, 0.5).value - 2.0) <= 1e-12
    moment = integrate_weighted_endpoint(lambda t: t, 0.0, 1.0, 0.5)
    assert abs(moment.value - beta_fn(2.0, 0.5)) <= 1e-12
    assert abs(moment.value - 4.0 / 3.0) <= 1e-12
    # s = 1 is the caller's plain integral
    assert abs(integrate_smooth(one, 0.0, 2.0).value - 2.0) <= 1e-14


@pytest.mark.parametrize("s", [0.0, 1.0, -0.2, 1.5])
def test_weighted_rejects_s_outside_unit_interval(s):
    with pytest.raises(DomainError):
        integrate_weighted_endpoint(np.exp, 0.0, 1.0, s)


def test_weighted_lower_end_matches_mirror():
    g = lambda t: np.exp(t) * (1.0 + t)
    lower = integrate_weighted_endpoint(g, 0.2, 1.7, 0.35, singular_end="lower")
    mirrored = integrate_weighted_endpoint(lambda u: g(1.9 - u), 0.2, 1.7, 0.35, singular_end="upper")
    assert abs(lower.value - mirrored.value) <= 1e-12 * abs(lower.value)


def test_kernel_moment_examples():
    assert kernel_moment(0.0, 1.0, 0.5, 0) == pytest.approx(2.0, rel=1e-15)
    assert kernel_moment(0.0, 1.0, 0.5, 1) == pytest.approx(4.0 / 3.0, rel=1e-14)
    assert kernel_moment(0.0, 2.0, 1.0, 0) == pytest.approx(2.0, rel=1e-15)
    with pytest.raises(DomainError):
        kernel_moment(1.0, 1.0, 0.5, 0)


@pytest.mark.parametrize("lo,hi,s,k", list(_oracle_cases()))
def test_weighted_matches_kernel_moment(lo, hi, s, k):
    est = integrate_weighted_endpoint(_moment_integrand(lo, k), lo, hi, s, singular_end="upper")
    exact = kernel_moment(lo, hi, s, k)
    assert abs(est.value - exact) <= 1e-10 * abs(exact)


def test_error_estimate_honesty():
    honest = 0
    cases = list(_oracle_cases())
    for lo, hi, s, k in cases:
        est = integrate_weighted_endpoint(_moment_integrand(lo, k), lo, hi, s, singular_end="upper")
        true_err = abs(est.value - kernel_moment(lo, hi, s, k))
        if true_err <= 10.0 * est.abs_error_estimate:
            honest += 1
    assert honest >= 0.95 * len(cases)


@pytest.mark.parametrize("exponent", [-0.7, -0.25, 0.0, 0.5, 1.3])
def test_endpoint_power_against_beta(exponent):
    # integral over [0, 2] of (2 - t)^e * t^2 = 2^(e + 3) B(3, e + 1)
    est = integrate_endpoint_power(lambda t: t**2, 0.0, 2.0, exponent)
    exact = 2.0 ** (exponent + 3.0) * beta_fn(3.0, exponent + 1.0)
    assert abs(est.value - exact) <= 1e-10 * exact


def test_endpoint_power_rejects_nonintegrable():
    with pytest.raises(DomainError):
        integrate_endpoint_power(np.exp, 0.0, 1.0, -1.0)


@given(
    st.floats(min_value=-2.0, max_value=2.0),
    st.floats(min_value=0.1, max_value=3.0),
    st.floats(min_value=0.01, max_value=0.99),
    st.floats(min_value=-2.0, max_value=2.0),
)
@settings(max_examples=100, deadline=None)
def test_additivity(lo, width, frac, lam):
    hi = lo + width
    c = lo + frac * width
    g = lambda t: np.exp(lam * t) * (1.0 + t * t)
    whole = integrate_smooth(g, lo, hi).value
    parts = integrate_smooth(g, lo, c).value + integrate_smooth(g, c, hi).value
    assert abs(whole - parts) <= 1e-10 * abs(whole)


def test_nodes_are_reproducible():
    g = lambda t: np.sin(5 * t) ** 2
    first = integrate_weighted_endpoint(g, 0.0, 2.0, 0.4)
    second = integrate_weighted_endpoint(g, 0.0, 2.0, 0.4)
    assert first == second
