from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraclab.errors import DomainError
from fraclab.specfun import beta_fn, gamma_fn, log_gamma

mpmath.mp.dps = 40


def test_gamma_factorials():
    assert gamma_fn(1.0) == 1.0
    assert gamma_fn(5.0) == 24.0
    assert gamma_fn(171.0) == float(math.factorial(170))


def test_gamma_half_against_mpmath():
    oracle = float(mpmath.gamma(mpmath.mpf(1) / 2))
    assert abs(gamma_fn(0.5) - oracle) <= 1e-12 * oracle
    assert abs(gamma_fn(0.5) - 1.772453850905516) <= 1e-14


@pytest.mark.parametrize("z", np.linspace(0.01, 50.0, 400))
def test_gamma_relative_error(z):
    oracle = float(mpmath.gamma(mpmath.mpf(float(z))))
    assert abs(gamma_fn(z) - oracle) <= 1e-12 * abs(oracle)


def test_log_gamma_large_argument():
    for z in (60.0, 250.0, 1000.5):
        oracle = float(mpmath.loggamma(mpmath.mpf(z)))
        assert abs(log_gamma(z) - oracle) <= 1e-12 * abs(oracle)


@pytest.mark.parametrize("z", [0.0, -1.0, -0.5, float("nan")])
def test_gamma_domain(z):
    with pytest.raises(DomainError):
        gamma_fn(z)


def test_beta_examples():
    assert abs(beta_fn(2, 1) - 0.5) <= 1e-15
    assert abs(beta_fn(2, 2) - 1.0 / 6.0) <= 1e-15
    oracle = float(mpmath.gamma(2) * mpmath.gamma(0.5) / mpmath.gamma(2.5))
    assert abs(beta_fn(2, 0.5) - oracle) <= 1e-12 * oracle
    assert abs(beta_fn(2, 0.5) - 4.0 / 3.0) <= 1e-12


@pytest.mark.parametrize("a,b", [(0.0, 1.0), (1.0, -2.0), (-0.5, -0.5)])
def test_beta_domain(a, b):
    with pytest.raises(DomainError):
        beta_fn(a, b)


def test_beta_large_arguments_do_not_overflow():
    oracle = float(mpmath.beta(30, 25))
    assert abs(beta_fn(30, 25) - oracle) <= 1e-11 * oracle


@given(st.floats(min_value=0.05, max_value=20.0))
def test_gamma_recurrence(z):
    lhs = gamma_fn(z + 1.0)
    assert abs(lhs - z * gamma_fn(z)) <= 1e-11 * lhs


@given(st.floats(min_value=0.05, max_value=25.0), st.floats(min_value=0.05, max_value=25.0))
@settings(max_examples=200)
def test_beta_symmetry_and_oracle(a, b):
    value = beta_fn(a, b)
    assert abs(value - beta_fn(b, a)) <= 1e-12 * value
    oracle = float(mpmath.beta(a, b))
    assert abs(value - oracle) <= 1e-11 * oracle


@pytest.mark.parametrize("s", [0.1, 0.25, 0.5, 0.75, 0.9])
def test_beta_shift_identity(s):
    lhs = beta_fn(2.0, s + 1.0)
    rhs = s / (s + 2.0) * beta_fn(2.0, s)
    assert abs(lhs - rhs) <= 1e-11 * lhs
