from __future__ import annotations

import pytest

from fraclab.errors import DomainError
from fraclab.fracops import FracParams
from fraclab.identities import RESIDUAL_TOL, lemma1_residual, lemma2_residual
from fraclab.testfuncs import exponential, get_function, monomial, polynomial

ALPHAS = (0.25, 0.5, 0.75, 1.5, 2.5)


def _supports(f, order):
    return f.max_order is None or order <= f.max_order


def test_lemma1_constant_second_derivative_is_zero():
    res = lemma1_residual(monomial(2), FracParams(0.5, 0.0, 1.0))
    assert abs(res.lhs) <= 1e-9 and abs(res.rhs) <= 1e-9
    assert res.residual <= 1e-9


@pytest.mark.parametrize("f,alpha", [(monomial(3), 0.5), (monomial(4), 1.5)])
def test_lemma1_examples(f, alpha):
    res = lemma1_residual(f, FracParams(alpha, 0.0, 1.0))
    assert res.residual <= RESIDUAL_TOL
    assert res.residual >= 0.0 and res.est_error >= 0.0
    assert abs(res.lhs) > 1e-3  # a genuine nonzero identity, not 0 = 0


def test_lemma2_constant_case_closed_form():
    res = lemma2_residual(monomial(2), FracParams(0.5, 0.0, 1.0), 0.0, 1.0)
    assert abs(res.lhs - 2.0 / 1.5) <= 1e-9
    assert abs(res.rhs - 2.0 / 1.5) <= 1e-9
    assert res.residual <= 1e-9


@pytest.mark.parametrize("f,alpha,x,y", [(monomial(3), 0.5, 0.2, 0.9), (exponential(1.0), 0.75, 0.0, 1.0)])
def test_lemma2_examples(f, alpha, x, y):
    assert lemma2_residual(f, FracParams(alpha, 0.0, 1.0), x, y).residual <= RESIDUAL_TOL


def test_domain_errors():
    p = FracParams(0.5, 0.0, 1.0)
    with pytest.raises(DomainError):
        lemma2_residual(monomial(3), p, 0.5, 0.5)
    with pytest.raises(DomainError):
        lemma2_residual(monomial(3), p, 0.5, 1.5)
    with pytest.raises(DomainError):
        lemma1_residual(monomial(3), FracParams(1.0, 0.0, 1.0))


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("c", [0.5, 3.0])
def test_lemma2_constant_rate_equals_c_over_s_plus_one(alpha, c):
    # f^(n+1) = c exactly: f = c t^2 / 2
    f = polynomial([0.0, 0.0, c / 2.0])
    s = 1.0 - alpha
    res = lemma2_residual(f, FracParams(alpha, 0.5, 2.5), 0.9, 2.1)
    assert abs(res.lhs - c / (s + 1.0)) <= 1e-9
    assert abs(res.rhs - c / (s + 1.0)) <= 1e-9


@pytest.mark.parametrize("c", [2.0, 10.0])
@pytest.mark.parametrize("label", ["mono4", "exp2", "cubic"])
def test_scale_covariance(c, label):
    f = get_function(label)
    for alpha in ALPHAS:
        p = FracParams(alpha, 0.5, 2.5)
        base1, scaled1 = lemma1_residual(f, p), lemma1_residual(c * f, p)
        base2, scaled2 = lemma2_residual(f, p, 0.7, 2.3), lemma2_residual(c * f, p, 0.7, 2.3)
        for base, scaled in ((base1, scaled1), (base2, scaled2)):
            assert scaled.residual <= abs(c) * RESIDUAL_TOL
            assert scaled.lhs == pytest.approx(c * base.lhs, rel=1e-9, abs=1e-9)
            assert scaled.rhs == pytest.approx(c * base.rhs, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("offset", [0.5, 1.25, 3.0])
@pytest.mark.parametrize("label", ["mono3", "mono5", "exp1", "cubic"])
def test_lemma1_translation(offset, label):
    f = get_function(label)
    g = f.shifted(offset)
    for alpha in ALPHAS:
        base = lemma1_residual(f, FracParams(alpha, 0.0, 1.0))
        moved = lemma1_residual(g, FracParams(alpha, offset, 1.0 + offset))
        assert abs(moved.lhs - base.lhs) <= 1e-8
        assert abs(moved.rhs - base.rhs) <= 1e-8
