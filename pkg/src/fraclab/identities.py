"""Residuals of the two equalities underlying the trapezoid-type bounds.

Both sides are evaluated independently: the left side through the Caputo
operators, the right side by direct quadrature of ``f^(n+1)`` against the
polynomial-type weight on ``[0, 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .fracops import FracParams, caputo_left_estimate, caputo_right_estimate
from .quadrature import integrate_endpoint_power
from .specfun import gamma_fn

__all__ = ["IdentityResidual", "lemma1_residual", "lemma2_residual", "IDENTITY_TOL", "RESIDUAL_TOL"]

IDENTITY_TOL = 1e-9  # quadrature tolerance for identity sides
RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class IdentityResidual:
    lhs: float
    rhs: float
    residual: float
    est_error: float


def _require_fractional(params):
    if params.mode != "fractional":
        raise DomainError(f"identity needs non-integer alpha > 0, got {params.alpha!r}")


@lru_cache(maxsize=4096)
def _lemma1(f, params, tol):
    _require_fractional(params)
    n, s = params.n, params.s
    a, b = params.a, params.b
    dn = f.derivative(n)
    dn1 = f.derivative(n + 1)
    left = caputo_left_estimate(f, params, b, tol)
    right = caputo_right_estimate(f, params, a, tol)
    coef = gamma_fn(s + 1.0) / (2.0 * (b - a) ** s)
    sign = (-1.0) ** n
    lhs = 0.5 * (dn(a) + dn(b)) - coef * (left.value + sign * right.value)
    lhs_err = coef * (left.abs_error_estimate + right.abs_error_estimate)

    def g(t):
        return dn1(t * a + (1.0 - t) * b)

    # weight (1-t)^s - t^s; each power is singular-in-derivative at one end
    first = integrate_endpoint_power(g, 0.0, 1.0, s, "upper", tol)
    second = integrate_endpoint_power(g, 0.0, 1.0, s, "lower", tol)
    half = 0.5 * (b - a)
    rhs = half * (first.value - second.value)
    rhs_err = half * (first.abs_error_estimate + second.abs_error_estimate)
    return IdentityResidual(lhs, rhs, abs(lhs - rhs), lhs_err + rhs_err)


def lemma1_residual(f, params, tol=IDENTITY_TOL):
    """Trapezoid identity on ``[a, b]``.

    ``lhs = (f^(n)(a) + f^(n)(b))/2 - Gamma(s+1)/(2 (b-a)**s) *
    [D_left f(b) + (-1)**n D_right f(a)]`` and
    ``rhs = (b-a)/2 * int_0^1 [(1-t)**s - t**s] f^(n+1)(t a + (1-t) b) dt``.
    """
    return _lemma1(f, params, float(tol))


@lru_cache(maxsize=4096)
def _lemma2(f, params, x, y, tol):
    _require_fractional(params)
    if not params.a <= x < y <= params.b:
        raise DomainError(f"need a <= x < y <= b, got x={x!r}, y={y!r}", (x, y))
    n, s = params.n, params.s
    sub = FracParams(params.alpha, x, y)
    right = caputo_right_estimate(f, sub, x, tol)
    width = y - x
    coef = (-1.0) ** n * gamma_fn(s + 1.0) / width ** (s + 1.0)
    lhs = float(f.derivative(n)(y)) / width - coef * right.value
    lhs_err = abs(coef) * right.abs_error_estimate
    dn1 = f.derivative(n + 1)
    rhs_est = integrate_endpoint_power(lambda t: dn1(t * x + (1.0 - t) * y), 0.0, 1.0, s, "upper", tol)
    return IdentityResidual(lhs, rhs_est.value, abs(lhs - rhs_est.value),
                            lhs_err + rhs_est.abs_error_estimate)


def lemma2_residual(f, params, x, y, tol=IDENTITY_TOL):
    """Right-sided identity on ``[x, y]``, the Caputo operator taken over ``[x, y]``.

    ``lhs = f^(n)(y)/(y-x) - (-1)**n Gamma(s+1)/(y-x)**(s+1) * D_right f(x)``,
    ``rhs = int_0^1 (1-t)**s f^(n+1)(t x + (1-t) y) dt``.
    """
    x = float(x)
    y = float(y)
    if not x < y:
        raise DomainError(f"lemma2 needs x < y, got x={x!r}, y={y!r}", (x, y))
    return _lemma2(f, params, x, y, float(tol))
