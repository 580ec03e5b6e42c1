"""Caputo fractional derivatives and the Riemann-Liouville fractional integral.

For non-integer ``alpha`` with ``n = floor(alpha) + 1`` and ``s = n - alpha``::

    left:  (1/Gamma(s))       int_a^x (x - t)**(s-1) f^(n)(t) dt
    right: ((-1)**n/Gamma(s)) int_x^b (t - x)**(s-1) f^(n)(t) dt

``alpha = 0`` and positive integer ``alpha`` are handled as explicit
reduction modes rather than limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .errors import DomainError
from .quadrature import (
    DEFAULT_TOL,
    QuadEstimate,
    integrate_smooth,
    integrate_weighted_endpoint,
)
from .specfun import gamma_fn

__all__ = [
    "FracParams",
    "CheckInstance",
    "caputo_left",
    "caputo_right",
    "caputo_left_estimate",
    "caputo_right_estimate",
    "rl_integral",
    "verify_caputo_rl_relation",
]


@dataclass(frozen=True)
class FracParams:
    alpha: float
    a: float
    b: float

    def __post_init__(self):
        alpha = float(self.alpha)
        if not (math.isfinite(alpha) and alpha >= 0.0):
            raise DomainError(f"alpha must be a finite real >= 0, got {self.alpha!r}", self.alpha)
        if not float(self.a) < float(self.b):
            raise DomainError(f"interval needs a < b, got ({self.a!r}, {self.b!r})")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    @property
    def mode(self):
        if self.alpha == 0.0:
            return "zero"
        if self.alpha.is_integer():
            return "integer"
        return "fractional"

    @property
    def n(self):
        if self.mode == "zero":
            return 1
        if self.mode == "integer":
            return int(self.alpha)
        return math.floor(self.alpha) + 1

    @property
    def s(self):
        return self.n - self.alpha

    @property
    def interval(self):
        return (self.a, self.b)

    def with_interval(self, a, b):
        return FracParams(self.alpha, a, b)


@dataclass(frozen=True)
class CheckInstance:
    """One theorem evaluation point. ``p`` is the conjugate of ``q``."""

    f: object
    params: FracParams
    x: float | None = None
    y: float | None = None
    m: float = 1.0
    q: float | None = None

    def __post_init__(self):
        a, b = self.params.interval
        if self.x is not None and not a <= self.x <= b:
            raise DomainError(f"x={self.x!r} outside [{a!r}, {b!r}]", self.x)
        if self.y is not None:
            if self.x is None or not self.x < self.y <= b:
                raise DomainError(f"need x < y <= b, got x={self.x!r}, y={self.y!r}")
        if not 0.0 < float(self.m) <= 1.0:
            raise DomainError(f"m must lie in (0, 1], got {self.m!r}", self.m)
        if self.q is not None and not float(self.q) > 1.0:
            raise DomainError(f"q must exceed 1, got {self.q!r}", self.q)

    @property
    def p(self):
        return None if self.q is None else self.q / (self.q - 1.0)

    def summary(self):
        return {
            "label": self.f.label,
            "alpha": self.params.alpha,
            "a": self.params.a,
            "b": self.params.b,
            "x": self.x,
            "y": self.y,
            "m": self.m,
            "q": self.q,
        }


def _fractional_integral(f, params, lo, hi, upper, tol):
    deriv = f.derivative(params.n)
    if deriv.is_zero():
        return QuadEstimate(0.0, 0.0, 1)
    c, r, lam = deriv.term_arrays()
    value, err, nodes = kernels.weighted_terms(c, r, lam, lo, hi, params.s, upper, tol)
    return QuadEstimate(value, err, nodes).scaled(1.0 / gamma_fn(params.s))


def caputo_left_estimate(f, params, x, tol=DEFAULT_TOL):
    """Left-sided Caputo derivative at ``x`` with its quadrature error estimate."""
    x = float(x)
    if not params.a < x:
        raise DomainError(f"left Caputo derivative needs x > a, got x={x!r}, a={params.a!r}", x)
    if x > params.b:
        raise DomainError(f"x={x!r} beyond b={params.b!r}", x)
    if params.mode == "zero":
        return integrate_smooth(f.derivative(1), params.a, x, tol)
    if params.mode == "integer":
        return QuadEstimate(float(f.derivative(params.n)(x)), 0.0, 1)
    return _fractional_integral(f, params, params.a, x, True, tol)


def caputo_right_estimate(f, params, x, tol=DEFAULT_TOL):
    """Right-sided Caputo derivative at ``x`` with its quadrature error estimate."""
    x = float(x)
    if not x < params.b:
        raise DomainError(f"right Caputo derivative needs x < b, got x={x!r}, b={params.b!r}", x)
    if x < params.a:
        raise DomainError(f"x={x!r} below a={params.a!r}", x)
    sign = (-1.0) ** params.n
    if params.mode == "zero":
        return integrate_smooth(f.derivative(1), x, params.b, tol).scaled(sign)
    if params.mode == "integer":
        return QuadEstimate(sign * float(f.derivative(params.n)(x)), 0.0, 1)
    return _fractional_integral(f, params, x, params.b, False, tol).scaled(sign)


def caputo_left(f, params, x, tol=DEFAULT_TOL):
    return caputo_left_estimate(f, params, x, tol).value


def caputo_right(f, params, x, tol=DEFAULT_TOL):
    return caputo_right_estimate(f, params, x, tol).value


def rl_integral(g, sigma, side, x, endpoint, tol=DEFAULT_TOL, full_output=False):
    """Riemann-Liouville fractional integral of order ``sigma`` in (0, 1].

    ``side="left"`` integrates from ``endpoint = a`` up to ``x`` with kernel
    ``(x - t)**(sigma-1)``; ``side="right"`` from ``x`` up to
    ``endpoint = b`` with ``(t - x)**(sigma-1)``.
    """
    sigma = float(sigma)
    if not 0.0 < sigma <= 1.0:
        raise DomainError(f"sigma must lie in (0, 1], got {sigma!r}", sigma)
    x = float(x)
    endpoint = float(endpoint)
    if side == "left":
        if not endpoint < x:
            raise DomainError(f"left integral needs x > a, got x={x!r}, a={endpoint!r}", x)
        lo, hi, singular = endpoint, x, "upper"
    elif side == "right":
        if not x < endpoint:
            raise DomainError(f"right integral needs x < b, got x={x!r}, b={endpoint!r}", x)
        lo, hi, singular = x, endpoint, "lower"
    else:
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    if sigma == 1.0:
        est = integrate_smooth(g, lo, hi, tol)
    else:
        est = integrate_weighted_endpoint(g, lo, hi, sigma, singular, tol).scaled(1.0 / gamma_fn(sigma))
    return est if full_output else est.value


def verify_caputo_rl_relation(f, params, x, tol=DEFAULT_TOL):
    """Sum of the left and right discrepancies between the Caputo derivative
    and the RL integral of ``f^(n)`` of order ``n - alpha``."""
    if params.mode != "fractional":
        raise DomainError(f"relation check needs non-integer alpha, got {params.alpha!r}")
    x = float(x)
    if not params.a < x < params.b:
        raise DomainError(f"x={x!r} must be interior to ({params.a!r}, {params.b!r})", x)
    deriv = f.derivative(params.n)
    if deriv.is_zero():
        return 0.0
    left = caputo_left(f, params, x, tol)
    right = caputo_right(f, params, x, tol)
    rl_left = rl_integral(deriv, params.s, "left", x, params.a, tol)
    rl_right = rl_integral(deriv, params.s, "right", x, params.b, tol)
    return abs(left - rl_left) + abs(right - (-1.0) ** params.n * rl_right)
