"""Adaptive quadrature for smooth integrands and for integrands carrying a
weakly singular endpoint factor ``d**(s-1)``, ``0 < s < 1``.

Integrands are called with numpy arrays of nodes. Callables that only
accept scalars are detected and evaluated node by node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels_py import adaptive_gk
from .errors import DomainError
from .specfun import beta_fn

__all__ = [
    "DEFAULT_TOL",
    "QuadEstimate",
    "integrate_smooth",
    "integrate_weighted_endpoint",
    "integrate_endpoint_power",
    "kernel_moment",
]

DEFAULT_TOL = 1e-11


@dataclass(frozen=True)
class QuadEstimate:
    value: float
    abs_error_estimate: float
    nodes_used: int

    def __post_init__(self):
        if not (math.isfinite(self.abs_error_estimate) and self.abs_error_estimate >= 0.0):
            raise ValueError("abs_error_estimate must be finite and nonnegative")
        if self.nodes_used < 1:
            raise ValueError("nodes_used must be at least 1")

    def __add__(self, other):
        return QuadEstimate(self.value + other.value,
                            self.abs_error_estimate + other.abs_error_estimate,
                            self.nodes_used + other.nodes_used)

    def scaled(self, factor):
        return QuadEstimate(factor * self.value, abs(factor) * self.abs_error_estimate,
                            self.nodes_used)


def _as_vectorized(g):
    state = {}

    def call(t):
        if state.get("scalar"):
            return np.array([float(g(float(v))) for v in t.ravel()]).reshape(t.shape)
        try:
            out = np.asarray(g(t), dtype=float)
        except (TypeError, ValueError):
            state["scalar"] = True
            return call(t)
        if out.shape not in (t.shape, ()):
            state["scalar"] = True
            return call(t)
        return out

    return call


def _check_tol(tol):
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}", tol)


def integrate_smooth(g, lo, hi, tol=DEFAULT_TOL):
    """Integrate ``g`` over ``[lo, hi]`` by adaptive Gauss-Kronrod bisection."""
    lo = float(lo)
    hi = float(hi)
    _check_tol(tol)
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
        raise DomainError(f"need finite lo <= hi, got [{lo!r}, {hi!r}]", (lo, hi))
    f = _as_vectorized(g)
    if hi == lo:
        v = np.asarray(f(np.array([lo])), dtype=float)
        if not np.all(np.isfinite(v)):
            raise DomainError(f"integrand is not finite at t={lo!r}", lo)
        return QuadEstimate(0.0, 0.0, 1)
    value, err, nodes = adaptive_gk(f, lo, hi, tol)
    return QuadEstimate(value, err, nodes)


def _check_side(singular_end):
    if singular_end not in ("lower", "upper"):
        raise DomainError(f"singular_end must be 'lower' or 'upper', got {singular_end!r}")


def integrate_weighted_endpoint(g, lo, hi, s, singular_end="upper", tol=DEFAULT_TOL):
    """Integrate ``d(t)**(s-1) g(t)`` over ``[lo, hi]`` for ``0 < s < 1``.

    ``d`` is the distance to the singular endpoint. With ``u = d**s`` the
    integral becomes ``(1/s) * int_0^{(hi-lo)**s} g(end -/+ u**(1/s)) du``,
    whose integrand is bounded, and is handed to the smooth integrator.
    """
    s = float(s)
    if not 0.0 < s < 1.0:
        raise DomainError(f"weight exponent s must lie in (0, 1), got {s!r}", s)
    _check_side(singular_end)
    lo = float(lo)
    hi = float(hi)
    if hi < lo:
        raise DomainError(f"need lo <= hi, got [{lo!r}, {hi!r}]", (lo, hi))
    if hi == lo:
        return QuadEstimate(0.0, 0.0, 1)
    f = _as_vectorized(g)
    span = hi - lo
    inv_s = 1.0 / s
    upper = singular_end == "upper"

    def transformed(u):
        d = np.minimum(u ** inv_s, span)
        t = hi - d if upper else lo + d
        return inv_s * f(t)

    return integrate_smooth(transformed, 0.0, span ** s, tol)


def integrate_endpoint_power(g, lo, hi, exponent, singular_end="upper", tol=DEFAULT_TOL):
    """Integrate ``d(t)**exponent * g(t)`` for any ``exponent > -1``.

    The power is split as ``d**(sigma-1) * d**j`` with ``sigma`` in (0, 1]
    and integer ``j >= 0``; the integer part joins the smooth factor.
    """
    exponent = float(exponent)
    if not exponent > -1.0:
        raise DomainError(f"kernel exponent must exceed -1, got {exponent!r}", exponent)
    _check_side(singular_end)
    lo = float(lo)
    hi = float(hi)
    f = _as_vectorized(g)
    upper = singular_end == "upper"
    floor = math.floor(exponent)
    if exponent == floor:
        j = int(exponent)
        return integrate_smooth(lambda t: (hi - t if upper else t - lo) ** j * f(t), lo, hi, tol)
    sigma = exponent - floor
    j = int(floor) + 1
    if j == 0:
        return integrate_weighted_endpoint(f, lo, hi, sigma, singular_end, tol)
    return integrate_weighted_endpoint(
        lambda t: (hi - t if upper else t - lo) ** j * f(t), lo, hi, sigma, singular_end, tol)


def kernel_moment(a, x, s, k):
    """Closed form of ``int_a^x (x-t)**(s-1) (t-a)**k dt``."""
    a = float(a)
    x = float(x)
    if not a < x:
        raise DomainError(f"kernel moment needs a < x, got a={a!r}, x={x!r}", (a, x))
    if not 0.0 < s <= 1.0:
        raise DomainError(f"s must lie in (0, 1], got {s!r}", s)
    k = int(k)
    if k < 0:
        raise DomainError(f"moment order must be nonnegative, got {k}", k)
    return (x - a) ** (s + k) * beta_fn(k + 1, s)
