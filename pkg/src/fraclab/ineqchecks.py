"""Inequality checks for Theorems T1-T6, corollaries C1-C3 and remark R1.

Each theorem is evaluated in two variants:

``stated``
    the displayed inequality taken verbatim, typos included; a finding, not
    a rigor claim.
``chain``
    the intermediate inequality the proof actually establishes, with the
    right side obtained by direct quadrature of the bounding integrand.

Hypotheses are semantic properties of ``f`` and are checked by sampling.
When one fails the outcome is ``precondition_unmet`` and no verdict is
given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .fracops import CheckInstance, FracParams, caputo_left_estimate, caputo_right_estimate
from .identities import lemma1_residual, lemma2_residual
from .quadrature import QuadEstimate, integrate_endpoint_power, integrate_smooth
from .specfun import beta_fn, gamma_fn
from .testfuncs import is_m_convex, m_convex_on_pair

__all__ = [
    "CHECK_IDS",
    "VARIANTS",
    "VARIANTS_BY_CHECK",
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "CheckOutcome",
    "HOLDS",
    "FAILS",
    "INDETERMINATE",
    "PRECONDITION_UNMET",
    "classify",
    "holder_check",
    "theorem1_check",
    "theorem2_check",
    "theorem3_check",
    "theorem4_check",
    "theorem5_check",
    "theorem6_check",
    "corollary_check",
    "corollary2_limit_factors",
    "remark1_compare",
    "run_check",
]

CHECK_IDS = ("T1", "T2", "T3", "T4", "T5", "T6", "C1", "C2", "C3", "R1")
VARIANTS = ("stated", "chain")
# C1, C2 and R1 have no proof chain of their own
VARIANTS_BY_CHECK = {cid: VARIANTS for cid in ("T1", "T2", "T3", "T4", "T5", "T6", "C3")}
VARIANTS_BY_CHECK.update({"C1": ("stated",), "C2": ("stated",), "R1": ("stated",)})

HOLDS = "holds"
FAILS = "fails"
INDETERMINATE = "indeterminate"
PRECONDITION_UNMET = "precondition_unmet"

NONREAL_SIGN = "(-1)^alpha non-real for non-integer alpha"


@dataclass(frozen=True)
class Tolerances:
    quad: float = 1e-11
    identity: float = 1e-9
    residual: float = 1e-6
    status_abs: float = 1e-9
    status_rel: float = 1e-9
    grid: int = 41
    pair_grid: int = 1001
    positivity_samples: int = 1001


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class CheckOutcome:
    check_id: str
    variant: str
    lhs: float
    rhs: float
    margin: float
    status: str
    est_error: float
    instance: dict
    tight: bool = False
    reason: str | None = None
    details: dict = field(default_factory=dict)


def classify(lhs, rhs, tol=DEFAULT_TOLERANCES):
    """Return ``(margin, status, tight)`` for the inequality ``lhs <= rhs``."""
    margin = rhs - lhs
    threshold = tol.status_abs + tol.status_rel * max(abs(lhs), abs(rhs))
    status = HOLDS if margin >= -threshold else FAILS
    return margin, status, abs(margin) <= threshold


def _outcome(check_id, variant, lhs, rhs, est_error, instance, tol, reason=None, details=None):
    margin, status, tight = classify(lhs, rhs, tol)
    return CheckOutcome(check_id, variant, float(lhs), float(rhs), float(margin), status,
                        float(est_error), instance, tight, reason, details or {})


def _unmet(check_id, variant, instance, reason, details=None):
    nan = float("nan")
    return CheckOutcome(check_id, variant, nan, nan, nan, PRECONDITION_UNMET, 0.0,
                        instance, False, reason, details or {})


def _summary(instance):
    return instance.summary() if isinstance(instance, CheckInstance) else dict(instance)


def _check_variant(variant):
    if variant not in VARIANTS:
        raise DomainError(f"variant must be one of {VARIANTS}, got {variant!r}")


@lru_cache(maxsize=8192)
def _min_on(f, order, lo, hi, samples):
    ts = np.linspace(lo, hi, samples)
    return float(np.min(f.derivative(order)(ts)))


def _abs_power(g, q):
    return lambda t: np.abs(g(t)) ** q


@lru_cache(maxsize=8192)
def _pair_mconvex(f, order, q, x, y, m, grid):
    g = _abs_power(f.derivative(order), q) if q is not None else f.derivative(order)
    return m_convex_on_pair(g, x, y, m, grid)


@lru_cache(maxsize=2048)
def _region_mconvex(f, order, q, m, bound, grid):
    g = _abs_power(f.derivative(order), q) if q is not None else f.derivative(order)
    return is_m_convex(g, m, bound, grid).holds


def _mconvex_reason(f, order, q, x, y, m, tol):
    report = _pair_mconvex(f, order, q, float(x), float(y), float(m), tol.pair_grid)
    if report.holds:
        return None
    qty = f"|f^({order})|" + ("" if q in (None, 1) else f"^{q:g}")
    if q is None:
        qty = f"f^({order})"
    return (f"{qty} not {m:g}-convex along ({x:g}, {y:g}); witness {report.witness}, "
            f"violation {report.max_violation:.3e}")


def _region_flag(f, order, q, m, bound, tol):
    return {"region_m_convex": _region_mconvex(f, order, q, float(m), float(bound), tol.grid)}


def _fractional_reason(params):
    if params.mode != "fractional":
        return f"alpha={params.alpha:g} is an integer; theorem needs non-integer alpha"
    return None


def _abs_one_minus_2t(g, exponent, tol):
    """``int_0^1 |1-2t|**exponent g(t) dt`` split at the kink."""
    scale = 2.0 ** exponent
    left = integrate_endpoint_power(g, 0.0, 0.5, exponent, "upper", tol)
    right = integrate_endpoint_power(g, 0.5, 1.0, exponent, "lower", tol)
    return (left + right).scaled(scale)


def holder_check(f, g, interval, p, points=(), tol=DEFAULT_TOLERANCES):
    """``int |f g| <= (int |f|**p)**(1/p) (int |g|**q)**(1/q)`` on ``interval``.

    ``points`` are interior breakpoints where either factor has a kink.
    """
    p = float(p)
    if not p > 1.0:
        raise DomainError(f"Holder exponent p must exceed 1, got {p!r}", p)
    q = p / (p - 1.0)
    lo, hi = float(interval[0]), float(interval[1])
    cuts = [lo] + sorted(float(c) for c in points if lo < c < hi) + [hi]

    def integral(h):
        total = QuadEstimate(0.0, 0.0, 1)
        for u, v in zip(cuts[:-1], cuts[1:]):
            total = total + integrate_smooth(h, u, v, tol.quad)
        return total

    prod = integral(lambda t: np.abs(f(t) * g(t)))
    fp = integral(lambda t: np.abs(f(t)) ** p)
    gq = integral(lambda t: np.abs(g(t)) ** q)
    rhs = fp.value ** (1.0 / p) * gq.value ** (1.0 / q)
    err = prod.abs_error_estimate + fp.abs_error_estimate + gq.abs_error_estimate
    return _outcome("HOLDER", "chain", prod.value, rhs, err,
                    {"interval": [lo, hi], "p": p, "q": q}, tol)


def theorem1_check(instance, variant="chain", tol=DEFAULT_TOLERANCES):
    """Kernel AM-GM bound ``2 int f^(n) <= int [k**(s-1) + k**(1-s)] f^(n)``."""
    _check_variant(variant)
    summary = _summary(instance)
    params, f = instance.params, instance.f
    reason = _fractional_reason(params)
    if reason:
        return _unmet("T1", variant, summary, reason)
    a, b, x = params.a, params.b, instance.x
    if x is None or not a < x < b:
        return _unmet("T1", variant, summary, "T1 needs a < x < b")
    n, s = params.n, params.s
    if _min_on(f, n, a, b, tol.positivity_samples) <= 0.0:
        return _unmet("T1", variant, summary, f"f^({n}) > 0 fails on [a, b]")
    dn = f.derivative(n)
    total = integrate_smooth(dn, a, b, tol.quad)
    if variant == "stated":
        nan = float("nan")
        return CheckOutcome("T1", "stated", total.value, nan, nan, INDETERMINATE,
                            total.abs_error_estimate, summary, False, NONREAL_SIGN)
    parts = [
        integrate_endpoint_power(dn, a, x, s - 1.0, "upper", tol.quad),
        integrate_endpoint_power(dn, a, x, 1.0 - s, "upper", tol.quad),
        integrate_endpoint_power(dn, x, b, s - 1.0, "lower", tol.quad),
        integrate_endpoint_power(dn, x, b, 1.0 - s, "lower", tol.quad),
    ]
    rhs = parts[0] + parts[1] + parts[2] + parts[3]
    lhs = total.scaled(2.0)
    details = {
        "left_lhs": 2.0 * integrate_smooth(dn, a, x, tol.quad).value,
        "left_rhs": parts[0].value + parts[1].value,
        "right_lhs": 2.0 * integrate_smooth(dn, x, b, tol.quad).value,
        "right_rhs": parts[2].value + parts[3].value,
    }
    return _outcome("T1", "chain", lhs.value, rhs.value,
                    lhs.abs_error_estimate + rhs.abs_error_estimate, summary, tol, details=details)


def _caputo_pair(f, params, x, tol):
    # empty-interval limits at the endpoints are zero
    left = (caputo_left_estimate(f, params, x, tol) if x > params.a
            else QuadEstimate(0.0, 0.0, 1))
    right = (caputo_right_estimate(f, params, x, tol) if x < params.b
             else QuadEstimate(0.0, 0.0, 1))
    return left, right


def theorem2_check(instance, variant="chain", tol=DEFAULT_TOLERANCES):
    """AM-GM bound on ``int_a^b |x - t|**s dt`` against ``f^(n)``-weighted kernels."""
    _check_variant(variant)
    summary = _summary(instance)
    params, f = instance.params, instance.f
    reason = _fractional_reason(params)
    if reason:
        return _unmet("T2", variant, summary, reason)
    a, b, x = params.a, params.b, instance.x
    if x is None:
        return _unmet("T2", variant, summary, "T2 needs x in [a, b]")
    n, s = params.n, params.s
    low = _min_on(f, n, a, b, tol.positivity_samples)
    if variant == "chain" and low < 1.0:
        return _unmet("T2", variant, summary, f"f^({n}) >= 1 fails on [a, b] (min {low:.6g})")
    if variant == "stated" and low <= 0.0:
        return _unmet("T2", variant, summary, f"f^({n}) > 0 fails on [a, b]")
    lhs = ((x - a) ** (s + 1.0) + (b - x) ** (s + 1.0)) / (s + 1.0)
    if variant == "stated":
        left, right = _caputo_pair(f, params, x, tol.quad)
        g1 = gamma_fn(s + 1.0)
        sign = (-1.0) ** n
        rhs = 0.5 * g1 * (left.value + sign * right.value)
        err = 0.5 * g1 * (left.abs_error_estimate + right.abs_error_estimate)
        return _outcome("T2", "stated", lhs, rhs, err, summary, tol)
    dn = f.derivative(n)
    rhs = QuadEstimate(0.0, 0.0, 1)
    if x > a:
        rhs = rhs + integrate_endpoint_power(dn, a, x, s, "upper", tol.quad)
    if x < b:
        rhs = rhs + integrate_endpoint_power(dn, x, b, s, "lower", tol.quad)
    return _outcome("T2", "chain", lhs, rhs.value, rhs.abs_error_estimate, summary, tol)


def theorem3_check(instance, variant="chain", tol=DEFAULT_TOLERANCES):
    """Trapezoid bound from ``|f^(n+1)|`` m-convex."""
    _check_variant(variant)
    summary = _summary(instance)
    params, f, m = instance.params, instance.f, float(instance.m)
    reason = _fractional_reason(params)
    if reason:
        return _unmet("T3", variant, summary, reason)
    n, s, a, b = params.n, params.s, params.a, params.b
    reason = _mconvex_reason(f, n + 1, 1, a, b, m, tol)
    details = _region_flag(f, n + 1, 1, m, b, tol)
    if reason:
        return _unmet("T3", variant, summary, reason, details)
    ident = lemma1_residual(f, params, tol.identity)
    lhs = abs(ident.lhs)
    dn1 = f.derivative(n + 1)
    A = abs(float(dn1(a)))
    B = abs(float(dn1(b / m)))
    half = 0.5 * (b - a)
    if variant == "stated":
        rhs = half * (1.0 / (2.0 * (s + 1.0)) + 1.0 / (2.0 * (s + 2.0))) * (A + m * B)
        return _outcome("T3", "stated", lhs, rhs, ident.est_error, summary, tol, details=details)
    major = _abs_one_minus_2t(lambda t: t * A + m * (1.0 - t) * B, s, tol.quad)
    return _outcome("T3", "chain", lhs, half * major.value,
                    ident.est_error + half * major.abs_error_estimate, summary, tol, details=details)


def _step(name, lhs, rhs, tol):
    margin, status, tight = classify(lhs, rhs, tol)
    return {"step": name, "lhs": lhs, "rhs": rhs, "margin": margin, "status": status}


def _failed_steps(steps):
    bad = [st["step"] for st in steps if st["status"] != HOLDS]
    return f"chain step(s) failed: {', '.join(bad)}" if bad else None


def theorem4_check(instance, variant="chain", tol=DEFAULT_TOLERANCES):
    """Holder-type trapezoid bound from ``|f^(n+1)|**q`` m-convex."""
    _check_variant(variant)
    summary = _summary(instance)
    params, f, m, q = instance.params, instance.f, float(instance.m), instance.q
    if q is None:
        raise DomainError("T4 needs q > 1")
    q = float(q)
    p = instance.p
    reason = _fractional_reason(params)
    if reason:
        return _unmet("T4", variant, summary, reason)
    n, s, a, b = params.n, params.s, params.a, params.b
    reason = _mconvex_reason(f, n + 1, q, a, b, m, tol)
    details = _region_flag(f, n + 1, q, m, b, tol)
    if reason:
        return _unmet("T4", variant, summary, reason, details)
    ident = lemma1_residual(f, params, tol.identity)
    lhs = abs(ident.lhs)
    dn1 = f.derivative(n + 1)
    A = abs(float(dn1(a)))
    B = abs(float(dn1(b / m)))
    half = 0.5 * (b - a)
    if variant == "stated":
        rhs = ((b - a) / 2.0 ** (1.0 + 1.0 / q) * (1.0 / (p * s + 1.0)) ** (1.0 / p)
               * (A ** q + m * B ** q) ** (1.0 / q))
        return _outcome("T4", "stated", lhs, rhs, ident.est_error, summary, tol, details=details)

    def g(t):
        return np.abs(dn1(t * a + (1.0 - t) * b))

    modulus = _abs_one_minus_2t(g, s, tol.quad)
    holder = holder_check(lambda t: np.abs(1.0 - 2.0 * t) ** s, g, (0.0, 1.0), p, (0.5,), tol)
    kernel_p = _abs_one_minus_2t(lambda t: np.ones_like(t), p * s, tol.quad)
    power_q = integrate_smooth(lambda t: g(t) ** q, 0.0, 1.0, tol.quad)
    major = integrate_smooth(lambda t: t * A ** q + m * (1.0 - t) * B ** q, 0.0, 1.0, tol.quad)
    rhs = half * kernel_p.value ** (1.0 / p) * major.value ** (1.0 / q)
    steps = [
        _step("modulus", lhs, half * modulus.value, tol),
        _step("holder", holder.lhs, holder.rhs, tol),
        _step("m_convex", power_q.value, major.value, tol),
    ]
    details = dict(details, steps=steps)
    err = (ident.est_error + half * (modulus.abs_error_estimate + kernel_p.abs_error_estimate
                                     + major.abs_error_estimate))
    return _outcome("T4", "chain", lhs, rhs, err, summary, tol, _failed_steps(steps), details)


def _lemma2_setup(instance, check_id, variant):
    summary = _summary(instance)
    params = instance.params
    reason = _fractional_reason(params)
    if reason:
        return summary, reason
    if instance.y is None or instance.x is None or not instance.x < instance.y:
        return summary, f"{check_id} needs a <= x < y <= b"
    return summary, None


def theorem5_check(instance, variant="chain", tol=DEFAULT_TOLERANCES):
    """Bound on the right-sided identity for ``f^(n+1)`` m-convex."""
    _check_variant(variant)
    summary, reason = _lemma2_setup(instance, "T5", variant)
    if reason:
        return _unmet("T5", variant, summary, reason)
    params, f, m = instance.params, instance.f, float(instance.m)
    n, s, x, y = params.n, params.s, float(instance.x), float(instance.y)
    dn1 = f.derivative(n + 1)
    if variant == "chain":
        low = min(_min_on(f, n + 1, x, y, tol.positivity_samples), float(dn1(y / m)))
        if low < 0.0:
            return _unmet("T5", variant, summary, f"f^({n + 1}) >= 0 fails on [x, y] or at y/m")
    reason = _mconvex_reason(f, n + 1, None, x, y, m, tol)
    details = _region_flag(f, n + 1, None, m, y, tol)
    if reason:
        return _unmet("T5", variant, summary, reason, details)
    ident = lemma2_residual(f, params, x, y, tol.identity)
    if variant == "stated":
        rhs = float(f(x)) * (s / (s + 2.0)) * beta_fn(2.0, s) + m * float(f(y / m)) / (s + 1.0)
        return _outcome("T5", "stated", ident.lhs, rhs, ident.est_error, summary, tol, details=details)
    A = float(dn1(x))
    B = float(dn1(y / m))
    major = integrate_endpoint_power(lambda t: t * A + m * (1.0 - t) * B, 0.0, 1.0, s, "upper", tol.quad)
    return _outcome("T5", "chain", ident.lhs, major.value,
                    ident.est_error + major.abs_error_estimate, summary, tol, details=details)


def theorem6_check(instance, variant="chain", tol=DEFAULT_TOLERANCES, check_id="T6"):
    """Power-mean bound on the right-sided identity for ``|f^(n+1)|**q`` m-convex."""
    _check_variant(variant)
    if instance.q is None:
        raise DomainError(f"{check_id} needs q > 1")
    summary, reason = _lemma2_setup(instance, check_id, variant)
    if reason:
        return _unmet(check_id, variant, summary, reason)
    params, f, m = instance.params, instance.f, float(instance.m)
    q, p = float(instance.q), instance.p
    n, s, x, y = params.n, params.s, float(instance.x), float(instance.y)
    reason = _mconvex_reason(f, n + 1, q, x, y, m, tol)
    details = _region_flag(f, n + 1, q, m, y, tol)
    if reason:
        return _unmet(check_id, variant, summary, reason, details)
    ident = lemma2_residual(f, params, x, y, tol.identity)
    lhs = abs(ident.lhs)
    dn1 = f.derivative(n + 1)
    Aq = abs(float(dn1(x))) ** q
    Bq = abs(float(dn1(y / m))) ** q
    if variant == "stated":
        rhs = (1.0 / (s + 1.0)) ** (1.0 / p) * (Aq * beta_fn(2.0, s + 1.0) + m * Bq / (2.0 * s + 1.0)) ** (1.0 / q)
        return _outcome(check_id, "stated", lhs, rhs, ident.est_error, summary, tol, details=details)
    weight = integrate_endpoint_power(lambda t: np.ones_like(t), 0.0, 1.0, s, "upper", tol.quad)
    major = integrate_endpoint_power(lambda t: t * Aq + m * (1.0 - t) * Bq, 0.0, 1.0, s, "upper", tol.quad)
    rhs = weight.value ** (1.0 / p) * major.value ** (1.0 / q)

    def g(t):
        return np.abs(dn1(t * x + (1.0 - t) * y))

    weighted_abs = integrate_endpoint_power(g, 0.0, 1.0, s, "upper", tol.quad)
    weighted_q = integrate_endpoint_power(lambda t: g(t) ** q, 0.0, 1.0, s, "upper", tol.quad)
    steps = [
        _step("modulus", lhs, weighted_abs.value, tol),
        _step("power_mean", weighted_abs.value,
              weight.value ** (1.0 / p) * weighted_q.value ** (1.0 / q), tol),
        _step("m_convex", weighted_q.value, major.value, tol),
    ]
    details = dict(details, steps=steps)
    err = ident.est_error + weight.abs_error_estimate + major.abs_error_estimate
    return _outcome(check_id, "chain", lhs, rhs, err, summary, tol, _failed_steps(steps), details)


def _trapezoid_lhs(f, a, b):
    # alpha = 0 forces n = 1, so (-1)^n = -1
    return abs(0.5 * (float(f(a)) + float(f(b))) - (float(f(b)) - float(f(a))) / (2.0 * (b - a)))


def corollary_check(check_id, instance, variant="stated", tol=DEFAULT_TOLERANCES):
    """C1 and C2 evaluate their displays verbatim (report-only); C3 is T6 at
    ``x = a``, ``y = b``, ``m = 1``."""
    _check_variant(variant)
    params, f = instance.params, instance.f
    a, b = params.a, params.b
    if check_id == "C3":
        sub = replace(instance, x=a, y=b, m=1.0)
        return theorem6_check(sub, variant, tol, check_id="C3")
    if check_id not in ("C1", "C2"):
        raise DomainError(f"unknown corollary id {check_id!r}")
    if variant != "stated":
        raise DomainError(f"{check_id} has only a stated variant")
    summary = _summary(instance)
    d2 = f.derivative(2)
    A, B = abs(float(d2(a))), abs(float(d2(b)))
    lhs = _trapezoid_lhs(f, a, b)
    if check_id == "C1":
        rhs = (b - a) / 4.0 * (A + B)
        return _outcome("C1", "stated", lhs, rhs, 0.0, summary, tol,
                        "report-only: display evaluated verbatim with alpha=0, m=1")
    if instance.q is None:
        raise DomainError("C2 needs q > 1")
    q, p = float(instance.q), instance.p
    rhs = (b - a) / 2.0 ** (1.0 + 1.0 / q) / (p + 1.0) ** (1.0 / p) * (A ** q + B ** q) ** (1.0 / q)
    details = {"limit_rhs": (b - a) / 2.0 * (A + B)}
    return _outcome("C2", "stated", lhs, rhs, 0.0, summary, tol,
                    "report-only: display evaluated verbatim with alpha=0, m=1", details)


def corollary2_limit_factors(values=(10, 100, 1000)):
    """``(v, 1/(v+1)**(1/v), 1/2**(1+1/v))`` for each ``v``; tend to 1 and 1/2."""
    return [(float(v), 1.0 / (v + 1.0) ** (1.0 / v), 1.0 / 2.0 ** (1.0 + 1.0 / v)) for v in values]


def remark1_compare(A, B, width, instance=None):
    """``width/4 (A+B) <= width/2 (A+B)`` decided in exact rational arithmetic."""
    if A < 0 or B < 0:
        raise DomainError("R1 needs A, B >= 0")
    if not width > 0:
        raise DomainError("R1 needs width > 0")
    total = Fraction(A) + Fraction(B)
    lhs = Fraction(width) / 4 * total
    rhs = Fraction(width) / 2 * total
    margin = rhs - lhs
    status = HOLDS if lhs <= rhs else FAILS
    return CheckOutcome("R1", "stated", float(lhs), float(rhs), float(margin), status, 0.0,
                        instance or {"A": float(A), "B": float(B), "width": float(width)},
                        margin == 0)


_THEOREMS = {
    "T1": theorem1_check,
    "T2": theorem2_check,
    "T3": theorem3_check,
    "T4": theorem4_check,
    "T5": theorem5_check,
    "T6": theorem6_check,
}


def run_check(check_id, instance, variant="stated", tol=DEFAULT_TOLERANCES):
    """Dispatch by public check id."""
    if check_id in _THEOREMS:
        return _THEOREMS[check_id](instance, variant, tol)
    if check_id in ("C1", "C2", "C3"):
        return corollary_check(check_id, instance, variant, tol)
    if check_id == "R1":
        d2 = instance.f.derivative(2)
        a, b = instance.params.a, instance.params.b
        return remark1_compare(abs(float(d2(a))), abs(float(d2(b))), b - a, _summary(instance))
    raise DomainError(f"unknown check id {check_id!r}")
