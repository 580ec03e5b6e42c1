"""Pure-Python (numpy) quadrature kernels.

This module is the reference implementation of the hot loops. The compiled
module ``_ckernels`` mirrors :func:`weighted_terms` node for node; the
selection between the two happens in :mod:`fraclab.kernels`.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, DomainError

# Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# 15 nodes ordered left to right; Gauss nodes sit at odd positions.
NODES = np.concatenate([-_XGK[:7], [0.0], _XGK[6::-1]])
KRONROD_W = np.concatenate([_WGK[:7], [_WGK[7]], _WGK[6::-1]])
GAUSS_W = np.zeros(15)
GAUSS_W[1::2] = np.concatenate([_WG[:3], [_WG[3]], _WG[2::-1]])

EPS = np.finfo(float).eps
ROUNDOFF_FACTOR = 50.0
MAX_DEPTH = 60
MAX_PANELS = 4000


def _panel_rules(fv, half):
    """Kronrod value and error estimate for each row of ``fv``."""
    kron = half * (fv @ KRONROD_W)
    gauss = half * (fv @ GAUSS_W)
    resabs = half * (np.abs(fv) @ KRONROD_W)
    err = np.maximum(np.abs(kron - gauss), ROUNDOFF_FACTOR * EPS * resabs)
    return kron, err, resabs


def _evaluate(func, pts):
    fv = np.asarray(func(pts), dtype=float)
    if fv.shape != pts.shape:
        fv = np.broadcast_to(fv, pts.shape).astype(float)
    bad = ~np.isfinite(fv)
    if bad.any():
        where = float(pts.flat[int(np.argmax(bad.ravel()))])
        raise DomainError(f"integrand is not finite at t={where!r}", where)
    return fv


def adaptive_gk(func, lo, hi, tol, max_depth=MAX_DEPTH, max_panels=MAX_PANELS):
    """Globally adaptive G7/K15 quadrature of a vectorized callable.

    Each step bisects the panel carrying the largest error estimate (first
    such panel in storage order, so the node sequence is deterministic).
    Returns ``(value, error_estimate, nodes_used)``; the value is the
    compensated sum of panel values taken left to right.
    """
    lo = float(lo)
    hi = float(hi)
    half = 0.5 * (hi - lo)
    center = 0.5 * (hi + lo)
    fv = _evaluate(func, (center + half * NODES)[None, :])
    kron, err, resabs = _panel_rules(fv, half)

    cap = 64
    left = np.empty(cap)
    right = np.empty(cap)
    vals = np.empty(cap)
    errs = np.empty(cap)
    absv = np.empty(cap)
    depth = np.empty(cap, dtype=np.int64)
    left[0], right[0], vals[0], errs[0], absv[0], depth[0] = lo, hi, kron[0], err[0], resabs[0], 0
    count = 1
    nodes = 15

    while True:
        total_err = math.fsum(errs[:count])
        target = max(tol, 1e2 * EPS * math.fsum(absv[:count]))
        if total_err <= target:
            break
        i = int(np.argmax(errs[:count]))
        if depth[i] >= max_depth:
            raise ConvergenceError(
                f"panel [{left[i]!r}, {right[i]!r}] reached depth {max_depth} "
                f"with error estimate {total_err:.3e} > {target:.3e}")
        if count >= max_panels:
            raise ConvergenceError(
                f"exceeded {max_panels} panels with error estimate {total_err:.3e} > {target:.3e}")
        a, b = left[i], right[i]
        mid = 0.5 * (a + b)
        h = 0.5 * (mid - a)
        centers = np.array([0.5 * (a + mid), 0.5 * (mid + b)])
        pts = centers[:, None] + h * NODES[None, :]
        fv = _evaluate(func, pts)
        kron, err, resabs = _panel_rules(fv, h)
        nodes += 30
        if count + 1 > cap:
            cap *= 2
            left = np.resize(left, cap)
            right = np.resize(right, cap)
            vals = np.resize(vals, cap)
            errs = np.resize(errs, cap)
            absv = np.resize(absv, cap)
            depth = np.resize(depth, cap)
        d = depth[i] + 1
        left[i], right[i], vals[i], errs[i], absv[i], depth[i] = a, mid, kron[0], err[0], resabs[0], d
        left[count], right[count], vals[count], errs[count], absv[count], depth[count] = (
            mid, b, kron[1], err[1], resabs[1], d)
        count += 1

    order = np.argsort(left[:count], kind="stable")
    value = math.fsum(vals[:count][order])
    return value, math.fsum(errs[:count]), nodes


def eval_terms(coefs, powers, rates, t):
    """Evaluate ``sum_i c_i t**r_i exp(lam_i t)`` at array ``t``."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for c, r, lam in zip(coefs, powers, rates):
        term = np.full_like(t, c)
        if r != 0.0:
            term = term * t ** r
        if lam != 0.0:
            term = term * np.exp(lam * t)
        out = out + term
    return out


def weighted_terms(coefs, powers, rates, lo, hi, s, upper, tol,
                   max_depth=MAX_DEPTH, max_panels=MAX_PANELS):
    """Integrate ``d(t)**(s-1) * sum_i c_i t**r_i exp(lam_i t)`` over [lo, hi].

    ``d`` is the distance to ``hi`` when ``upper`` is true and to ``lo``
    otherwise. The substitution ``u = d**s`` removes the endpoint
    singularity; ``s == 1`` reduces to the plain integral.
    """
    coefs = [float(c) for c in coefs]
    powers = [float(r) for r in powers]
    rates = [float(lam) for lam in rates]
    if hi <= lo or not coefs:
        return 0.0, 0.0, 1
    inv_s = 1.0 / s
    span = hi - lo
    end = hi if upper else lo
    sign = -1.0 if upper else 1.0

    def integrand(u):
        d = np.minimum(u ** inv_s, span)
        t = end + sign * d
        return inv_s * eval_terms(coefs, powers, rates, t)

    return adaptive_gk(integrand, 0.0, span ** s, tol, max_depth, max_panels)
