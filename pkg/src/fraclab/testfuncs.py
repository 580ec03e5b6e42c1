"""Closed-form test functions and a grid-based m-convexity checker.

A :class:`FunctionSpec` is a finite sum of terms ``c * t**r * exp(lam*t)``
on the half-line ``[0, inf)``. The family is closed under differentiation,
so every derivative used downstream is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapabilityError, DomainError

__all__ = [
    "FunctionSpec",
    "MConvexityReport",
    "monomial",
    "power",
    "exponential",
    "polynomial",
    "eval_deriv",
    "is_m_convex",
    "m_convex_on_pair",
    "corpus_standard",
    "corpus_labels",
    "get_function",
    "THEOREM_WITNESSES",
    "MCONVEX_ABS_TOL",
]

MCONVEX_ABS_TOL = 1e-12
_ROUNDOFF_REL = 8.0 * np.finfo(float).eps


def _is_integer(r):
    return float(r).is_integer()


def _normalize(terms):
    merged = {}
    for c, r, lam in terms:
        key = (float(r), float(lam))
        merged[key] = merged.get(key, 0.0) + float(c)
    return tuple((c, r, lam) for (r, lam), c in sorted(merged.items()) if c != 0.0)


def _order_limit(terms):
    limits = [math.floor(r) for _, r, _ in terms if not _is_integer(r)]
    return min(limits) if limits else None


@dataclass(frozen=True)
class FunctionSpec:
    """Sum of ``c * t**r * exp(lam * t)`` terms with nonnegative powers.

    ``max_order`` is the highest derivative that stays finite at ``t = 0``;
    ``None`` means unlimited. ``mconvex_claims`` lists ``(order, q, m)``
    triples for which ``|f^(order)|**q`` is declared m-convex on the
    standard corpus region.
    """

    label: str
    terms: tuple
    max_order: int | None = None
    mconvex_claims: tuple = field(default=(), compare=False)

    def __post_init__(self):
        for _, r, _ in self.terms:
            if r < 0:
                raise DomainError(f"{self.label}: negative power {r} is singular at 0")

    @classmethod
    def from_terms(cls, label, terms, claims=()):
        terms = _normalize(terms)
        return cls(label, terms, _order_limit(terms), tuple(claims))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < 0):
            bad = float(t[t < 0].flat[0]) if t.ndim else float(t)
            raise DomainError(f"{self.label}: t={bad!r} outside [0, inf)", bad)
        out = np.zeros_like(t)
        for c, r, lam in self.terms:
            term = c * (t ** r if r != 0.0 else 1.0)
            if lam != 0.0:
                term = term * np.exp(lam * t)
            out = out + term
        return out if out.ndim else float(out)

    def derivative(self, order=1):
        order = int(order)
        if order < 0:
            raise DomainError(f"derivative order must be nonnegative, got {order}")
        if self.max_order is not None and order > self.max_order:
            raise CapabilityError(
                f"{self.label}: derivative order {order} exceeds max_order {self.max_order}")
        terms = self.terms
        for _ in range(order):
            nxt = []
            for c, r, lam in terms:
                if r != 0.0:
                    nxt.append((c * r, r - 1.0, lam))
                if lam != 0.0:
                    nxt.append((c * lam, r, lam))
            terms = _normalize(nxt)
        max_order = None if self.max_order is None else self.max_order - order
        label = self.label if order == 0 else f"{self.label}^({order})"
        return FunctionSpec(label, terms, max_order)

    def term_arrays(self):
        """``(coefs, powers, rates)`` lists for the compiled kernels."""
        return ([c for c, _, _ in self.terms], [r for _, r, _ in self.terms],
                [lam for _, _, lam in self.terms])

    def scaled(self, factor, label=None):
        return FunctionSpec(label or f"{factor:g}*{self.label}",
                            _normalize((factor * c, r, lam) for c, r, lam in self.terms),
                            self.max_order)

    def shifted(self, offset, label=None):
        """``t -> f(t - offset)``. Integer powers only: a shifted fractional power
        leaves the term algebra."""
        terms = []
        for c, r, lam in self.terms:
            if not _is_integer(r):
                raise CapabilityError(f"{self.label}: cannot shift fractional power {r}")
            k = int(r)
            scale = c * math.exp(-lam * offset)
            for j in range(k + 1):
                terms.append((scale * math.comb(k, j) * (-offset) ** (k - j), float(j), lam))
        return FunctionSpec.from_terms(label or f"{self.label}(t-{offset:g})", terms)

    def __add__(self, other):
        limits = [m for m in (self.max_order, other.max_order) if m is not None]
        return FunctionSpec(f"{self.label}+{other.label}", _normalize(self.terms + other.terms),
                            min(limits) if limits else None)

    def __rmul__(self, factor):
        return self.scaled(factor)

    def is_zero(self):
        return not self.terms


def monomial(k, label=None, claims=()):
    k = int(k)
    if k < 0:
        raise DomainError(f"monomial degree must be nonnegative, got {k}")
    return FunctionSpec.from_terms(label or f"mono{k}", [(1.0, float(k), 0.0)], claims)


def power(r, label=None, claims=()):
    if not r > 0:
        raise DomainError(f"power exponent must be positive, got {r}")
    return FunctionSpec.from_terms(label or f"pow{r:g}".replace(".", "_"),
                                   [(1.0, float(r), 0.0)], claims)


def exponential(lam, label=None, claims=()):
    return FunctionSpec.from_terms(label or f"exp{lam:g}", [(1.0, 0.0, float(lam))], claims)


def polynomial(coeffs, label=None, claims=()):
    """``sum_k coeffs[k] t**k``; coefficients must be nonnegative."""
    if any(c < 0 for c in coeffs):
        raise DomainError("polynomial coefficients must be nonnegative")
    return FunctionSpec.from_terms(label or "poly",
                                   [(c, float(k), 0.0) for k, c in enumerate(coeffs)], claims)


def eval_deriv(f, order, t):
    """Exact ``f^(order)(t)``."""
    return f.derivative(order)(t)


@dataclass(frozen=True)
class MConvexityReport:
    holds: bool
    witness: tuple | None
    grid_resolution: tuple
    max_violation: float


def _grid_tolerance(lhs, rhs):
    return MCONVEX_ABS_TOL + _ROUNDOFF_REL * np.maximum(np.abs(lhs), np.abs(rhs))


def _eval_checked(g, pts):
    try:
        vals = np.asarray(g(pts), dtype=float)
    except DomainError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise DomainError(f"function not evaluable on grid: {exc}") from exc
    vals = np.broadcast_to(vals, pts.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        where = float(pts.flat[int(np.argmax(bad.ravel()))])
        raise DomainError(f"function not finite at {where!r}", where)
    return vals


def _violations(g, x, y, t, m):
    # modified form: g(t x + (1-t) y) <= t g(x) + m (1-t) g(y/m)
    # anchor the convex combination at the nearer endpoint so t in {0, 1} and
    # x == y reproduce the endpoint exactly
    z = np.where(t <= 0.5, y + t * (x - y), x + (1.0 - t) * (y - x))
    lhs = _eval_checked(g, z)
    rhs = t * _eval_checked(g, x) + m * (1.0 - t) * _eval_checked(g, y / m)
    return lhs - rhs, _grid_tolerance(lhs, rhs)


def _report(viol, tol, axes, resolution):
    excess = viol - tol
    if np.any(excess > 0.0):
        flagged = np.where(excess.ravel() > 0.0, viol.ravel(), -np.inf)
        idx = int(np.argmax(flagged))
        point = np.unravel_index(idx, viol.shape)
        witness = tuple(float(ax.ravel()[point[i]] if ax.size > 1 else ax.ravel()[0])
                        for i, ax in enumerate(axes))
        return MConvexityReport(False, witness, resolution, float(viol.ravel()[idx]))
    return MConvexityReport(True, None, resolution, 0.0)


def is_m_convex(g, m, bound, grid=41):
    """Search a ``grid**3`` lattice over ``x, y in [0, bound]``, ``t in [0, 1]``
    for violations of ``g(t x + (1-t) y) <= t g(x) + m (1-t) g(y/m)``.

    This substitutes ``y/m`` for the second point of the m-convexity
    inequality, so ``g`` must be finite on ``[0, bound/m]``. A ``holds``
    verdict certifies only the sampled lattice; a witness is a genuine
    counterexample.
    """
    m = float(m)
    if not 0.0 < m <= 1.0:
        raise DomainError(f"m must lie in (0, 1], got {m!r}", m)
    if not bound > 0:
        raise DomainError(f"region bound must be positive, got {bound!r}", bound)
    grid = int(grid)
    if grid < 3:
        raise DomainError(f"grid needs at least 3 points per axis, got {grid}")
    xs = np.linspace(0.0, float(bound), grid)
    ts = np.linspace(0.0, 1.0, grid)
    x = xs[:, None, None]
    y = xs[None, :, None]
    t = ts[None, None, :]
    viol, tol = _violations(g, x, y, t, m)
    return _report(viol, tol, (xs, xs, ts), (grid, grid, grid))


def m_convex_on_pair(g, x, y, m, grid=1001):
    """The same inequality restricted to one ``(x, y)`` pair, ``t`` on a grid."""
    m = float(m)
    if not 0.0 < m <= 1.0:
        raise DomainError(f"m must lie in (0, 1], got {m!r}", m)
    ts = np.linspace(0.0, 1.0, int(grid))
    xa = np.array([float(x)])
    ya = np.array([float(y)])
    viol, tol = _violations(g, xa, ya, ts, m)
    return _report(viol[None, None, :], tol[None, None, :], (xa, ya, ts), (1, 1, int(grid)))


_M_GRID = (0.25, 0.5, 1.0)
_Q_GRID = (1, 2, 3)


def _power_claims(k, orders=range(0, 8)):
    # |c t^(k-j)|^q is convex and vanishes at 0 whenever k - j >= 1
    return tuple((j, q, m) for j in orders if k - j >= 1 for q in _Q_GRID for m in _M_GRID)


def _convex_claims(orders):
    return tuple((j, q, 1.0) for j in orders for q in _Q_GRID)


def corpus_standard():
    """Deterministic list of corpus functions."""
    members = [monomial(k, claims=_power_claims(k)) for k in range(1, 7)]
    members += [
        exponential(1.0, "exp1", _convex_claims(range(0, 6))),
        exponential(2.0, "exp2", _convex_claims(range(0, 6))),
        exponential(-1.0, "expneg1", _convex_claims(range(0, 6))),
        polynomial([1.0, 1.0, 1.0, 1.0], "cubic", _convex_claims(range(0, 4))),
        polynomial([0.0, 1.0, 0.5], "linquad", _convex_claims(range(0, 3))),
        power(2.5, "pow2_5", tuple((0, q, m) for q in _Q_GRID for m in _M_GRID)
              + tuple((1, q, m) for q in _Q_GRID for m in _M_GRID)),
        power(3.5, "pow3_5", tuple((j, q, m) for j in range(0, 3) for q in _Q_GRID for m in _M_GRID)),
    ]
    return members


# corpus members whose relevant derivative satisfies each theorem's hypothesis
# on the standard interval [0, 1] with alpha = 0.5
THEOREM_WITNESSES = {
    "T1": "exp1",
    "T2": "linquad",
    "T3": "mono4",
    "T4": "mono4",
    "T5": "mono3",
    "T6": "exp1",
}

_BY_LABEL = None


def corpus_labels():
    return [f.label for f in corpus_standard()]


def get_function(label):
    global _BY_LABEL
    if _BY_LABEL is None:
        _BY_LABEL = {f.label: f for f in corpus_standard()}
    try:
        return _BY_LABEL[label]
    except KeyError:
        raise KeyError(f"unknown function label {label!r}; known: {sorted(_BY_LABEL)}") from None
