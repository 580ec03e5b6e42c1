"""Backend selection for the quadrature hot loop.

The compiled extension is used when it imports; otherwise the numpy
implementation takes over. ``set_backend`` lets tests and the benchmark
pin either one.
"""

from __future__ import annotations

from . import _kernels_py

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

__all__ = ["BACKEND", "available_backends", "set_backend", "get_backend", "weighted_terms"]

_IMPLS = {"python": _kernels_py.weighted_terms}
if _ckernels is not None:
    _IMPLS["compiled"] = _ckernels.weighted_terms

BACKEND = "compiled" if "compiled" in _IMPLS else "python"
_active = _IMPLS[BACKEND]


def available_backends():
    return sorted(_IMPLS)


def get_backend():
    return BACKEND


def set_backend(name):
    """Select ``"python"`` or ``"compiled"``; returns the previous name."""
    global BACKEND, _active
    if name not in _IMPLS:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    previous = BACKEND
    BACKEND = name
    _active = _IMPLS[name]
    return previous


def weighted_terms(coefs, powers, rates, lo, hi, s, upper, tol):
    """Dispatch to the active backend; see ``_kernels_py.weighted_terms``."""
    return _active(coefs, powers, rates, float(lo), float(hi), float(s), bool(upper), float(tol))
