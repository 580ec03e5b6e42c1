"""Expand a configuration into check instances and evaluate them."""

from __future__ import annotations

import hashlib
import json
import logging
import math
from dataclasses import dataclass

from .. import __version__, identities, ineqchecks
from ..errors import FracLabError
from ..fracops import CheckInstance, FracParams
from ..identities import lemma1_residual, lemma2_residual
from ..ineqchecks import (
    FAILS,
    INDETERMINATE,
    VARIANTS_BY_CHECK,
    run_check,
)
from ..testfuncs import get_function

log = logging.getLogger(__name__)

# which instance axes each check depends on
_AXES = {
    "T1": ("alpha", "x"),
    "T2": ("alpha", "x"),
    "T3": ("alpha", "m"),
    "T4": ("alpha", "m", "q"),
    "T5": ("alpha", "xy", "m"),
    "T6": ("alpha", "xy", "m", "q"),
    "C1": (),
    "C2": ("q",),
    "C3": ("alpha", "q"),
    "R1": (),
}
_ROW_FIELDS = ("instance_id", "check_id", "variant", "lhs", "rhs", "margin", "status",
               "est_error", "tight", "reason")


@dataclass
class RunReport:
    version: str
    config_digest: str
    rows: list
    residuals: list
    summary: dict

    @property
    def exit_code(self):
        return self.summary["exit_code"]

    def body(self):
        return {
            "version": self.version,
            "config_digest": self.config_digest,
            "rows": self.rows,
            "residuals": self.residuals,
            "summary": self.summary,
        }


def instance_id(label, alpha, a, b, x=None, y=None, m=None, q=None):
    """Content hash identifying an instance across runs."""
    key = json.dumps([label, alpha, a, b, x, y, m, q])
    return hashlib.sha256(key.encode()).hexdigest()[:16]


def _required_order(check_id, params):
    if check_id in ("C1", "C2", "R1"):
        return 2
    if check_id in ("T1", "T2"):
        return params.n
    return params.n + 1


def _supports(f, order):
    return f.max_order is None or order <= f.max_order


def _check_instances(config, check_id, f):
    axes = _AXES[check_id]
    alphas = config.alphas if "alpha" in axes else (0.0,)
    ms = config.m_values if "m" in axes else (None,)
    qs = config.q_values if "q" in axes else (None,)
    for a, b in config.intervals:
        for alpha in alphas:
            params = FracParams(alpha, a, b)
            if not _supports(f, _required_order(check_id, params)):
                continue
            if "x" in axes:
                points = [(a + u * (b - a), None) for u in config.x_fractions]
            elif "xy" in axes:
                points = [(a + u * (b - a), a + v * (b - a)) for u, v in config.xy_fractions]
            else:
                points = [(None, None)]
            for x, y in points:
                for m in ms:
                    for q in qs:
                        inst = CheckInstance(f, params, x=x, y=y,
                                             m=1.0 if m is None else m, q=q)
                        iid = instance_id(f.label, alpha, a, b, x, y, m, q)
                        yield iid, inst, {"label": f.label, "alpha": alpha, "a": a, "b": b,
                                          "x": x, "y": y, "m": m, "q": q}


def _clean(value):
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _row(iid, check_id, variant, outcome, summary):
    row = {
        "instance_id": iid,
        "check_id": check_id,
        "variant": variant,
        "lhs": outcome.lhs,
        "rhs": outcome.rhs,
        "margin": outcome.margin,
        "status": outcome.status,
        "est_error": outcome.est_error,
        "tight": outcome.tight,
        "reason": outcome.reason,
        "instance": summary,
    }
    if outcome.details:
        row["details"] = outcome.details
    return _clean(row)


def _error_row(iid, check_id, variant, exc, summary):
    nan = float("nan")
    return _clean({
        "instance_id": iid, "check_id": check_id, "variant": variant,
        "lhs": nan, "rhs": nan, "margin": nan, "status": INDETERMINATE,
        "est_error": nan, "tight": False,
        "reason": f"{type(exc).__name__}: {exc}", "instance": summary,
    })


def _residual_rows(config, f):
    tol = config.tolerances
    for a, b in config.intervals:
        for alpha in config.alphas:
            params = FracParams(alpha, a, b)
            if params.mode != "fractional" or not _supports(f, params.n + 1):
                continue
            jobs = [("lemma1", None, None)]
            jobs += [("lemma2", a + u * (b - a), a + v * (b - a)) for u, v in config.xy_fractions]
            for lemma, x, y in jobs:
                iid = instance_id(f.label, alpha, a, b, x, y)
                summary = {"label": f.label, "alpha": alpha, "a": a, "b": b, "x": x, "y": y}
                try:
                    if lemma == "lemma1":
                        res = lemma1_residual(f, params, tol.identity)
                    else:
                        res = lemma2_residual(f, params, x, y, tol.identity)
                except (FracLabError, ArithmeticError, ValueError) as exc:
                    yield _clean({"instance_id": iid, "lemma": lemma, "lhs": None, "rhs": None,
                                  "residual": None, "est_error": None, "within_tol": None,
                                  "error": f"{type(exc).__name__}: {exc}", "instance": summary})
                    continue
                yield _clean({"instance_id": iid, "lemma": lemma, "lhs": res.lhs, "rhs": res.rhs,
                              "residual": res.residual, "est_error": res.est_error,
                              "within_tol": res.residual <= tol.residual, "instance": summary})


def _summarize(rows, residuals, tol):
    counts = {}
    for row in rows:
        by_variant = counts.setdefault(row["check_id"], {}).setdefault(row["variant"], {})
        by_variant[row["status"]] = by_variant.get(row["status"], 0) + 1
    chain_failures = sum(1 for r in rows if r["variant"] == "chain" and r["status"] == FAILS)
    stated_failures = sum(1 for r in rows if r["variant"] == "stated" and r["status"] == FAILS)
    res_summary = {}
    for lemma in ("lemma1", "lemma2"):
        sel = [r for r in residuals if r["lemma"] == lemma]
        ok = [r for r in sel if r["residual"] is not None]
        res_summary[lemma] = {
            "count": len(sel),
            "max_residual": max((r["residual"] for r in ok), default=0.0),
            "exceeding": sum(1 for r in ok if not r["within_tol"]),
            "errors": len(sel) - len(ok),
        }
    exceeding = sum(v["exceeding"] for v in res_summary.values())
    return {
        "rows": len(rows),
        "counts": counts,
        "chain_failures": chain_failures,
        "stated_failures": stated_failures,
        "residual_tol": tol.residual,
        "residuals": res_summary,
        "exit_code": 1 if chain_failures or exceeding else 0,
    }


def clear_caches():
    """Drop memoised identity and precondition results, so a repeated run
    recomputes everything from scratch."""
    for fn in (identities._lemma1, identities._lemma2, ineqchecks._min_on,
               ineqchecks._pair_mconvex, ineqchecks._region_mconvex):
        fn.cache_clear()


def run_corpus(config):
    """Evaluate every requested (instance, check, variant) of ``config``."""
    tol = config.tolerances
    rows = []
    residuals = []
    for label in config.functions:
        f = get_function(label)
        for check_id in config.checks:
            variants = [v for v in config.variants if v in VARIANTS_BY_CHECK[check_id]]
            for iid, inst, summary in _check_instances(config, check_id, f):
                for variant in variants:
                    try:
                        outcome = run_check(check_id, inst, variant, tol)
                    except Exception as exc:  # one bad instance must not abort the run
                        log.warning("%s/%s on %s failed: %s", check_id, variant, iid, exc)
                        rows.append(_error_row(iid, check_id, variant, exc, summary))
                        continue
                    rows.append(_row(iid, check_id, variant, outcome, summary))
        if config.residuals:
            residuals.extend(_residual_rows(config, f))
    rows.sort(key=lambda r: (r["instance_id"], r["check_id"], r["variant"]))
    residuals.sort(key=lambda r: (r["instance_id"], r["lemma"]))
    return RunReport(__version__, config.digest(), rows, residuals, _summarize(rows, residuals, tol))
