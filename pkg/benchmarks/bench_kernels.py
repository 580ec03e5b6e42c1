"""Compare the compiled and pure-Python weighted-quadrature kernels.

Reports per-call kernel timings, the Caputo operator sweep over the corpus,
and one end-to-end corpus run per backend. Values from the two backends
are checked for agreement before any timing is printed.

    python3 benchmarks/bench_kernels.py [--repeat N] [--skip-corpus]
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
import timeit

import numpy as np

from fraclab import kernels
from fraclab.fracops import FracParams, caputo_left, caputo_right
from fraclab.harness import default_config, run_corpus
from fraclab.harness.runner import clear_caches
from fraclab.testfuncs import corpus_standard

CASES = {
    "t^2, s=0.5": ([2.0], [0.0], [0.0], 0.0, 1.0, 0.5),
    "e^2t, s=0.25": ([8.0], [0.0], [2.0], 0.5, 2.5, 0.25),
    "cubic, s=0.75": ([1.0, 2.0, 3.0], [0.0, 1.0, 2.0], [0.0, 0.0, 0.0], 0.0, 1.0, 0.75),
    "t^1.5, s=0.1": ([3.75], [1.5], [0.0], 0.5, 2.5, 0.1),
}


def _case_args(case, upper, tol=1e-11):
    c, r, lam, lo, hi, s = case
    return (np.array(c), np.array(r), np.array(lam), lo, hi, s, upper, tol)


def check_agreement():
    worst = 0.0
    for case in CASES.values():
        for upper in (True, False):
            args = _case_args(case, upper)
            vals = [kernels._IMPLS[b](*args)[0] for b in kernels.available_backends()]
            worst = max(worst, (max(vals) - min(vals)) / max(abs(v) for v in vals))
    return worst


def bench_kernel(repeat):
    rows = []
    for name, case in CASES.items():
        args = _case_args(case, True)
        per = {}
        for backend in kernels.available_backends():
            fn = kernels._IMPLS[backend]
            timer = timeit.Timer(lambda fn=fn: fn(*args))
            number, _ = timer.autorange()
            best = min(timer.repeat(repeat, number)) / number
            per[backend] = best
        rows.append((name, per))
    return rows


def _operator_sweep():
    p = FracParams(0.5, 0.5, 2.5)
    for f in corpus_standard():
        for x in np.linspace(0.6, 2.4, 10):
            caputo_left(f, p, x)
            caputo_right(f, p, x)


def bench_operators(repeat):
    out = {}
    for backend in kernels.available_backends():
        previous = kernels.set_backend(backend)
        try:
            times = timeit.repeat(_operator_sweep, number=1, repeat=repeat)
        finally:
            kernels.set_backend(previous)
        out[backend] = statistics.median(times)
    return out


def bench_corpus():
    out = {}
    config = default_config()
    for backend in kernels.available_backends():
        previous = kernels.set_backend(backend)
        try:
            clear_caches()
            start = time.perf_counter()
            run_corpus(config)
            out[backend] = time.perf_counter() - start
        finally:
            kernels.set_backend(previous)
    return out


def _fmt(seconds):
    if seconds < 1e-3:
        return f"{seconds * 1e6:9.1f} us"
    if seconds < 1.0:
        return f"{seconds * 1e3:9.2f} ms"
    return f"{seconds:9.3f} s "


def _ratio(per):
    if "compiled" in per and "python" in per:
        return f"{per['python'] / per['compiled']:6.1f}x"
    return "     -"


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--skip-corpus", action="store_true", help="skip the end-to-end run")
    args = parser.parse_args(argv)

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)} (default {kernels.get_backend()})")
    if "compiled" not in backends:
        print("compiled extension not built; timings cover the python kernel only")
    print(f"max relative backend disagreement: {check_agreement():.3e}\n")

    header = f"{'case':<22}" + "".join(f"{b:>14}" for b in backends) + "  speedup"
    print(header)
    print("-" * len(header))
    for name, per in bench_kernel(args.repeat):
        print(f"{name:<22}" + "".join(f"{_fmt(per[b]):>14}" for b in backends) + f"  {_ratio(per)}")

    per = bench_operators(args.repeat)
    print(f"{'operator sweep':<22}" + "".join(f"{_fmt(per[b]):>14}" for b in backends) + f"  {_ratio(per)}")
    if not args.skip_corpus:
        per = bench_corpus()
        print(f"{'default corpus run':<22}" + "".join(f"{_fmt(per[b]):>14}" for b in backends)
              + f"  {_ratio(per)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
