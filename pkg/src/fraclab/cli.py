"""Command-line interface: ``fraclab run | check | corpus list | residuals``."""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .errors import FracLabError
from .fracops import CheckInstance, FracParams
from .harness.config import load_config
from .harness.report import FORMATS, dumps_structured, write_report
from .harness.runner import run_corpus
from .identities import lemma1_residual, lemma2_residual
from .ineqchecks import CHECK_IDS, VARIANTS, run_check
from .testfuncs import corpus_standard, get_function


def _describe(f):
    parts = []
    for c, r, lam in f.terms:
        piece = f"{c:g}"
        if r:
            piece += f"*t^{r:g}"
        if lam:
            piece += f"*exp({lam:g}t)"
        parts.append(piece)
    return " + ".join(parts) or "0"


def _cmd_run(args):
    config = load_config(args.config)
    report = run_corpus(config)
    fmt = args.format or config.format
    out_dir = args.out or config.out_dir
    path = write_report(report, out_dir, config.basename, fmt)
    s = report.summary
    print(f"wrote {path}: {s['rows']} rows, {s['chain_failures']} chain failures, "
          f"{s['stated_failures']} stated failures, "
          f"lemma1 max residual {s['residuals']['lemma1']['max_residual']:.3e}, "
          f"lemma2 max residual {s['residuals']['lemma2']['max_residual']:.3e}")
    return report.exit_code


def _cmd_check(args):
    f = get_function(args.f)
    params = FracParams(args.alpha, args.a, args.b)
    inst = CheckInstance(f, params, x=args.x, y=args.y, m=args.m, q=args.q)
    outcome = run_check(args.id, inst, args.variant)
    sys.stdout.write(dumps_structured(dataclasses.asdict(outcome)))
    return 0


def _cmd_corpus(args):
    for f in corpus_standard():
        limit = "inf" if f.max_order is None else str(f.max_order)
        print(f"{f.label:10s} max_order={limit:4s} {_describe(f)}")
    return 0


def _cmd_residuals(args):
    f = get_function(args.f)
    params = FracParams(args.alpha, args.a, args.b)
    if args.lemma == 1:
        res = lemma1_residual(f, params)
    else:
        if args.x is None or args.y is None:
            raise FracLabError("--lemma 2 needs --x and --y")
        res = lemma2_residual(f, params, args.x, args.y)
    sys.stdout.write(dumps_structured(dataclasses.asdict(res)))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="fraclab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate a corpus configuration")
    run.add_argument("--config", required=True)
    run.add_argument("--out", help="output directory (overrides the config)")
    run.add_argument("--format", choices=FORMATS)
    run.set_defaults(func=_cmd_run)

    check = sub.add_parser("check", help="evaluate a single check")
    check.add_argument("--id", required=True, choices=CHECK_IDS)
    check.add_argument("--f", required=True, help="corpus label")
    check.add_argument("--alpha", type=float, required=True)
    check.add_argument("--a", type=float, required=True)
    check.add_argument("--b", type=float, required=True)
    check.add_argument("--x", type=float)
    check.add_argument("--y", type=float)
    check.add_argument("--m", type=float, default=1.0)
    check.add_argument("--q", type=float)
    check.add_argument("--variant", choices=VARIANTS, default="chain")
    check.set_defaults(func=_cmd_check)

    corpus = sub.add_parser("corpus", help="inspect the function corpus")
    corpus.add_argument("action", choices=["list"])
    corpus.set_defaults(func=_cmd_corpus)

    res = sub.add_parser("residuals", help="evaluate an identity residual")
    res.add_argument("--lemma", type=int, choices=[1, 2], required=True)
    res.add_argument("--f", required=True)
    res.add_argument("--alpha", type=float, required=True)
    res.add_argument("--a", type=float, required=True)
    res.add_argument("--b", type=float, required=True)
    res.add_argument("--x", type=float)
    res.add_argument("--y", type=float)
    res.set_defaults(func=_cmd_residuals)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FracLabError, KeyError, OSError) as exc:
        print(f"fraclab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
