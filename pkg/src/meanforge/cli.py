"""Command-line front end: evaluate means, reproduce the nine-family
weighted-mean table, run the verification suite, and run the fixed-point
stabilizer.

Exit codes: 0 success, 1 verification failure or non-convergence,
2 argument/config errors.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import algebra, powers, verify, weighted
from .scalars import MEANS, MeanKind, PositivePair, Weight, weighted_standard

_CLASSIC = tuple(k.value for k in MeanKind)
_WEIGHTED_STANDARD = ("arith", "geom", "harm")

# family name -> (required params, evaluator(args) -> float)
_FAMILIES = {}


def _family(name, needs):
    def wrap(fn):
        _FAMILIES[name] = (needs, fn)
        return fn

    return wrap


for _kind in _CLASSIC:
    def _classic_eval(args, _k=_kind):
        if args.v is not None and _k in _WEIGHTED_STANDARD:
            return weighted_standard(_k, args.a, args.b, args.v)
        return MEANS[MeanKind(_k)](args.a, args.b)

    _FAMILIES[_kind] = ((), _classic_eval)

_family("Lv", ("v",))(lambda args: weighted.weighted_log(args.a, args.b, args.v))
_family("Iv", ("v",))(lambda args: weighted.weighted_identric(args.a, args.b, args.v))
_family("Lv*", ("v",))(lambda args: weighted.weighted_log_dual(args.a, args.b, args.v))
_family("Iv*", ("v",))(lambda args: weighted.weighted_identric_dual(args.a, args.b, args.v))
_family("calLv", ("v",))(lambda args: weighted.second_weighted_log(args.a, args.b, args.v))
_family("calLv*", ("v",))(
    lambda args: weighted.second_weighted_log_dual(args.a, args.b, args.v)
)
_family("binomial", ("p",))(lambda args: powers.binomial_mean(args.p, args.a, args.b))
_family("stolarsky", ("p", "q"))(
    lambda args: powers.stolarsky_mean(args.p, args.q, args.a, args.b)
)
_family("Lp", ("p",))(lambda args: powers.power_log_mean(args.p, args.a, args.b))
_family("Dp", ("p",))(lambda args: powers.power_difference_mean(args.p, args.a, args.b))
_family("Ip", ("p",))(lambda args: powers.power_exponential_mean(args.p, args.a, args.b))
_family("calLp", ("p",))(
    lambda args: powers.second_power_log_mean(args.p, args.a, args.b)
)
_family("binomial;v", ("p", "v"))(
    lambda args: powers.weighted_binomial(args.p, args.a, args.b, args.v)
)
_family("stolarsky;v", ("p", "q", "v"))(
    lambda args: powers.weighted_stolarsky(args.p, args.q, args.a, args.b, args.v, args.form)
)
_family("Lp;v", ("p", "v"))(
    lambda args: powers.weighted_power("Lpv", args.p, args.a, args.b, args.v)
)
_family("Dp;v", ("p", "v"))(
    lambda args: powers.weighted_power("Dpv", args.p, args.a, args.b, args.v)
)
_family("Ip;v", ("p", "v"))(
    lambda args: powers.weighted_power("Ipv", args.p, args.a, args.b, args.v)
)
_family("calLp;v", ("p", "v"))(
    lambda args: powers.weighted_power("calLpv", args.p, args.a, args.b, args.v)
)


class _CliError(Exception):
    pass


def _fmt(x):
    return f"{float(x):.15g}"


def _cmd_eval(args):
    spec = args.spec
    if spec.startswith("classic:"):
        spec = spec[len("classic:"):]
    if spec not in _FAMILIES:
        raise _CliError(f"unknown mean spec {args.spec!r}")
    needs, fn = _FAMILIES[spec]
    for name in needs:
        if getattr(args, name) is None:
            raise _CliError(f"mean spec {args.spec!r} requires --{name}")
    PositivePair(args.a, args.b)
    if args.v is not None:
        Weight(args.v)
    print(_fmt(fn(args)))
    return 0


def _cmd_table1(args):
    PositivePair(args.a, args.b)
    Weight(args.v)
    grid = algebra.table1(args.a, args.b, args.v)
    labels = algebra.TABLE1_LABELS
    if args.format == "json":
        import json

        print(json.dumps({
            "a": args.a,
            "b": args.b,
            "v": args.v,
            "rows_p": list(labels),
            "cols_q": list(labels),
            "families": [
                [algebra.TABLE1_FAMILIES[(p, q)][0] for q in labels] for p in labels
            ],
            "values": grid,
        }, indent=2))
    elif args.format == "csv":
        print("p\\q," + ",".join(labels))
        for p, row in zip(labels, grid):
            print(p + "," + ",".join(_fmt(x) for x in row))
    else:
        width = 24
        corner = "p\\q"
        print(f"{corner:8s}" + "".join(f"{q:>{width}s}" for q in labels))
        for p, row in zip(labels, grid):
            cells = "".join(f"{_fmt(x):>{width}s}" for x in row)
            print(f"{p:8s}{cells}")
    return 0


def _cmd_verify(args):
    dims = tuple(int(t) for t in args.operator_dims.split(",")) if args.operator_dims else (2, 3, 4, 5, 6, 7, 8)
    cfg = verify.VerifyConfig(
        samples=args.samples,
        identity_samples=args.identity_samples,
        op_samples=args.op_samples,
        op_dims=dims,
        seed=args.seed,
        ratio_log_span=args.ratio_span,
        tol_chain=args.tol,
    )
    try:
        cfg.validate()
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    report = verify.run_suite(cfg)
    if args.format == "json":
        sys.stdout.write(report.to_json() + "\n")
    else:
        sys.stdout.write(report.to_text())
    print(f"wall time: {report.wall_time_s:.2f} s", file=sys.stderr)
    return 0 if report.passed else 1


def _cmd_stabilize(args):
    for name in (args.q, args.p, args.initial):
        if name not in _WEIGHTED_STANDARD:
            raise _CliError(
                f"{name!r} is not a registered stable mean (choose from {_WEIGHTED_STANDARD})"
            )
    grid = algebra.GridConfig(points=args.points, half_width=args.half_width)
    try:
        result = algebra.stabilize_fixed_point(
            args.q, args.p, grid=grid, tol=args.tol, max_iter=args.max_iter,
            initial=args.initial,
        )
    except algebra.NonConvergence as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        for k, r in enumerate(exc.history):
            print(f"iteration {k}: residual {r:.6e}", file=sys.stderr)
        return 1
    x, f = result.trace.values()
    lines = ["x,f"] + [f"{_fmt(xi)},{_fmt(fi)}" for xi, fi in zip(x, f)]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(
        f"converged: iterations={result.iterations} residual={result.residual:.6e}",
        file=sys.stderr if not args.out else sys.stdout,
    )
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="meanforge",
        description="Weighted means, mean-composition calculus, and the verification suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a mean by family name")
    ev.add_argument("spec", help="family name, e.g. geom, Lv, stolarsky, Lp;v")
    ev.add_argument("--a", type=float, required=True)
    ev.add_argument("--b", type=float, required=True)
    ev.add_argument("--v", type=float, default=None)
    ev.add_argument("--p", type=float, default=None)
    ev.add_argument("--q", type=float, default=None)
    ev.add_argument("--form", choices=("via_Bp", "via_Bq"), default="via_Bp")
    ev.set_defaults(fn=_cmd_eval)

    tb = sub.add_parser("table1", help="nine weighted means built from the standard pairs")
    tb.add_argument("--a", type=float, required=True)
    tb.add_argument("--b", type=float, required=True)
    tb.add_argument("--v", type=float, required=True)
    tb.add_argument("--format", choices=("text", "csv", "json"), default="text")
    tb.set_defaults(fn=_cmd_table1)

    vf = sub.add_parser("verify", help="run the randomized verification suite")
    vf.add_argument("--samples", type=int, default=100_000)
    vf.add_argument("--identity-samples", type=int, default=5_000)
    vf.add_argument("--op-samples", type=int, default=120)
    vf.add_argument("--operator-dims", type=str, default="")
    vf.add_argument("--seed", type=int, default=None)
    vf.add_argument("--tol", type=float, default=1e-12)
    vf.add_argument("--ratio-span", type=float, default=14.0)
    vf.add_argument("--format", choices=("json", "text"), default="json")
    vf.set_defaults(fn=_cmd_verify)

    st = sub.add_parser("stabilize", help="fixed-point iteration toward the (q,p)-stabilizable mean")
    st.add_argument("--q", required=True, help="outer stable mean (arith|geom|harm)")
    st.add_argument("--p", required=True, help="inner stable mean (arith|geom|harm)")
    st.add_argument("--points", type=int, default=513)
    st.add_argument("--half-width", type=float, default=12.0)
    st.add_argument("--tol", type=float, default=1e-10)
    st.add_argument("--max-iter", type=int, default=200)
    st.add_argument("--initial", default="geom")
    st.add_argument("--out", default=None, help="write the trace CSV here instead of stdout")
    st.set_defaults(fn=_cmd_stabilize)
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "command", None) == "verify" and args.seed is None:
        env = os.environ.get("MEANFORGE_SEED")
        try:
            args.seed = int(env) if env else 0
        except ValueError:
            print(f"bad MEANFORGE_SEED value {env!r}", file=sys.stderr)
            return 2
    try:
        return args.fn(args)
    except (_CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except algebra.NonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
