"""Command-line front end.

Verbs: compute, sweep, check, cauchy, centroid, selftest.
Exit codes: 0 success, 1 acceptance-check failure (cauchy/selftest),
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from meandiv import centroid as centroid_mod
from meandiv import conformal, divergences, means, power, selftest
from meandiv.densities import (
    DensityPair,
    cauchy_ah_alpha_closed_form,
    cauchy_grid,
    load_density,
)
from meandiv.errors import MeanDivError

METHODS = ("standard", "qa", "power", "zhang-rho", "zhang-ab", "kl-fg", "jeffreys-fg")


def _fmt(value: float, precision) -> str:
    if precision is None:
        return repr(float(value))
    return f"{value:.{precision}f}"


def _resolve_alpha(args) -> divergences.AlphaParam:
    if getattr(args, "alpha", None) is not None and getattr(args, "alpha_amari", None) is not None:
        raise MeanDivError("give only one of --alpha / --alpha-amari")
    if getattr(args, "alpha", None) is not None:
        return divergences.AlphaParam(args.alpha, "standard")
    if getattr(args, "alpha_amari", None) is not None:
        return divergences.AlphaParam(args.alpha_amari, "amari")
    raise MeanDivError("an alpha is required: --alpha or --alpha-amari")


def _compute_value(args, pair: DensityPair):
    """Dispatch a method name to a divergence value (+ optional diagnostics)."""
    method = args.method
    diagnostics = None
    if method == "standard":
        alpha = _resolve_alpha(args).standard
        value = math.fsum(
            w * divergences.scalar_alpha_div(alpha, pv, qv)
            for w, pv, qv in zip(pair.weights, pair.p.values, pair.q.values)
        )
    elif method == "qa":
        alpha = _resolve_alpha(args).standard
        res = divergences.qa_alpha_div(
            means.get_generator(args.f), means.get_generator(args.g), alpha, pair
        )
        value, diagnostics = res.value, res
    elif method == "power":
        if args.r is None or args.s is None:
            raise MeanDivError("--method power requires --r and --s")
        alpha = _resolve_alpha(args).standard
        res = power.power_alpha_div(power.PowerPair(args.r, args.s), alpha, pair)
        value, diagnostics = res.value, res
    elif method == "zhang-rho":
        alpha_a = _resolve_alpha(args).amari
        value = divergences.zhang_rho_alpha_div(means.get_generator(args.rho), alpha_a, pair)
    elif method == "zhang-ab":
        if args.beta_amari is None:
            raise MeanDivError("--method zhang-ab requires --beta-amari")
        alpha_a = _resolve_alpha(args).amari
        value = divergences.zhang_alpha_beta_div(alpha_a, args.beta_amari, pair)
    elif method == "kl-fg":
        value = divergences.fg_kl(means.get_generator(args.f), means.get_generator(args.g), pair)
    elif method == "jeffreys-fg":
        value = divergences.fg_jeffreys(means.get_generator(args.f), means.get_generator(args.g), pair)
    else:
        raise MeanDivError(f"unknown method {method!r}")
    return value, diagnostics


def _load_pair(args) -> DensityPair:
    p = load_density(args.p_file, clamp_eps=args.clamp_eps)
    q = load_density(args.q_file, clamp_eps=args.clamp_eps)
    return DensityPair(p, q)


def cmd_compute(args) -> int:
    pair = _load_pair(args)
    value, diagnostics = _compute_value(args, pair)
    if args.format == "json":
        doc = {"method": args.method, "value": value}
        if diagnostics is not None:
            doc.update(
                limit_branch_used=diagnostics.limit_branch_used,
                min_integrand=diagnostics.min_integrand,
                n_points=diagnostics.n_points,
            )
        print(json.dumps(doc))
    else:
        print(_fmt(value, args.precision))
        if diagnostics is not None:
            print(
                f"limit_branch_used={diagnostics.limit_branch_used} "
                f"min_integrand={_fmt(diagnostics.min_integrand, args.precision)} "
                f"n_points={diagnostics.n_points}"
            )
    return 0


def cmd_sweep(args) -> int:
    try:
        start, end, step = (float(t) for t in args.range.split(":"))
    except ValueError as exc:
        raise MeanDivError(f"bad --range, expected start:end:step: {exc}") from exc
    if not (0.0 <= start <= end <= 1.0) or step <= 0:
        raise MeanDivError("range must satisfy 0 <= start <= end <= 1 with step > 0")
    pair = _load_pair(args)
    alphas = []
    k = 0
    while True:
        a = start + k * step
        if a > end + 1e-12:
            break
        alphas.append(min(a, end))
        k += 1
    print("alpha,value")
    for a in alphas:
        args.alpha, args.alpha_amari = a, None
        value, _ = _compute_value(args, pair)
        print(f"{repr(a)},{repr(float(value))}")
    return 0


def cmd_check(args) -> int:
    f = means.get_generator(args.f)
    g = means.get_generator(args.g)
    result = means.check_strict_comparability(f, g)
    if result.comparable:
        print(f"Comparable: ({args.f}, {args.g}) certified on the default grid")
    else:
        (xa, ha), (xb, hb), (xc, hc) = result.witness
        print(f"NotComparable: ({args.f}, {args.g})")
        print(f"witness triple: x=({xa!r}, {xb!r}, {xc!r}) h=({ha!r}, {hb!r}, {hc!r})")
    if args.conformal and result.comparable:
        rng = np.random.default_rng(0)
        worst = 0.0
        from meandiv.densities import counting_density

        for _ in range(20):
            vals_p = np.exp(rng.uniform(-1, 1, 10))
            vals_q = np.exp(rng.uniform(-1, 1, 10))
            pair = DensityPair(counting_density(vals_p), counting_density(vals_q))
            lhs = conformal.conformal_i1(f, g, pair)
            rhs = divergences.qa_alpha_div(f, g, 1.0, pair).value
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-300))
        ok = worst <= 1e-10
        print(f"conformal identity self-test: {'pass' if ok else 'FAIL'} (worst rel gap {worst:.3e})")
        if not ok:
            return 1
    return 0


def cmd_cauchy(args) -> int:
    half_width = args.half_width if args.half_width is not None else 1e4 * max(args.s1, args.s2)
    n = args.n
    closed = cauchy_ah_alpha_closed_form(args.s1, args.s2, args.alpha)
    pair = DensityPair(cauchy_grid(args.s1, half_width, n), cauchy_grid(args.s2, half_width, n))
    quad = power.power_alpha_div(power.PowerPair(1.0, -1.0), args.alpha, pair).value
    if abs(closed) < 1e-12:
        err = abs(quad - closed)
        ok = err <= 1e-12
        kind = "absolute"
    else:
        err = abs(quad - closed) / abs(closed)
        ok = err <= 1e-3
        kind = "relative"
    print(f"closed_form={closed!r}")
    print(f"quadrature={quad!r} (half_width={half_width:g}, n={n})")
    print(f"{kind}_error={err:.6e} -> {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_centroid(args) -> int:
    densities = [load_density(path, clamp_eps=args.clamp_eps) for path in args.files]
    weights = None
    if args.weights:
        weights = [float(t) for t in args.weights.split(",")]
    report = centroid_mod.qa_centroid(
        densities,
        means.get_generator(args.f),
        means.get_generator(args.g),
        args.alpha,
        weights=weights,
        side=args.side,
        max_iter=args.max_iter,
        tol=args.tol,
    )
    doc = {
        "converged": report.converged,
        "iterations": report.iterations,
        "objective": report.objective_trace[-1],
        "objective_trace": report.objective_trace,
        "side": report.side,
        "centroid": {
            "support": list(report.centroid.support),
            "values": [float(v) for v in report.centroid.values],
            "weights": [float(w) for w in report.centroid.weights],
        },
    }
    print(json.dumps(doc))
    return 0


def cmd_selftest(args) -> int:
    results = selftest.run_selftest(seed=args.seed, break_duality=args.break_duality)
    all_ok = True
    for res in results:
        status = "pass" if res.passed else "FAIL"
        print(f"[{status}] {res.name}: {res.detail}")
        all_ok &= res.passed
    print("selftest:", "pass" if all_ok else "FAIL")
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meandiv",
        description="Generalized alpha-divergences from comparable quasi-arithmetic means",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_alpha(p, amari=True):
        p.add_argument("--alpha", type=float, default=None)
        if amari:
            p.add_argument("--alpha-amari", type=float, default=None)

    def add_method(p):
        p.add_argument("--method", choices=METHODS, default="qa")
        p.add_argument("--f", default="identity")
        p.add_argument("--g", default="log")
        p.add_argument("--rho", default="log")
        p.add_argument("--r", type=float, default=None)
        p.add_argument("--s", type=float, default=None)
        p.add_argument("--beta-amari", type=float, default=None)

    def add_io(p):
        p.add_argument("--clamp-eps", type=float, default=None)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--precision", type=int, default=None)

    p_compute = sub.add_parser("compute", help="divergence between two density files")
    p_compute.add_argument("p_file")
    p_compute.add_argument("q_file")
    add_method(p_compute)
    add_alpha(p_compute)
    add_io(p_compute)
    p_compute.set_defaults(func=cmd_compute)

    p_sweep = sub.add_parser("sweep", help="alpha sweep as CSV")
    p_sweep.add_argument("p_file")
    p_sweep.add_argument("q_file")
    p_sweep.add_argument("--range", required=True, help="start:end:step within [0,1]")
    add_method(p_sweep)
    add_io(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep, alpha=None, alpha_amari=None)

    p_check = sub.add_parser("check", help="strict-comparability certificate")
    p_check.add_argument("f")
    p_check.add_argument("g")
    p_check.add_argument("--conformal", action="store_true")
    p_check.set_defaults(func=cmd_check)

    p_cauchy = sub.add_parser("cauchy", help="(A,H) closed form vs quadrature for scale-Cauchy densities")
    p_cauchy.add_argument("--s1", type=float, required=True)
    p_cauchy.add_argument("--s2", type=float, required=True)
    p_cauchy.add_argument("--alpha", type=float, required=True)
    p_cauchy.add_argument("--half-width", type=float, default=None)
    p_cauchy.add_argument("--n", type=int, default=1_000_001)
    p_cauchy.set_defaults(func=cmd_cauchy)

    p_centroid = sub.add_parser("centroid", help="divergence centroid of density files")
    p_centroid.add_argument("files", nargs="+")
    p_centroid.add_argument("--weights", default=None, help="comma-separated positive weights")
    p_centroid.add_argument("--f", default="identity")
    p_centroid.add_argument("--g", default="log")
    p_centroid.add_argument("--alpha", type=float, default=1.0)
    p_centroid.add_argument("--side", choices=("left", "right", "jeffreys"), default="right")
    p_centroid.add_argument("--max-iter", type=int, default=500)
    p_centroid.add_argument("--tol", type=float, default=1e-10)
    p_centroid.add_argument("--clamp-eps", type=float, default=None)
    p_centroid.set_defaults(func=cmd_centroid)

    p_selftest = sub.add_parser("selftest", help="run the seeded invariant suite")
    p_selftest.add_argument("--seed", type=int, default=0)
    p_selftest.add_argument("--break-duality", action="store_true", help=argparse.SUPPRESS)
    p_selftest.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MeanDivError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
