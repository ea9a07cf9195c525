"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 I/O error.
"""
import argparse
import json
import os
from pathlib import Path
import sys

from . import asymptotic, finite_lb, scalar_ub, semidet
from .model import ProblemParams
from .sweep import MODES, SweepSpec, run_sweep, write_csv
from .validation import run_checks

OUTPUT_DIR_ENV = "WITSEXT_OUTPUT_DIR"

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _number(text):
    """Float, or a binary fixed-point literal such as 0b0.01."""
    try:
        if text.lower().startswith("0b"):
            return semidet.parse_binary(text[2:])
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _bound_report(params, modes):
    out = {"params": {"k2": params.k2, "sigma0_sq": params.sigma0_sq,
                      "r_ex": params.r_ex, "m": params.m, "p_ex": params.p_ex}}
    if "asymptotic" in modes:
        b = asymptotic.bound(params)
        out["asymptotic"] = {
            "lower": b.lower, "upper": b.upper, "ratio": b.ratio,
            "winner": b.upper_strategy, "p_star": b.p_star_lower,
            "kappa_new_at_pstar": b.kappa_new_at_pstar,
            "case": asymptotic.classify_case(b.p_star_lower, params.sigma0_sq, params.r_ex),
        }
    if "finite_lb" in modes or "scalar" in modes:
        lo = finite_lb.optimized_lower_bound(params)
        out["finite_lb"] = {"lower": lo.value, "p_star": lo.p_star,
                            "sigma_g_star": lo.sigma_g_star, "l_star": lo.l_star}
        if "scalar" in modes:
            up = scalar_ub.total_upper(params)
            out["scalar"] = {
                "lower": lo.value, "upper": up.total,
                "ratio": up.total / lo.value if lo.value > 0 else None,
                "winner": up.winner, "binning_p_star": up.p_star, "a_star": up.a_star,
                "branches": up.branches, "assumptions": list(up.assumptions),
            }
    if "gauss_ext" in modes:
        gp = params if params.p_ex is not None else params.with_(p_ex=params.sigma0_sq)
        binning = asymptotic.gauss_ext_binning_cost(gp)
        baseline = asymptotic.gauss_ext_baseline_cost(gp)
        out["gauss_ext"] = {
            "p_ex": gp.p_ex, "effective_rate": float(asymptotic.effective_rate(gp.p_ex)),
            "binning": binning, "baseline": baseline,
            "ratio": baseline / binning if binning > 0 else None,
        }
    return out


def cmd_bound(args, parser):
    modes = set(args.mode)
    if "scalar" in modes and args.m != 1:
        parser.error("--mode scalar needs --m 1")
    try:
        params = ProblemParams(args.k2, args.sigma0_sq, args.r_ex, args.m, args.p_ex)
    except ValueError as exc:
        parser.error(str(exc))
    json.dump(_bound_report(params, modes), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def _sweep_spec(args, parser):
    try:
        if args.config:
            spec = SweepSpec.from_json(Path(args.config).read_text())
        else:
            spec = SweepSpec(
                k_grid=(args.k_min, args.k_max, args.k_count),
                sigma0_grid=(args.sigma0_min, args.sigma0_max, args.sigma0_count),
                r_ex_list=tuple(args.r_ex), m=args.m, mode=args.mode, p_ex=args.p_ex,
            )
    except OSError as exc:
        raise _IOFailure(f"cannot read config {args.config}: {exc}")
    except (ValueError, TypeError, KeyError) as exc:
        parser.error(f"invalid sweep specification: {exc}")
    return spec


class _IOFailure(Exception):
    pass


def cmd_sweep(args, parser):
    spec = _sweep_spec(args, parser)
    out = args.out
    if out is None:
        out = Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / f"sweep_{spec.mode}.csv"
    result = run_sweep(spec, workers=args.workers)
    try:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        with out.open("w", newline="") as fh:
            write_csv(result, fh)
    except OSError as exc:
        raise _IOFailure(f"cannot write {out}: {exc}")
    print(f"wrote {len(result.rows)} rows to {out}")
    for line in result.summary_lines():
        print(line)
    return EXIT_OK


def cmd_validate(args, parser):
    if args.n_samples < 1000:
        parser.error("--n-samples must be at least 1000")
    results = run_checks(args.n_samples, args.seed)
    for r in results:
        print(f"{r.status.upper():4s}  {r.name}  ({r.detail})")
    failed = [r for r in results if r.status == "fail"]
    skipped = sum(r.status == "skip" for r in results)
    print(f"{len(results) - len(failed) - skipped} passed, {len(failed)} failed, {skipped} skipped")
    if failed:
        print(f"first failing check: {failed[0].name}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def _describe(strategy):
    parts = []
    if strategy.sent_bits:
        parts.append("send " + ",".join(f"b{i}" for i in sorted(strategy.sent_bits)))
    if strategy.forced_bits:
        parts.append("force " + ",".join(f"b{i}" for i in sorted(strategy.forced_bits)))
    return "; ".join(parts) or "do nothing"


def cmd_semidet(args, parser):
    if args.bits > semidet.MAX_BRUTE_FORCE_BITS:
        parser.error(f"--bits is limited to {semidet.MAX_BRUTE_FORCE_BITS}")
    try:
        params = semidet.SemidetParams(args.sigma0_pow, args.cap, args.bits)
    except ValueError as exc:
        parser.error(str(exc))
    fmt = semidet.format_binary
    print(f"state power {fmt(params.sigma0_pow)} (values in binary), external capacity {params.cap_ext} bits, "
          f"{params.num_bits} bits (noise power 1)")
    if args.budget is not None:
        strat = semidet.optimal_strategy(params, args.budget)
        inp, mmse = semidet.semidet_cost(params, strat, args.budget)
        print(f"budget pow(u1) <= {fmt(args.budget)}: {_describe(strat)}")
        print(semidet.render(params, strat))
        print(f"pow(u1)={fmt(inp)} pow(x2)={fmt(mmse)}")
    lo = params.position(params.num_bits)
    budgets = [0.0] + [2.0 ** b for b in range(lo - 1, params.top + 2)]
    print(f"{'budget':>12} {'optimal':>12} {'brute':>12}  strategy")
    agree = True
    for b in budgets:
        opt = semidet.optimal_tradeoff(params, b)
        brute = semidet.brute_force_optimal(params, b)
        agree &= opt == brute
        strat = semidet.optimal_strategy(params, b)
        print(f"{fmt(b):>12} {fmt(opt):>12} {fmt(brute):>12}  {_describe(strat)}")
    print("brute force confirms optimal tradeoff" if agree else "MISMATCH with brute force")
    return EXIT_OK if agree else EXIT_CHECK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="witsext",
        description="Bounds and strategies for Witsenhausen's counterexample with an external channel.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="evaluate bounds at one parameter point (JSON)")
    p.add_argument("--k2", type=float, required=True)
    p.add_argument("--sigma0-sq", type=float, required=True)
    p.add_argument("--r-ex", type=float, default=0.0)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--p-ex", type=float, default=None,
                   help="Gaussian external-channel power (gauss_ext mode; default sigma0^2)")
    p.add_argument("--mode", nargs="+", choices=MODES, default=["asymptotic"])
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", help="grid sweep written as CSV")
    p.add_argument("--config", help="JSON file with SweepSpec fields (overrides grid flags)")
    p.add_argument("--mode", choices=MODES, default="asymptotic")
    p.add_argument("--k-min", type=float, default=1e-2)
    p.add_argument("--k-max", type=float, default=1e2)
    p.add_argument("--k-count", type=int, default=60)
    p.add_argument("--sigma0-min", type=float, default=1e-2)
    p.add_argument("--sigma0-max", type=float, default=1e2)
    p.add_argument("--sigma0-count", type=int, default=60)
    p.add_argument("--r-ex", type=float, nargs="+", default=[0, 1, 2, 3, 4, 5])
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--p-ex", type=float, default=None)
    p.add_argument("--out", help=f"output CSV (default ${OUTPUT_DIR_ENV}/sweep_<mode>.csv)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="Monte Carlo vs analytic checks")
    p.add_argument("--n-samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=2024)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("semidet", help="semi-deterministic bit model demo")
    p.add_argument("--sigma0-pow", type=_number, default=4.0,
                   help="state power, a power of two (e.g. 4 or 0b100)")
    p.add_argument("--cap", type=int, default=2)
    p.add_argument("--bits", type=int, default=5)
    p.add_argument("--budget", type=_number, default=None,
                   help="input power budget pow(u1), e.g. 0b0.01")
    p.set_defaults(func=cmd_semidet)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except _IOFailure as exc:
        print(f"witsext: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
