"""Command-line interface.

Examples::

    gccp solve toy_g1.json --variance --goals 4
    gccp tau toy_g1.json --dump
    gccp transversoul alpha_toy.json
    gccp roulette --decimals 3
    gccp chess --piece rook --variant closed
    gccp chess --piece queen --simulate 1000000 --seed 7
    gccp simulate toy_g1.json --trials 100000 --seed 1 --replacement
    gccp bench --family triangular --h 10,15,27
    gccp baseline --probs 1/10,2/10,3/10,4/10

Exit status is 1 for invalid input and 2 when a size or time cap is hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Sequence

from .apps import ChessSpec, build_chess, build_roulette, sweep_order
from .baseline import bench_csv, homogeneous_length, incl_excl_length, run_benchmark, row_polynomial_length
from .core import Instance, InstanceError, load_instance_file, reduce_goals
from .exactmath import render_fraction, to_decimal
from .expectation import (GccpReport, expected_length_nr, expected_length_r, goal_expectations, q_from_tau,
                          report_from_tau)
from .frontier import FrontierTimeout, frontier_tau
from .oracle import CapExceeded, simulate
from .rows import row_cardinality
from .transversoul import count_transversouls
from .tralg import decompose, iter_rows, tau_of, tau_vector

__all__ = ["main", "compute_tau"]

METHODS = ("decompose", "frontier")


def compute_tau(inst: Instance, method: str = "decompose", timeout: float | None = None) -> tuple[int, ...]:
    if method == "decompose":
        return tau_of(reduce_goals(inst))
    if method == "frontier":
        return frontier_tau(inst, timeout=timeout)
    raise ValueError(f"unknown method {method!r}")


def _parse_list(text: str, conv=int) -> list:
    try:
        return [conv(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InstanceError(f"bad list {text!r}: {exc}") from None


def _fmt(label: str, x: Fraction, places: int) -> str:
    return f"{label} = {render_fraction(x)} ≈ {to_decimal(x, places, fixed=True)}"


def _print_report(rep: GccpReport, places: int, as_json: bool) -> None:
    if as_json:
        print(json.dumps(rep.to_dict(), indent=2))
        return
    for line in rep.lines(places, fixed=True):
        print(line)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_solve(args) -> int:
    inst = load_instance_file(args.file)
    if args.alpha:
        if inst.alpha is None:
            raise InstanceError("instance has no 'alpha' field")
        T = count_transversouls(inst)
        Q = q_from_tau(T.counts, inst.w)
        print(f"w = {inst.w}, h = {inst.h}, alpha = {list(T.alpha)}")
        print("T =", " ".join(map(str, T.counts)))
        print(_fmt("ℓ_nr", expected_length_nr(Q), args.decimals))
        print(_fmt("ℓ_r", expected_length_r(Q), args.decimals))
        return 0
    tau = compute_tau(inst, args.method)
    rep = report_from_tau(tau, inst.h, variance=args.variance)
    _print_report(rep, args.decimals, args.json)
    if args.goals is not None:
        n = args.goals
        per, e = goal_expectations(inst, n, True)
        print(_fmt(f"e_{n} (with replacement)", e, args.decimals))
        if n <= inst.w:
            per, e = goal_expectations(inst, n, False)
            print(_fmt(f"e_{n} (without replacement)", e, args.decimals))
    return 0


def cmd_tau(args) -> int:
    inst = reduce_goals(load_instance_file(args.file))
    if args.dump:
        dec = decompose(inst)
        print(dec.render())
        tau = tau_vector(dec)
        n_rows, total = len(dec), sum(row_cardinality(r) for r in dec.rows)
    else:
        n_rows = total = 0
        for r in iter_rows(inst):
            n_rows += 1
            total += row_cardinality(r)
        tau = tau_of(inst)
    print(f"rows = {n_rows}, |Tr| = {total}")
    print("tau =", " ".join(map(str, tau)))
    return 0


def cmd_transversoul(args) -> int:
    inst = load_instance_file(args.file)
    alpha = inst.alpha if inst.alpha is not None else (1,) * inst.h
    T = count_transversouls(inst, alpha, strategy=args.strategy)
    Q = q_from_tau(T.counts, inst.w)
    print(f"alpha = {list(alpha)} (strategy: {T.strategy})")
    print("k  T_k  Q_k")
    for k, (t, q) in enumerate(zip(T.counts, Q)):
        print(f"{k}  {t}  {render_fraction(q)} ≈ {to_decimal(q, args.decimals, fixed=True)}")
    return 0


def cmd_roulette(args) -> int:
    inst = build_roulette(args.layout)
    tau = compute_tau(inst, "decompose")
    rep = report_from_tau(tau, inst.h, variance=args.variance)
    _print_report(rep, args.decimals, args.json)
    return 0


def cmd_chess(args) -> int:
    inst = build_chess(ChessSpec(args.piece, args.variant))
    label = f"{args.piece}s, {args.variant}"
    if args.simulate:
        for rep, name in ((False, "ℓ_nr"), (True, "ℓ_r")):
            s = simulate(inst, rep, trials=args.simulate, seed=args.seed)
            print(f"{name}({label}) ≈ {s.mean:.{args.decimals}f} ± {s.stderr:.{args.decimals}f} "
                  f"(Monte-Carlo, {s.trials} trials)")
        return 0

    def progress(i, states):
        print(f"  coupon {i + 1}/64: {states} states", file=sys.stderr, flush=True)

    t0 = time.perf_counter()
    if args.method == "frontier":
        tau = frontier_tau(inst, sweep_order(args.piece), timeout=args.timeout, progress=progress if args.verbose else None)
    else:
        tau = compute_tau(inst, "decompose")
    rep = report_from_tau(tau, inst.h, variance=args.variance)
    print(_fmt(f"ℓ_nr({label})", rep.length_nr, args.decimals))
    print(_fmt(f"ℓ_r({label})", rep.length_r, args.decimals))
    if args.variance:
        print(_fmt("var_nr", rep.var_nr, args.decimals))
        print(_fmt("var_r", rep.var_r, args.decimals))
    print(f"({time.perf_counter() - t0:.1f} s)", file=sys.stderr)
    return 0


def cmd_simulate(args) -> int:
    inst = load_instance_file(args.file)
    alpha = inst.alpha if args.alpha else None
    s = simulate(inst, args.replacement, alpha=alpha, trials=args.trials, seed=args.seed)
    d = args.decimals
    print(f"trials = {s.trials}")
    print(f"mean = {s.mean:.{d}f}")
    print(f"variance = {s.variance:.{d}f}")
    print(f"stderr = {s.stderr:.{d}f}")
    print(f"cap hits = {s.cap_hits}")
    return 0


def cmd_bench(args) -> int:
    if args.family != "triangular":
        raise InstanceError(f"unknown family {args.family!r}")
    recs = run_benchmark(_parse_list(args.h), ie_cap=args.ie_cap)
    sys.stdout.write(bench_csv(recs, args.digits))
    return 0


def cmd_baseline(args) -> int:
    ps = _parse_list(args.probs, Fraction)
    v = incl_excl_length(ps)
    print(_fmt("inclusion-exclusion", v, args.decimals))
    if args.check:
        print(_fmt("row polynomial", row_polynomial_length(ps), args.decimals))
    if len(set(ps)) == 1:
        print(_fmt("h H(h)", homogeneous_length(len(ps)), args.decimals))
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--decimals", type=int, default=6, help="decimal places in rendered values")
    common.add_argument("--seed", type=int, default=0, help="seed for stochastic commands")

    p = argparse.ArgumentParser(prog="gccp", description="Exact generalized coupon-collector expectations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="expected lengths for an instance file")
    s.add_argument("file")
    s.add_argument("--alpha", action="store_true", help="use the instance's alpha thresholds")
    s.add_argument("--variance", action="store_true")
    s.add_argument("--goals", type=int, metavar="N", help="also print expected goals seen after N draws")
    s.add_argument("--method", choices=METHODS, default="decompose")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("tau", parents=[common], help="transversal counts and row decomposition")
    s.add_argument("file")
    s.add_argument("--dump", action="store_true", help="print every row")
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("transversoul", parents=[common], help="T and Q vectors for alpha thresholds")
    s.add_argument("file")
    s.add_argument("--strategy", choices=("auto", "enumerate", "reduce"), default="auto")
    s.set_defaults(func=cmd_transversoul)

    s = sub.add_parser("roulette", parents=[common], help="the 37-number wheel with 12 properties")
    s.add_argument("--layout", choices=("alt", "standard"), default="alt",
                   help="red/black coloring (alt: 19 black, 28 red)")
    s.add_argument("--variance", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_roulette)

    s = sub.add_parser("chess", parents=[common], help="expected pieces to dominate an 8x8 board")
    s.add_argument("--piece", choices=("queen", "rook", "king"), required=True)
    s.add_argument("--variant", choices=("closed", "open"), default="closed")
    s.add_argument("--simulate", type=int, metavar="N", help="Monte-Carlo with N trials instead of exact counting")
    s.add_argument("--method", choices=METHODS, default="frontier")
    s.add_argument("--timeout", type=float, default=None, help="seconds before giving up on exact counting")
    s.add_argument("--variance", action="store_true")
    s.add_argument("--verbose", "-v", action="store_true", help="per-coupon progress on stderr")
    s.set_defaults(func=cmd_chess)

    s = sub.add_parser("simulate", parents=[common], help="Monte-Carlo trial lengths")
    s.add_argument("file")
    s.add_argument("--trials", type=int, default=100_000)
    s.add_argument("--replacement", action="store_true")
    s.add_argument("--alpha", action="store_true", help="use the instance's alpha thresholds")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("bench", parents=[common], help="triangular-family benchmark as CSV")
    s.add_argument("--family", default="triangular")
    s.add_argument("--h", required=True, help="comma-separated list, e.g. 10,15,27")
    s.add_argument("--ie-cap", type=int, default=20, help="largest h for inclusion-exclusion")
    s.add_argument("--digits", type=int, default=6, help="significant digits in the decimal column")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("baseline", parents=[common], help="inclusion-exclusion for type probabilities")
    s.add_argument("--probs", required=True, help="comma-separated, e.g. 1/6,1/6,1/6,1/6,1/6,1/6")
    s.add_argument("--check", action="store_true", help="also compute via the row polynomial")
    s.set_defaults(func=cmd_baseline)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CapExceeded, FrontierTimeout) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InstanceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
