"""Acceptance criteria, one test each.  Every test records a PASS/FAIL line
that is repeated in the terminal summary.

Criterion 7 cannot be met as stated for rooks, queens and one king value;
the reasons are in the project's decisions ledger.  That test is a strict
xfail, and the exact chess values are checked against independent
references in test_criterion_7_consistency instead.
"""

from __future__ import annotations

import json
import random
import time
from fractions import Fraction
from math import comb
from pathlib import Path

import numpy as np
import pytest

from gccp.apps import ChessSpec, build_chess, build_roulette, sweep_order
from gccp.baseline import (homogeneous_length, incl_excl_length, row_polynomial_length, triangular_asymptotic,
                           triangular_probabilities)
from gccp.core import load_fixture, reduce_goals
from gccp.exactmath import harmonic, round_fixed, round_sig
from gccp.expectation import (crosscheck_replacement_series, expected_length_nr, expected_length_r, goal_expectations,
                              laplace_exact_k, length_r_forms, q_from_tau, report_from_tau)
from gccp.frontier import frontier_tau
from gccp.oracle import brute_tau, simulate
from gccp.rows import count_polynomial, row_cardinality, rows_disjoint
from gccp.transversoul import ALPHA_EXAMPLE_ROWS, alpha_example, count_transversouls
from gccp.tralg import decompose, tau_of, tau_vector

from conftest import random_instance, record_criterion

DATA = Path(__file__).parent / "data"


def stored_queen_tau(variant: str) -> tuple[int, ...]:
    doc = json.loads((DATA / f"queen_{variant}_tau.json").read_text())
    return tuple(int(x) for x in doc["tau"])


def test_criterion_1_toy_instance():
    t0 = time.perf_counter()
    inst = load_fixture("toy_g1")
    dec = decompose(reduce_goals(inst))
    tau = tau_vector(dec)
    size = sum(row_cardinality(r) for r in dec.rows)
    rep = report_from_tau(tau, inst.h)
    elapsed = time.perf_counter() - t0
    checks = {
        "tau": tau == (0, 0, 7, 37, 63, 55, 28, 8, 1),
        "|Tr|": size == 199,
        "l_nr": rep.length_nr == Fraction(449, 140),
        "l_r": rep.length_r == Fraction(59, 15),
        "var_r": rep.var_r == Fraction(836, 225),
        "var_nr": rep.var_nr == Fraction(18339, 19600),
        "time": elapsed < 1.0,
    }
    ok = record_criterion(1, all(checks.values()),
                          f"tau={tau} |Tr|={size} l_nr={rep.length_nr} l_r={rep.length_r} "
                          f"var_r={rep.var_r} var_nr={rep.var_nr} ({elapsed:.3f} s)")
    assert ok, checks


def test_criterion_2_roulette():
    t0 = time.perf_counter()
    inst = build_roulette()
    rep = report_from_tau(tau_of(reduce_goals(inst)), inst.h, variance=False)
    elapsed = time.perf_counter() - t0
    ok = (rep.length_r == Fraction(54728027202913, 7600186994400)
          and rep.length_nr == Fraction(65774035502891, 10043104242600)
          and elapsed < 60)
    record_criterion(2, ok, f"l_r={rep.length_r} l_nr={rep.length_nr} ({elapsed:.2f} s)")
    assert ok


def test_criterion_3_triangular_benchmark():
    want = {10: "68.9846", 15: "150.606", 27: "474.463"}
    got, times = {}, {}
    for h in want:
        t0 = time.perf_counter()
        got[h] = row_polynomial_length(triangular_probabilities(h))
        times[h] = time.perf_counter() - t0
    digits_ok = all(round_sig(got[h], 6) == want[h] for h in want)
    ie_ok = all(incl_excl_length(triangular_probabilities(h)) == row_polynomial_length(triangular_probabilities(h))
                for h in range(1, 13))
    asym = triangular_asymptotic(15)
    asym_ok = abs(asym - 150.624) < 1e-3
    ok = digits_ok and ie_ok and asym_ok and times[27] < 60
    record_criterion(3, ok, " ".join(f"h={h}:{round_sig(got[h], 6)}" for h in want)
                     + f" incl-excl(h<=12) agrees={ie_ok} asymptotic(15)={asym:.3f} h=27 in {times[27]:.2f} s")
    assert ok


def test_criterion_4_transversouls():
    inst = alpha_example()
    r3 = ALPHA_EXAMPLE_ROWS[2]
    T = count_transversouls(inst).counts
    Q = q_from_tau(T)
    q6 = Fraction(616 * 720 * 720, 479001600)
    ok = (row_cardinality(r3) == 462
          and count_polynomial(r3)[7] == 144
          and T[1:] == (0, 0, 1, 41, 274, 616, 699, 481, 219, 66, 12, 1)
          and Q[6] == q6
          and round_fixed(Q[6], 3) == "0.667")
    record_criterion(4, ok, f"|r3|={row_cardinality(r3)} Card(r3,7)={count_polynomial(r3)[7]} "
                     f"T_1..T_12={T[1:]} Q_6={Q[6]}~{round_fixed(Q[6], 3)}")
    assert ok


def test_criterion_5_goal_expectation():
    _, e4 = goal_expectations(load_fixture("toy_g1"), 4, True)
    ok = round_fixed(e4, 1) == "3.7"
    record_criterion(5, ok, f"e_4={e4}~{round_fixed(e4, 4)}")
    assert ok


def test_criterion_6_homogeneous():
    a = homogeneous_length(6)
    b = incl_excl_length([Fraction(1, 6)] * 6)
    ok = a == b == Fraction(147, 10)
    record_criterion(6, ok, f"h*H(h)={a} inclusion-exclusion={b}")
    assert ok


# ---------------------------------------------------------------------------
# Criterion 7: chess domination
# ---------------------------------------------------------------------------

REFERENCE_CHESS = {
    ("king", "closed"): ("30.4091", "42.4282"),
    ("rook", "closed"): ("15.0045", "17.1308"),
    ("queen", "closed"): ("11.8402", "15.2945"),
    ("queen", "open"): ("12.7094", "16.3149"),
}


def chess_tau(piece: str, variant: str) -> tuple[int, ...]:
    if piece == "queen":
        return stored_queen_tau(variant)  # recomputed by the slow test below
    return frontier_tau(build_chess(ChessSpec(piece, variant)), sweep_order(piece))


def rook_tau_closed_form() -> tuple[int, ...]:
    """Rooks dominate (closed) iff every rank or every file holds one."""
    def all_ranks(k):
        return sum((-1) ** i * comb(8, i) * comb(8 * (8 - i), k) for i in range(9))

    def ranks_and_files(k):
        return sum((-1) ** (i + j) * comb(8, i) * comb(8, j) * comb((8 - i) * (8 - j), k)
                   for i in range(9) for j in range(9))

    return tuple(2 * all_ranks(k) - ranks_and_files(k) for k in range(65))


def test_criterion_7_consistency():
    """Our exact chess values against independent references."""
    kings = build_chess(ChessSpec("king"))
    assert frontier_tau(kings, sweep_order("king")) == tau_of(reduce_goals(kings))
    assert chess_tau("rook", "closed") == rook_tau_closed_form()
    for variant, minimum in (("closed", 4860), ("open", 352)):
        tau = stored_queen_tau(variant)
        assert tau[:5] == (0,) * 5 and tau[5] == minimum
        rep = report_from_tau(tau, 64, variance=False)
        inst = build_chess(ChessSpec("queen", variant))
        for with_rep, exact in ((False, rep.length_nr), (True, rep.length_r)):
            s = simulate(inst, with_rep, trials=200_000, seed=71)
            assert s.within(exact), (variant, with_rep, s.mean, s.stderr, float(exact))
    # open coverage is stricter than closed, so every count is smaller
    assert all(a <= b for a, b in zip(stored_queen_tau("open"), stored_queen_tau("closed")))


@pytest.mark.slow
@pytest.mark.parametrize("variant", ["closed", "open"])
def test_queen_counts_recomputed(variant):
    t0 = time.perf_counter()
    tau = frontier_tau(build_chess(ChessSpec("queen", variant)), sweep_order("queen"))
    assert tau == stored_queen_tau(variant)
    print(f"queens {variant}: exact count in {time.perf_counter() - t0:.0f} s")


@pytest.mark.xfail(strict=True, reason="reference rook/queen values and one king rounding are not reproduced "
                                       "by the stated coverage model; see decisions ledger")
def test_criterion_7_chess():
    parts, ok = [], True
    for (piece, variant), (p_nr, p_r) in REFERENCE_CHESS.items():
        rep = report_from_tau(chess_tau(piece, variant), 64, variance=False)
        g_nr, g_r = round_fixed(rep.length_nr, 4), round_fixed(rep.length_r, 4)
        good = (g_nr, g_r) == (p_nr, p_r)
        if piece == "queen" and not good:
            # fall back to Monte-Carlo as the criterion allows
            inst = build_chess(ChessSpec(piece, variant))
            sims = [simulate(inst, rep_, trials=1_000_000, seed=7) for rep_ in (False, True)]
            good = sims[0].within(float(p_nr)) and sims[1].within(float(p_r))
            g_nr += f"(mc {sims[0].mean:.4f})"
            g_r += f"(mc {sims[1].mean:.4f})"
        ok &= good
        parts.append(f"{piece}s {variant}: {g_nr}/{g_r} vs {p_nr}/{p_r}")
    record_criterion(7, ok, "; ".join(parts))
    assert ok


# ---------------------------------------------------------------------------

def test_criterion_8_properties():
    rng = random.Random(808)
    results = {}
    agree = disjoint = q_ok = bounds = forms = 0
    for _ in range(200):
        inst = random_instance(rng, max_w=12, max_h=6)
        tau = tau_of(reduce_goals(inst))
        agree += tau == brute_tau(inst)
        if inst.w <= 9:
            rows = decompose(reduce_goals(inst)).rows
            disjoint += all(rows_disjoint(a, b) for i, a in enumerate(rows) for b in rows[i + 1:])
        else:
            disjoint += 1
        q = q_from_tau(tau)
        q_ok += q[0] == 0 and q[-1] == 1 and all(a <= b for a, b in zip(q, q[1:]))
        lnr, lr = expected_length_nr(q), expected_length_r(q)
        bounds += lnr <= lr <= inst.w * harmonic(inst.w)
        forms += len(set(length_r_forms(q))) == 1
    results["tau=brute"] = agree == 200
    results["disjoint"] = disjoint == 200
    results["q"] = q_ok == 200
    results["bounds"] = bounds == 200
    results["forms"] = forms == 200

    toy = load_fixture("toy_g1")
    tau = tau_of(toy)
    br = crosscheck_replacement_series(tau, 200)
    results["series"] = br.contains(Fraction(59, 15)) and br.gap < Fraction(1, 10 ** 6)
    rep = report_from_tau(tau, toy.h, variance=False)
    s_nr = simulate(toy, False, trials=100_000, seed=8)
    s_r = simulate(toy, True, trials=100_000, seed=9)
    results["monte-carlo"] = s_nr.within(rep.length_nr) and s_r.within(rep.length_r)
    ok = all(results.values())
    record_criterion(8, ok, " ".join(f"{k}={'ok' if v else 'NO'}" for k, v in results.items())
                     + f" series gap={float(br.gap):.1e}")
    assert ok, results


def test_criterion_9_laplace():
    sums_ok = all(sum(laplace_exact_k(w, n, k) for k in range(11)) == 1
                  for w in range(1, 11) for n in range(0, 11))
    rng = np.random.default_rng(9)
    sims_ok = True
    for w, n in ((6, 4), (10, 10), (3, 7)):
        exact = sum(k * laplace_exact_k(w, n, k) for k in range(n + 1))
        draws = rng.integers(0, w, size=(100_000, n))
        distinct = (np.sort(draws, axis=1)[:, 1:] != np.sort(draws, axis=1)[:, :-1]).sum(axis=1) + 1
        se = distinct.std(ddof=1) / np.sqrt(distinct.size)
        sims_ok &= abs(distinct.mean() - float(exact)) <= 4 * se
    ok = sums_ok and sims_ok
    record_criterion(9, ok, f"sum p(k)=1 for w,n<=10: {sums_ok}; distinct-count simulation within 4 SE: {sims_ok}")
    assert ok
