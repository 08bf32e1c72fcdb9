from __future__ import annotations

import random
from fractions import Fraction

import pytest

from gccp.core import Instance, load_fixture
from gccp.expectation import q_from_tau
from gccp.exactmath import round_fixed
from gccp.oracle import CapExceeded, brute_T, brute_tau
from gccp.transversoul import (ALPHA_EXAMPLE_CARDS, alpha_example, count_transversouls, enumerate_transversouls,
                               expand_alpha, verify_alpha_example_rows)

from conftest import random_instance

EXAMPLE_T = (0, 0, 0, 1, 41, 274, 616, 699, 481, 219, 66, 12, 1)


def random_alpha(rng, inst):
    return tuple(rng.randint(1, min(3, len(g))) for g in inst.goals)


def test_example_all_strategies():
    inst = alpha_example()
    assert brute_T(inst, inst.alpha) == EXAMPLE_T
    for strategy in ("enumerate", "reduce", "auto"):
        assert count_transversouls(inst, strategy=strategy).counts == EXAMPLE_T
    assert count_transversouls(load_fixture("alpha_toy")).counts == EXAMPLE_T


def test_example_rows():
    check = verify_alpha_example_rows()
    assert check, check.problems
    assert ALPHA_EXAMPLE_CARDS["T"] == EXAMPLE_T[1:]


def test_example_q_values():
    Q = q_from_tau(EXAMPLE_T)
    assert Q[6] == Fraction(616, 924)
    printed = ["0", "0", "0.005", "0.083", "0.346", "0.667", "0.883", "0.972", "0.995", "1", "1", "1"]
    for k, p in enumerate(printed, 1):
        assert Fraction(round_fixed(Q[k], 3)) == Fraction(p)


def test_strategies_agree_with_brute_force():
    rng = random.Random(31)
    for _ in range(150):
        inst = random_instance(rng, max_w=10, max_h=4)
        alpha = random_alpha(rng, inst)
        want = brute_T(inst, alpha)
        assert enumerate_transversouls(inst, alpha) == want
        assert count_transversouls(inst, alpha, strategy="reduce").counts == want


def test_plain_alpha_is_tau():
    rng = random.Random(4)
    for _ in range(30):
        inst = random_instance(rng)
        assert count_transversouls(inst).counts == brute_tau(inst)


def test_raising_a_threshold_never_adds_sets():
    rng = random.Random(12)
    for _ in range(60):
        inst = random_instance(rng, max_w=10, max_h=4)
        alpha = random_alpha(rng, inst)
        j = rng.randrange(inst.h)
        if alpha[j] == len(inst.goals[j]):
            continue
        higher = alpha[:j] + (alpha[j] + 1,) + alpha[j + 1:]
        lo = count_transversouls(inst, alpha).counts
        hi = count_transversouls(inst, higher).counts
        assert all(b <= a for a, b in zip(lo, hi))


def test_full_threshold_means_whole_goal():
    inst = Instance.from_sets(5, [[0, 1, 2]], alpha=(3,))
    # every set containing {0,1,2}: C(2, k-3)
    assert count_transversouls(inst).counts == (0, 0, 0, 1, 2, 1)


def test_expand_alpha():
    inst = Instance.from_sets(4, [range(4)])
    assert len(expand_alpha(inst, (2,))) == 4
    assert all(len(g) == 3 for g in expand_alpha(inst, (2,)))


def test_caps_and_errors():
    wide = Instance.from_sets(30, [range(30)], alpha=(10,))
    with pytest.raises(CapExceeded):
        count_transversouls(wide, budget=10)
    with pytest.raises(ValueError):
        count_transversouls(alpha_example(), strategy="magic")
    with pytest.raises(ValueError):
        count_transversouls(alpha_example(), alpha=(1, 1))
