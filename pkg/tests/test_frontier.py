from __future__ import annotations

import random

import pytest

from gccp.apps import ChessSpec, build_chess, sweep_order
from gccp.core import Instance, load_fixture
from gccp.frontier import FrontierTimeout, frontier_tau
from gccp.oracle import brute_tau
from gccp.tralg import tau_of

from conftest import random_instance


def test_toy():
    assert frontier_tau(load_fixture("toy_g1")) == (0, 0, 7, 37, 63, 55, 28, 8, 1)


def test_against_brute_force_in_any_order():
    rng = random.Random(99)
    for _ in range(250):
        inst = random_instance(rng)
        order = list(range(inst.w))
        rng.shuffle(order)
        assert frontier_tau(inst, order) == brute_tau(inst)


def test_wide_instance_against_row_decomposition():
    # 30 coupons: coefficients need the full slot width
    rng = random.Random(1)
    inst = random_instance(rng, max_w=30, max_h=8)
    while inst.w < 25:
        inst = random_instance(rng, max_w=30, max_h=8)
    assert frontier_tau(inst) == tau_of(inst)


def test_kings_agree_with_row_decomposition():
    inst = build_chess(ChessSpec("king"))
    assert frontier_tau(inst, sweep_order("king")) == tau_of(inst)


def test_bad_order():
    with pytest.raises(ValueError):
        frontier_tau(Instance.from_sets(3, [[0, 1]]), [0, 0, 1])


def test_timeout():
    with pytest.raises(FrontierTimeout):
        frontier_tau(build_chess(ChessSpec("queen")), timeout=0.0)


def test_progress():
    seen = []
    frontier_tau(load_fixture("toy_g1"), progress=lambda i, n: seen.append(i))
    assert seen == list(range(8))
