"""Counting sets that meet goal ``i`` at least ``alpha[i]`` times ("transversouls").

Two interchangeable strategies:

``enumerate``
    Walk the coupons in order, choosing each in or out, with one counter per
    goal capped at its threshold.  Branches that can no longer reach a
    threshold are cut, and identical (position, counters) states are merged,
    so the walk returns a count polynomial instead of listing sets.

``reduce``
    ``|X & G| >= a`` holds iff X hits every ``(|G| - a + 1)``-subset of G.
    Replace each goal by those subsets and count plain transversals of the
    expanded hypergraph with the row decomposition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .core import Instance, check_alpha, reduce_goals
from .exactmath import binomial
from .oracle import CapExceeded
from .rows import Row, count_polynomial, row_cardinality, row_contains, rows_disjoint
from .tralg import tau_of

__all__ = [
    "TVector",
    "count_transversouls",
    "enumerate_transversouls",
    "expand_alpha",
    "reduce_transversouls",
    "alpha_example",
    "ALPHA_EXAMPLE_ROWS",
    "ALPHA_EXAMPLE_CARDS",
    "RowCheck",
    "verify_alpha_example_rows",
    "ENUM_CAP",
    "EXPANSION_BUDGET",
]

ENUM_CAP = 26
EXPANSION_BUDGET = 100_000


@dataclass(frozen=True)
class TVector:
    counts: tuple[int, ...]
    alpha: tuple[int, ...]
    strategy: str = ""

    def __getitem__(self, k: int) -> int:
        return self.counts[k]

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)


def enumerate_transversouls(inst: Instance, alpha: Sequence[int]) -> tuple[int, ...]:
    w, h = inst.w, inst.h
    alpha = tuple(alpha)
    # goals served by each coupon, and how many coupons of each goal remain from i on
    serves = [tuple(j for j in range(h) if i in inst.goals[j]) for i in range(w)]
    remaining = [[0] * h for _ in range(w + 1)]
    for i in range(w - 1, -1, -1):
        remaining[i] = list(remaining[i + 1])
        for j in serves[i]:
            remaining[i][j] += 1

    @lru_cache(maxsize=None)
    def walk(i: int, have: tuple[int, ...]) -> tuple[int, ...]:
        # have[j] = min(count so far, alpha[j]); result[c] = completions using c more coupons
        rem = remaining[i]
        for j in range(h):
            if have[j] + rem[j] < alpha[j]:
                return ()
        if i == w:
            return (1,)
        skip = walk(i + 1, have)
        if serves[i]:
            bumped = list(have)
            for j in serves[i]:
                if bumped[j] < alpha[j]:
                    bumped[j] += 1
            take = walk(i + 1, tuple(bumped))
        else:
            take = skip
        n = max(len(skip), len(take) + 1)
        out = [0] * n
        for c, v in enumerate(skip):
            out[c] += v
        for c, v in enumerate(take):
            out[c + 1] += v
        return tuple(out)

    poly = walk(0, (0,) * h)
    walk.cache_clear()
    return tuple(poly) + (0,) * (w + 1 - len(poly))


def expand_alpha(inst: Instance, alpha: Sequence[int]) -> list[frozenset[int]]:
    """Plain hitting constraints equivalent to the thresholded goals."""
    out: list[frozenset[int]] = []
    for g, a in zip(inst.goals, alpha):
        m = len(g)
        if a == 1:
            out.append(frozenset(g))
        else:
            out.extend(frozenset(c) for c in itertools.combinations(sorted(g), m - a + 1))
    return out


def _expanded_size(inst: Instance, alpha: Sequence[int]) -> int:
    return sum(binomial(len(g), len(g) - a + 1) for g, a in zip(inst.goals, alpha))


def reduce_transversouls(inst: Instance, alpha: Sequence[int], budget: int = EXPANSION_BUDGET) -> tuple[int, ...]:
    size = _expanded_size(inst, alpha)
    if size > budget:
        raise CapExceeded(f"alpha expansion needs {size} goals, budget is {budget}")
    expanded = Instance.from_sets(inst.w, expand_alpha(inst, alpha))
    return tau_of(reduce_goals(expanded))


def count_transversouls(inst: Instance, alpha: Sequence[int] | None = None, strategy: str = "auto",
                        cap: int = ENUM_CAP, budget: int = EXPANSION_BUDGET) -> TVector:
    """T_k for k = 0..w.

    ``strategy`` is ``"enumerate"``, ``"reduce"`` or ``"auto"``; auto prefers
    the reduction while its expansion fits ``budget`` and otherwise enumerates
    when ``w <= cap``.
    """
    if alpha is None:
        alpha = inst.alpha if inst.alpha is not None else (1,) * inst.h
    alpha = tuple(alpha)
    check_alpha(inst, alpha)
    if strategy not in ("auto", "enumerate", "reduce"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "reduce" or (strategy == "auto" and _expanded_size(inst, alpha) <= budget):
        return TVector(reduce_transversouls(inst, alpha, budget), alpha, "reduce")
    if inst.w > cap:
        raise CapExceeded(f"w = {inst.w} exceeds the enumeration cap {cap} and the expansion budget is exceeded")
    return TVector(enumerate_transversouls(inst, alpha), alpha, "enumerate")


# ---------------------------------------------------------------------------
# Twelve-coupon, three-goal example with thresholds (2, 1, 3)
# ---------------------------------------------------------------------------

def alpha_example() -> Instance:
    goals = [range(0, 5), range(5, 8), [3, 4, 5, 8, 9, 10, 11]]
    return Instance.from_sets(12, goals, alpha=(2, 1, 3))


_ALPHA_ROWS = [
    "e(2) e(2) e(2) 0 0 0 e(1) e(1) e(3) e(3) e(3) e(3)",
    "e(2) e(2) e(2) 0 0 1 2 2 e'(2) e'(2) e'(2) e'(2)",
    "e(1) e(1) e(1) g(1) g(1) 0 e'(1) e'(1) e(2) e(2) e(2) e(2)",
    "e(1) e(1) e(1) g(1) g(1) 1 2 2 e'(1) e'(1) e'(1) e'(1)",
    "2 2 2 1 1 0 e(1) e(1) e'(1) e'(1) e'(1) e'(1)",
    "2 2 2 1 1 1 2 2 2 2 2 2",
]
ALPHA_EXAMPLE_ROWS: tuple[Row, ...] = tuple(Row.from_symbols(s.split()) for s in _ALPHA_ROWS)

# Card(row, k) for k = 1..12, then the column sums T_k
ALPHA_EXAMPLE_CARDS: dict[str, tuple[int, ...]] = {
    "r1": (0, 0, 0, 0, 0, 24, 26, 9, 1, 0, 0, 0),
    "r2": (0, 0, 0, 0, 18, 54, 61, 33, 9, 1, 0, 0),
    "r3": (0, 0, 0, 0, 72, 156, 144, 70, 18, 2, 0, 0),
    "r4": (0, 0, 0, 24, 108, 212, 238, 166, 72, 18, 2, 0),
    "r5": (0, 0, 0, 8, 40, 86, 104, 77, 35, 9, 1, 0),
    "r6": (0, 0, 1, 9, 36, 84, 126, 126, 84, 36, 9, 1),
    "T": (0, 0, 1, 41, 274, 616, 699, 481, 219, 66, 12, 1),
}


@dataclass
class RowCheck:
    ok: bool
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def verify_alpha_example_rows() -> RowCheck:
    """Check the six hard-coded rows: disjoint, covering exactly, with the listed counts."""
    inst = alpha_example()
    rows = ALPHA_EXAMPLE_ROWS
    problems = []
    for (i, a), (j, b) in itertools.combinations(enumerate(rows, 1), 2):
        if not rows_disjoint(a, b):
            problems.append(f"rows r{i} and r{j} overlap")
    masks = inst.masks
    alpha = inst.alpha
    for x in range(1 << inst.w):
        member = all(bin(x & m).count("1") >= a for m, a in zip(masks, alpha))
        hits = sum(row_contains(r, x) for r in rows)
        if hits != int(member):
            problems.append(f"set {x:012b} is in {hits} rows but is {'a' if member else 'not a'} transversoul")
            if len(problems) > 20:
                break
    for i, r in enumerate(rows, 1):
        got = count_polynomial(r)[1:]
        if got != ALPHA_EXAMPLE_CARDS[f"r{i}"]:
            problems.append(f"Card(r{i}, k) = {got}, expected {ALPHA_EXAMPLE_CARDS[f'r{i}']}")
    total = [sum(count_polynomial(r)[k] for r in rows) for k in range(1, 13)]
    if tuple(total) != ALPHA_EXAMPLE_CARDS["T"]:
        problems.append(f"column sums {total} differ from T row")
    if row_cardinality(rows[2]) != 462:
        problems.append(f"|r3| = {row_cardinality(rows[2])}, expected 462")
    return RowCheck(not problems, problems)
