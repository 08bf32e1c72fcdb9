"""Transversal e-algorithm: split the family of hitting sets into disjoint rows.

Starting from the all-don't-care row, goals are imposed one at a time.  A row
that already hits the goal (a literal 1 inside it, or an ``e`` group lying
entirely inside it) passes through.  Otherwise let ``D`` be the don't-care
positions of the goal and ``F_1 .. F_t`` the fragments ``E_j & goal`` of the
``e`` groups that straddle it.  The satisfying part of the row splits into

* case 0: ``D`` becomes a new ``e`` group (at least one 1 in ``D``);
* case j: ``D`` and ``F_1 .. F_{j-1}`` are all 0, ``F_j`` becomes an ``e``
  group, and the rest ``E_j - F_j`` is freed to don't-cares since ``E_j``
  is satisfied already.  Each zeroed fragment ``F_i`` shrinks ``E_i`` to
  ``E_i - F_i``, which still needs a 1.

Case ``j`` is the first case whose positions contain a 1, so the cases are
pairwise disjoint and together they cover every satisfying set.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .core import Instance, InstanceError
from .rows import E, Group, Row, poly_add, render_rows, signature_polynomial

__all__ = ["RowDecomposition", "decompose", "iter_rows", "tau_vector", "tau_of"]


def _popcount(x: int) -> int:
    return bin(x).count("1")


# A worklist row is (ones, zeros, e_groups, next_goal_index).
_WorkRow = tuple[int, int, tuple[int, ...], int]


def _goal_order(masks: tuple[int, ...]) -> list[int]:
    return sorted(masks, key=_popcount)


def _split(ones: int, zeros: int, groups: tuple[int, ...], g: int, nxt: int) -> list[_WorkRow]:
    used = ones | zeros
    for e in groups:
        used |= e
    D = g & ~used
    straddling = []
    untouched = []
    for e in groups:
        (straddling if e & g else untouched).append(e)

    out: list[_WorkRow] = []
    if D:
        if D & (D - 1):
            out.append((ones, zeros, groups + (D,), nxt))
        else:
            out.append((ones | D, zeros, groups, nxt))

    zeros_acc = zeros | D
    ones_acc = ones
    shrunk: list[int] = []
    for j, e in enumerate(straddling):
        frag = e & g
        rest = e & ~frag
        new_groups = untouched + shrunk + straddling[j + 1:]
        if frag & (frag - 1):
            out.append((ones_acc, zeros_acc, tuple(new_groups) + (frag,), nxt))
        else:
            out.append((ones_acc | frag, zeros_acc, tuple(new_groups), nxt))
        zeros_acc |= frag
        if rest & (rest - 1):
            shrunk.append(rest)
        else:
            ones_acc |= rest
    return out


def _iter_work_rows(w: int, masks: tuple[int, ...]) -> Iterator[tuple[int, int, tuple[int, ...]]]:
    goals = _goal_order(masks)
    h = len(goals)
    stack: list[_WorkRow] = [(0, 0, (), 0)]
    while stack:
        ones, zeros, groups, i = stack.pop()
        while i < h:
            g = goals[i]
            if ones & g or any(not (e & ~g) for e in groups):
                i += 1
                continue
            break
        if i == h:
            yield ones, zeros, groups
            continue
        # LIFO: push in reverse so case 0 is processed first
        stack.extend(reversed(_split(ones, zeros, groups, goals[i], i + 1)))


def _check(inst: Instance) -> None:
    for name, m in zip(inst.goal_names, inst.masks):
        if not m:
            raise InstanceError(f"empty goal {name!r}")


def iter_rows(inst: Instance) -> Iterator[Row]:
    """Stream the decomposition rows of ``Tr(inst)`` without storing them."""
    _check(inst)
    w = inst.w
    for ones, zeros, groups in _iter_work_rows(w, inst.masks):
        yield Row(w, ones, zeros, tuple(Group(E, 1, e) for e in groups))


@dataclass(frozen=True)
class RowDecomposition:
    instance: Instance
    rows: tuple[Row, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def render(self) -> str:
        return render_rows(self.rows, self.instance.coupons)


def decompose(inst: Instance) -> RowDecomposition:
    """Pairwise disjoint ``{0,1,2,e}`` rows whose union is the set of transversals."""
    return RowDecomposition(inst, tuple(iter_rows(inst)))


def tau_vector(dec: RowDecomposition) -> tuple[int, ...]:
    """tau_k = number of k-element transversals, k = 0..w."""
    sigs = Counter(r.signature() for r in dec.rows)
    return _sum_signatures(dec.instance.w, sigs)


def _sum_signatures(w: int, sigs: Counter) -> tuple[int, ...]:
    acc = [0] * (w + 1)
    for sig, mult in sigs.items():
        poly_add(acc, signature_polynomial(sig), mult)
    return tuple(acc)


def tau_of(inst: Instance, *, progress=None) -> tuple[int, ...]:
    """Transversal counts straight from the row stream.

    Rows are reduced to their shape (number of ones, don't-cares and ``e``
    group sizes) on the fly, so memory stays proportional to the number of
    distinct shapes rather than the number of rows.  ``progress``, if given,
    is called with the running row count every 100000 rows and once more
    with the total.
    """
    _check(inst)
    w = inst.w
    sigs: Counter = Counter()
    n = 0
    for ones, zeros, groups in _iter_work_rows(w, inst.masks):
        used = ones | zeros
        sizes = []
        for e in groups:
            used |= e
            sizes.append((E, 1, _popcount(e)))
        sizes.sort()
        sigs[(w, _popcount(ones), w - _popcount(used), tuple(sizes))] += 1
        n += 1
        if progress is not None and n % 100000 == 0:
            progress(n)
    if progress is not None and n % 100000:
        progress(n)
    return _sum_signatures(w, sigs)
