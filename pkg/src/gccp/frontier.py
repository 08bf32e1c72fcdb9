"""Transversal counts by a coupon-by-coupon sweep over merged residual states.

Coupons are decided in order.  After deciding coupons ``0..i`` the only thing
that matters for the rest is the family of goals not hit yet, each cut down
to the undecided coupons, kept as an antichain (a goal containing another
unhit goal is implied by it).  Equal residual families are merged and carry
a polynomial counting the chosen coupons, so each level holds one entry per
distinct residual.

On instances with local structure such as board domination this visits far
fewer states than the row decomposition emits rows.
"""

from __future__ import annotations

import time
from typing import Callable, Sequence

from .core import Instance, InstanceError
from .exactmath import binomial

__all__ = ["frontier_tau", "FrontierTimeout"]


class FrontierTimeout(TimeoutError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _antichain(masks) -> list[int]:
    out: list[int] = []
    for g in sorted(set(masks), key=_popcount):
        if not any(o & g == o for o in out):
            out.append(g)
    return out


def frontier_tau(inst: Instance, order: Sequence[int] | None = None, *,
                 timeout: float | None = None,
                 progress: Callable[[int, int], None] | None = None) -> tuple[int, ...]:
    """tau_0..tau_w, sweeping coupons in ``order`` (default: instance order).

    ``progress(i, states)`` is called after each coupon.  Raises
    :class:`FrontierTimeout` if ``timeout`` seconds pass.
    """
    w = inst.w
    for name, m in zip(inst.goal_names, inst.masks):
        if not m:
            raise InstanceError(f"empty goal {name!r}")
    if order is None:
        order = range(w)
    order = list(order)
    if sorted(order) != list(range(w)):
        raise ValueError("order must be a permutation of the coupon indices")
    # relabel so that the sweep goes bit 0, 1, 2, ...
    pos = {c: i for i, c in enumerate(order)}
    masks = []
    for m in inst.masks:
        r = 0
        for c in range(w):
            if m >> c & 1:
                r |= 1 << pos[c]
        masks.append(r)

    # Polynomials in the number of chosen coupons are packed into one int,
    # coefficient k in bits [k*S, (k+1)*S).  No coefficient exceeds 2**w, so
    # S = w + 1 bits never overflow and addition/shift act slot-wise.
    S = w + 1
    start = time.monotonic()
    empty: frozenset = frozenset()
    level: dict[frozenset, int] = {frozenset(_antichain(masks)): 1}
    done = 0
    for i in range(w + 1):
        finished = level.pop(empty, None)
        if finished is not None:
            n = w - i
            done += finished * sum(binomial(n, j) << (S * j) for j in range(n + 1))
        if i == w or not level:
            break
        b = 1 << i
        nxt: dict[frozenset, int] = {}
        get = nxt.get
        for res, poly in level.items():
            hit = [g for g in res if g & b]
            if not hit:
                nxt[res] = get(res, 0) + poly + (poly << S)
                continue
            rest = res.difference(hit)
            # coupon i taken: every goal through it is hit
            nxt[rest] = get(rest, 0) + (poly << S)
            # coupon i left out: those goals shrink, and may now imply others
            cut = [g & ~b for g in hit]
            if 0 in cut:
                continue
            if len(cut) > 1:
                cut = _antichain(cut)
            keep = [g for g in rest if not any(c & g == c for c in cut)]
            keep.extend(cut)
            key = frozenset(keep)
            nxt[key] = get(key, 0) + poly
        level = nxt
        if progress is not None:
            progress(i, len(level))
        if timeout is not None and time.monotonic() - start > timeout:
            raise FrontierTimeout(f"frontier sweep exceeded {timeout} s at coupon {i + 1} of {w}")
    slot = (1 << S) - 1
    return tuple((done >> (S * k)) & slot for k in range(w + 1))
