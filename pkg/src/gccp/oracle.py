"""Independent ground truth: exhaustive subset counting and trial simulation.

Nothing here uses rows or closed forms, so it can check both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Instance, check_alpha

__all__ = ["CapExceeded", "SimSummary", "brute_tau", "brute_T", "simulate", "BRUTE_CAP"]

BRUTE_CAP = 24
_CHUNK_BITS = 20


class CapExceeded(RuntimeError):
    """A resource cap (instance size, expansion budget) was exceeded."""


def _subset_chunks(w: int):
    n = 1 << w
    step = 1 << min(w, _CHUNK_BITS)
    base = np.arange(step, dtype=np.uint64)
    for start in range(0, n, step):
        yield base + np.uint64(start)


def _brute(inst: Instance, alpha: Sequence[int]) -> tuple[int, ...]:
    w = inst.w
    if w > BRUTE_CAP:
        raise CapExceeded(f"exhaustive counting is capped at w = {BRUTE_CAP}, got {w}")
    counts = np.zeros(w + 1, dtype=np.int64)
    masks = [np.uint64(m) for m in inst.masks]
    for xs in _subset_chunks(w):
        ok = np.ones(xs.shape, dtype=bool)
        for m, a in zip(masks, alpha):
            ok &= np.bitwise_count(xs & m) >= a
        counts += np.bincount(np.bitwise_count(xs[ok]), minlength=w + 1)[: w + 1]
    return tuple(int(c) for c in counts)


def brute_tau(inst: Instance) -> tuple[int, ...]:
    """k-element transversal counts by checking all 2^w subsets."""
    return _brute(inst, [1] * inst.h)


def brute_T(inst: Instance, alpha: Sequence[int]) -> tuple[int, ...]:
    """k-element counts of sets meeting goal i at least alpha[i] times, exhaustively."""
    check_alpha(inst, alpha)
    return _brute(inst, alpha)


@dataclass(frozen=True)
class SimSummary:
    trials: int
    mean: float
    variance: float
    cap_hits: int = 0

    @property
    def stderr(self) -> float:
        return math.sqrt(self.variance / self.trials)

    def within(self, value: float, n_se: float = 4.0) -> bool:
        return abs(self.mean - float(value)) <= n_se * self.stderr


def _incidence(inst: Instance) -> np.ndarray:
    inc = np.zeros((inst.w, inst.h), dtype=np.int16)
    for j, g in enumerate(inst.goals):
        inc[list(g), j] = 1
    return inc


def _first_hit(done: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per trial: whether any column is True and the first such column."""
    hit = done.any(axis=1)
    return hit, done.argmax(axis=1)


def _cover_words(inst: Instance) -> np.ndarray:
    """Row c holds the goals served by coupon c as a bitset in uint64 words."""
    nwords = max(1, -(-inst.h // 64))
    cover = np.zeros((inst.w, nwords), dtype=np.uint64)
    for j, g in enumerate(inst.goals):
        for c in g:
            cover[c, j // 64] |= np.uint64(1 << (j % 64))
    return cover


def _block_lengths_plain(rng: np.random.Generator, cover: np.ndarray, full: np.ndarray, size: int,
                         with_replacement: bool, cap: int) -> tuple[np.ndarray, int]:
    """Trial lengths when every goal needs a single coupon: OR the goal
    bitsets of the draws until all bits are set."""
    w = cover.shape[0]
    if not with_replacement:
        draws = np.argsort(rng.random((size, w)), axis=1)
        acc = np.bitwise_or.accumulate(cover[draws], axis=1)
        idx = (acc == full).all(axis=2).argmax(axis=1)
        return idx.astype(np.int64) + 1, 0

    lengths = np.zeros(size, dtype=np.int64)
    state = np.zeros((size, cover.shape[1]), dtype=np.uint64)
    active = np.arange(size)
    offset = 0
    step = max(4 * w, 16)
    while active.size and offset < cap:
        n = min(step, cap - offset)
        draws = rng.integers(0, w, size=(active.size, n))
        acc = np.bitwise_or.accumulate(cover[draws], axis=1) | state[active, None, :]
        ok = (acc == full).all(axis=2)
        hit, idx = _first_hit(ok)
        lengths[active[hit]] = offset + idx[hit] + 1
        state[active[~hit]] = acc[~hit, -1, :]
        active = active[~hit]
        offset += n
    lengths[active] = cap
    return lengths, int(active.size)


def _block_lengths(rng: np.random.Generator, inc: np.ndarray, alpha: np.ndarray, size: int,
                   with_replacement: bool, cap: int) -> tuple[np.ndarray, int]:
    """Trial lengths for one block.  Goals count distinct coupons seen."""
    w, h = inc.shape
    if h == 0:
        return np.ones(size, dtype=np.int64), 0
    if not with_replacement:
        draws = np.argsort(rng.random((size, w)), axis=1)
        counts = np.cumsum(inc[draws], axis=1, dtype=np.int32)
        ok = (counts >= alpha).all(axis=2)
        hit, idx = _first_hit(ok)
        return idx.astype(np.int64) + 1, 0

    lengths = np.zeros(size, dtype=np.int64)
    seen = np.zeros((size, w), dtype=np.int32)
    active = np.arange(size)
    offset = 0
    step = max(2 * w, 16)
    while active.size and offset < cap:
        n = min(step, cap - offset)
        draws = rng.integers(0, w, size=(active.size, n))
        onehot = np.zeros((active.size, n, w), dtype=np.int32)
        np.put_along_axis(onehot, draws[:, :, None], 1, axis=2)
        seen_t = np.cumsum(onehot, axis=1) + seen[active, None, :]
        counts = (seen_t > 0).astype(np.int32) @ inc.astype(np.int32)
        ok = (counts >= alpha).all(axis=2)
        hit, idx = _first_hit(ok)
        lengths[active[hit]] = offset + idx[hit] + 1
        seen[active[~hit]] = seen_t[~hit, -1, :]
        active = active[~hit]
        offset += n
    lengths[active] = cap
    return lengths, int(active.size)


def simulate(inst: Instance, with_replacement: bool, alpha: Sequence[int] | None = None,
             trials: int = 100_000, seed: int = 0, block: int | None = None) -> SimSummary:
    """Draw coupons uniformly until every goal ``i`` has been served by
    ``alpha[i]`` distinct drawn coupons (default: once).

    Trials run in blocks with seeds spawned from ``seed``, so results depend
    only on ``seed``, ``trials`` and ``block``.  With replacement, a trial is
    cut off at ``10^4 * w`` draws and counted in ``cap_hits``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if alpha is None:
        alpha = inst.alpha or [1] * inst.h
    check_alpha(inst, alpha)
    cap = 10_000 * inst.w
    plain = all(x == 1 for x in alpha) and inst.h > 0
    if plain:
        cover = _cover_words(inst)
        full = np.bitwise_or.reduce(cover, axis=0)  # goals are nonempty
        if block is None:
            block = max(256, (1 << 21) // (4 * inst.w * cover.shape[1]))

        def run(rng, size):
            return _block_lengths_plain(rng, cover, full, size, with_replacement, cap)
    else:
        inc = _incidence(inst)
        a = np.asarray(alpha, dtype=np.int32)
        if block is None:
            # keep the (block, draws, coupons) tensors near 2^22 cells
            block = max(256, (1 << 22) // max(1, 2 * inst.w * max(inst.w, inst.h)))

        def run(rng, size):
            return _block_lengths(rng, inc, a, size, with_replacement, cap)
    nblocks = -(-trials // block)
    seeds = np.random.SeedSequence(seed).spawn(nblocks)
    # streaming moments (Chan et al. pairwise merge)
    count, mean, m2, cap_hits = 0, 0.0, 0.0, 0
    for b, ss in enumerate(seeds):
        size = min(block, trials - b * block)
        lengths, hits = run(np.random.default_rng(ss), size)
        cap_hits += hits
        x = lengths.astype(np.float64)
        bm = float(x.mean())
        bm2 = float(((x - bm) ** 2).sum())
        delta = bm - mean
        tot = count + size
        mean += delta * size / tot
        m2 += bm2 + delta * delta * count * size / tot
        count = tot
    var = m2 / (count - 1) if count > 1 else 0.0
    return SimSummary(count, mean, var, cap_hits)
