"""Classical coupon-collector formulas and the triangular-family benchmark."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import InstanceError, build_partition_instance
from .exactmath import harmonic, render_fraction, round_sig
from .expectation import expected_length_r, q_from_tau
from .oracle import CapExceeded
from .tralg import decompose, tau_vector

__all__ = [
    "IE_CAP",
    "BenchRecord",
    "incl_excl_length",
    "homogeneous_length",
    "triangular_asymptotic",
    "triangular_probabilities",
    "row_polynomial_length",
    "run_benchmark",
    "bench_csv",
]

IE_CAP = 27
_LOW_BITS = 20


def _signed_subset_sums(weights: Sequence[int]) -> np.ndarray:
    """c[s] = sum over nonempty subsets S with weight sum s of (-1)^(|S|+1).

    Every one of the 2^h subsets is visited: the low bits are expanded as a
    vector of all their subset sums and the high bits are looped over.
    """
    low, high = list(weights[:_LOW_BITS]), list(weights[_LOW_BITS:])
    sums = np.zeros(1, dtype=np.int64)
    signs = np.ones(1, dtype=np.int64)  # (-1)^|S| for the low part
    for m in low:
        sums = np.concatenate([sums, sums + m])
        signs = np.concatenate([signs, -signs])
    total = int(sum(weights))
    acc = np.zeros(total + 1, dtype=np.int64)
    for bits in range(1 << len(high)):
        off = 0
        sign = 1
        for i, m in enumerate(high):
            if bits >> i & 1:
                off += m
                sign = -sign
        acc += _weighted_bincount(sums + off, signs * sign, total + 1)
    acc[0] = 0  # empty set
    return -acc


def _weighted_bincount(idx: np.ndarray, wts: np.ndarray, n: int) -> np.ndarray:
    pos = np.bincount(idx[wts > 0], minlength=n)
    neg = np.bincount(idx[wts < 0], minlength=n)
    return pos.astype(np.int64) - neg.astype(np.int64)


def incl_excl_length(p: Sequence[Fraction | int | str], cap: int = IE_CAP) -> Fraction:
    """Expected full-collection time by inclusion-exclusion over all subsets of types.

    sum over nonempty S of (-1)^(|S|+1) / sum_{i in S} p_i.  With common
    denominator D and p_i = m_i / D, the term is D / sum m_i, so subsets are
    bucketed by their numerator sum before the exact rational sum.
    """
    ps = [Fraction(x) for x in p]
    if len(ps) > cap:
        raise CapExceeded(f"inclusion-exclusion is capped at h = {cap}, got {len(ps)}")
    if any(x <= 0 for x in ps):
        raise InstanceError("probabilities must be positive")
    if sum(ps) != 1:
        raise InstanceError(f"probabilities sum to {sum(ps)}, not 1")
    D = math.lcm(*(x.denominator for x in ps))
    m = [x.numerator * (D // x.denominator) for x in ps]
    c = _signed_subset_sums(m)
    total = Fraction(0)
    for s in np.nonzero(c)[0]:
        total += Fraction(int(c[s]) * D, int(s))
    return total


def homogeneous_length(h: int) -> Fraction:
    """h H(h): expected draws to see all of h equally likely types."""
    if h < 1:
        raise ValueError("h must be >= 1")
    return h * harmonic(h)


def triangular_probabilities(h: int) -> list[Fraction]:
    w = h * (h + 1) // 2
    return [Fraction(i, w) for i in range(1, h + 1)]


def triangular_asymptotic(h: int) -> float:
    """Large-h approximation (4 pi / sqrt 3 - 6) C(h+1, 2) for p_i = i / w."""
    if h < 1:
        raise ValueError("h must be >= 1")
    return (4 * math.pi / math.sqrt(3) - 6) * math.comb(h + 1, 2)


def row_polynomial_length(p: Sequence[Fraction | int | str]) -> Fraction:
    """Expected length via the replicated partition instance and its row counts."""
    inst = build_partition_instance(p)
    tau = tau_vector(decompose(inst))
    return expected_length_r(q_from_tau(tau, inst.w))


@dataclass(frozen=True)
class BenchRecord:
    h: int
    w: int
    value: Fraction | None
    method: str  # "row-polynomial" or "inclusion-exclusion"
    seconds: float | None

    @property
    def skipped(self) -> bool:
        return self.value is None


def run_benchmark(hs: Iterable[int], ie_cap: int = IE_CAP) -> list[BenchRecord]:
    """Both methods on the triangular family; inclusion-exclusion is skipped above ``ie_cap``."""
    out = []
    for h in hs:
        if h < 1:
            raise ValueError("h must be >= 1")
        p = triangular_probabilities(h)
        w = h * (h + 1) // 2
        t0 = time.perf_counter()
        v = row_polynomial_length(p)
        out.append(BenchRecord(h, w, v, "row-polynomial", time.perf_counter() - t0))
        if h <= min(ie_cap, IE_CAP):
            t0 = time.perf_counter()
            v = incl_excl_length(p)
            out.append(BenchRecord(h, w, v, "inclusion-exclusion", time.perf_counter() - t0))
        else:
            out.append(BenchRecord(h, w, None, "inclusion-exclusion", None))
    return out


def bench_csv(records: Iterable[BenchRecord], digits: int = 6) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["h", "w", "exact-fraction", "decimal", "method", "seconds"])
    for r in records:
        if r.skipped:
            wr.writerow([r.h, r.w, "-", "-", r.method, "-"])
        else:
            wr.writerow([r.h, r.w, render_fraction(r.value), round_sig(r.value, digits), r.method, f"{r.seconds:.3f}"])
    return buf.getvalue()
