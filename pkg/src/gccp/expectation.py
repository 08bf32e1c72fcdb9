"""From transversal counts to probabilities, expected lengths and variances.

Everything here is exact ``Fraction`` arithmetic.  ``q[k]`` is the
probability that ``k`` draws without replacement achieve every goal, and the
sharply successful trial length is the first ``k`` with that property.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import Instance
from .exactmath import binomial, harmonic, render_fraction, stirling2_row, to_decimal

__all__ = [
    "GccpReport",
    "InconsistentResult",
    "SeriesBracket",
    "q_from_tau",
    "q_alpha",
    "expected_length_nr",
    "expected_length_r",
    "length_r_forms",
    "variance_nr",
    "variance_r",
    "replacement_success_probability",
    "crosscheck_replacement_series",
    "goal_expectations",
    "laplace_exact_k",
    "report_from_tau",
]


class InconsistentResult(ArithmeticError):
    """Algebraically equal formulas disagreed; indicates a bug."""


def q_from_tau(tau: Sequence[int], w: int | None = None) -> list[Fraction]:
    """q_k = tau_k / C(w, k) for k = 0..w."""
    if w is None:
        w = len(tau) - 1
    if len(tau) != w + 1:
        raise ValueError(f"count vector has length {len(tau)}, expected {w + 1}")
    out = []
    for k, t in enumerate(tau):
        c = binomial(w, k)
        if not 0 <= t <= c:
            raise ValueError(f"count {t} at k={k} exceeds C({w},{k}) = {c}")
        out.append(Fraction(t, c))
    return out


q_alpha = q_from_tau


def expected_length_nr(q: Sequence[Fraction]) -> Fraction:
    """Expected sharply-successful length without replacement: w - sum_{k=1}^{w-1} q_k."""
    w = len(q) - 1
    return w - sum(q[1:w], Fraction(0))


def length_r_forms(q: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    """The three equivalent closed forms of the with-replacement expectation."""
    w = len(q) - 1
    a = w * sum((1 - q[k]) / (w - k) for k in range(w))
    b = w * (harmonic(w) - sum((q[k] / (w - k) for k in range(1, w)), Fraction(0)))
    # tau_k / C(w-1, k) == q_k * C(w,k) / C(w-1,k) == q_k * w / (w - k)
    c = w * harmonic(w) - sum((q[k] * binomial(w, k) / binomial(w - 1, k) for k in range(1, w)), Fraction(0))
    return Fraction(a), b, c


def expected_length_r(q: Sequence[Fraction]) -> Fraction:
    """Expected sharply-successful length with replacement.

    All three closed forms are evaluated; a mismatch raises
    :class:`InconsistentResult`.
    """
    a, b, c = length_r_forms(q)
    if not a == b == c:
        raise InconsistentResult(f"closed forms disagree: {a}, {b}, {c}")
    return a


def variance_r(q: Sequence[Fraction], length_r: Fraction | None = None) -> Fraction:
    w = len(q) - 1
    if length_r is None:
        length_r = expected_length_r(q)
    Hw = harmonic(w)
    total = Fraction(0)
    for k in range(w):
        if q[k] == 1:
            continue
        d = w - k
        total += (1 - q[k]) * (Fraction(w * (w + k), d * d) + Fraction(2 * w * w, d) * (Hw - harmonic(d)))
    return total - length_r * length_r


def variance_nr(q: Sequence[Fraction], length_nr: Fraction | None = None) -> Fraction:
    w = len(q) - 1
    if length_nr is None:
        length_nr = expected_length_nr(q)
    total = sum(((2 * k + 1) * (1 - q[k]) for k in range(w)), Fraction(0))
    return total - length_nr * length_nr


# ---------------------------------------------------------------------------
# With-replacement series as an independent check
# ---------------------------------------------------------------------------

def replacement_success_probability(tau: Sequence[int], n: int) -> Fraction:
    """q'_n: probability that ``n`` draws with replacement achieve every goal.

    Counts successful sequences as sum_k k! tau_k S(n, k), over w^n.
    """
    w = len(tau) - 1
    if n == 0:
        return Fraction(1 if tau[0] else 0)
    srow = stirling2_row(n)
    fact = 1
    t = 0
    for k in range(1, min(n, w) + 1):
        fact *= k
        if tau[k]:
            t += fact * tau[k] * srow[k]
    return Fraction(t, w ** n)


@dataclass(frozen=True)
class SeriesBracket:
    """Partial sum of the with-replacement series and a rigorous upper bound.

    ``lower`` is sum_{n=1}^{N} n s'_n + N (1 - q'_N), i.e. the expectation of
    ``min(L, N)``.  Beyond ``N`` draws a trial is at worst a full collection
    of all ``w`` coupons, so ``upper = lower + (1 - q'_N) w H(w)``.
    """

    N: int
    lower: Fraction
    upper: Fraction
    tail_probability: Fraction

    @property
    def gap(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, x: Fraction) -> bool:
        return self.lower <= x <= self.upper


def crosscheck_replacement_series(tau: Sequence[int], N: int) -> SeriesBracket:
    w = len(tau) - 1
    if N < w:
        raise ValueError(f"N must be >= w = {w}")
    lower = Fraction(0)
    prev = replacement_success_probability(tau, 0)
    for n in range(1, N + 1):
        cur = replacement_success_probability(tau, n)
        lower += n * (cur - prev)
        prev = cur
    tail = 1 - prev
    lower += N * tail
    return SeriesBracket(N, lower, lower + tail * w * harmonic(w), tail)


# ---------------------------------------------------------------------------
# Goal-level expectations and the homogeneous occupancy law
# ---------------------------------------------------------------------------

def goal_expectations(inst: Instance, n: int, with_replacement: bool) -> tuple[list[Fraction], Fraction]:
    """Per-goal probability of appearing within ``n`` draws, and their sum."""
    if n < 0:
        raise ValueError("n must be >= 0")
    w = inst.w
    if not with_replacement and n > w:
        raise ValueError(f"cannot draw {n} coupons without replacement from {w}")
    out = []
    for g in inst.goals:
        m = len(g)
        if with_replacement:
            out.append(1 - Fraction(w - m, w) ** n)
        elif m + n > w:
            out.append(Fraction(1))
        else:
            out.append(1 - Fraction(binomial(w - m, n), binomial(w, n)))
    return out, sum(out, Fraction(0))


def laplace_exact_k(w: int, n: int, k: int) -> Fraction:
    """Probability of exactly ``k`` distinct coupons after ``n`` uniform draws from ``w``."""
    if w < 1 or n < 0 or k < 0 or k > min(n, w):
        return Fraction(0)
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return Fraction(fact * binomial(w, k) * stirling2_row(n)[k], w ** n)


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------

@dataclass
class GccpReport:
    w: int
    h: int
    q: list[Fraction]
    length_nr: Fraction
    length_r: Fraction
    var_nr: Fraction | None = None
    var_r: Fraction | None = None
    extras: dict = field(default_factory=dict)

    def lines(self, digits: int = 6, *, fixed: bool = True) -> list[str]:
        def fmt(label: str, x: Fraction) -> str:
            return f"{label} = {render_fraction(x)} ≈ {to_decimal(x, digits, fixed=fixed)}"

        out = [f"w = {self.w}, h = {self.h}", fmt("ℓ_nr", self.length_nr), fmt("ℓ_r", self.length_r)]
        if self.var_nr is not None:
            out.append(fmt("var_nr", self.var_nr))
        if self.var_r is not None:
            out.append(fmt("var_r", self.var_r))
        return out

    def to_dict(self) -> dict:
        d = {
            "w": self.w,
            "h": self.h,
            "q": [render_fraction(x) for x in self.q],
            "length_nr": render_fraction(self.length_nr),
            "length_r": render_fraction(self.length_r),
        }
        if self.var_nr is not None:
            d["var_nr"] = render_fraction(self.var_nr)
        if self.var_r is not None:
            d["var_r"] = render_fraction(self.var_r)
        return d


def report_from_tau(tau: Sequence[int], h: int, *, variance: bool = True) -> GccpReport:
    w = len(tau) - 1
    q = q_from_tau(tau, w)
    lnr = expected_length_nr(q)
    lr = expected_length_r(q)
    rep = GccpReport(w, h, q, lnr, lr)
    if variance:
        rep.var_nr = variance_nr(q, lnr)
        rep.var_r = variance_r(q, lr)
    return rep
