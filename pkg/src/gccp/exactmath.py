"""Exact integer/rational helpers shared by every counting and probability routine.

Python's ``int`` is arbitrary precision and ``fractions.Fraction`` keeps itself
in lowest terms, so these are the big-integer and big-rational types used
throughout the package.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "binomial",
    "stirling2",
    "stirling2_row",
    "harmonic",
    "falling",
    "render_fraction",
    "round_sig",
    "round_fixed",
    "to_decimal",
]


@lru_cache(maxsize=1 << 16)
def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def falling(n: int, k: int) -> int:
    """Falling factorial n (n-1) ... (n-k+1)."""
    return math.perm(n, k) if 0 <= k <= n else 0


# Stirling rows are built once and only ever appended to, under a lock.
_stirling_rows: list[list[int]] = [[1]]
_stirling_lock = threading.Lock()


def stirling2_row(n: int) -> list[int]:
    """Row ``[S(n,0), ..., S(n,n)]`` of Stirling numbers of the second kind."""
    if n < 0:
        raise ValueError(f"stirling2 needs n >= 0, got {n}")
    rows = _stirling_rows
    if n < len(rows):
        return rows[n]
    with _stirling_lock:
        while len(rows) <= n:
            prev = rows[-1]
            m = len(prev)
            row = [0] * (m + 1)
            for k in range(1, m + 1):
                row[k] = (k * prev[k] if k < m else 0) + prev[k - 1]
            rows.append(row)
    return rows[n]


def stirling2(n: int, k: int) -> int:
    """S(n, k): partitions of an n-set into k nonempty blocks."""
    if k < 0 or k > n:
        return 0
    return stirling2_row(n)[k]


_harmonic: list[Fraction] = [Fraction(0)]
_harmonic_lock = threading.Lock()


def harmonic(n: int) -> Fraction:
    """Exact H(n) = 1 + 1/2 + ... + 1/n (H(0) = 0)."""
    if n < 0:
        raise ValueError(f"harmonic needs n >= 0, got {n}")
    table = _harmonic
    if n < len(table):
        return table[n]
    with _harmonic_lock:
        while len(table) <= n:
            table.append(table[-1] + Fraction(1, len(table)))
    return table[n]


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render_fraction(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _decimal_exponent(x: Fraction) -> int:
    """floor(log10(|x|)) for x != 0, computed exactly."""
    x = abs(x)
    e = len(str(x.numerator)) - len(str(x.denominator))
    # e is within one of the true exponent
    while Fraction(10) ** e > x:
        e -= 1
    while Fraction(10) ** (e + 1) <= x:
        e += 1
    return e


def round_fixed(x: Fraction | int, places: int) -> str:
    """Round-half-even to ``places`` digits after the point."""
    x = Fraction(x)
    scaled = round(x * Fraction(10) ** places)
    return _place_point(scaled, places)


def round_sig(x: Fraction | int, digits: int = 6) -> str:
    """Round-half-even to ``digits`` significant digits, positional notation."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    x = Fraction(x)
    if x == 0:
        return "0"
    places = digits - 1 - _decimal_exponent(x)
    scaled = round(x * Fraction(10) ** places)
    if len(str(abs(scaled))) > digits:
        # rounding carried into a new leading digit, e.g. 9.9999 -> 10.000
        places -= 1
        scaled = round(x * Fraction(10) ** places)
    if places <= 0:
        return str(scaled * 10 ** (-places))
    return _place_point(scaled, places)


def _place_point(scaled: int, places: int) -> str:
    if places <= 0:
        return str(scaled * 10 ** (-places))
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def to_decimal(x: Fraction | int, digits: int = 6, *, fixed: bool = False) -> str:
    """Decimal rendering; significant digits by default, fixed places if ``fixed``."""
    return round_fixed(x, digits) if fixed else round_sig(x, digits)
