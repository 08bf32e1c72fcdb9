"""Multivalued rows: compressed encodings of families of subsets of ``[w]``.

A row assigns each of ``w`` positions one symbol:

* ``0`` / ``1``  -- the position is fixed out of / into the set,
* ``2``          -- don't care,
* a constraint group: ``e(s)`` groups need *at least* ``s`` ones on their
  positions, ``g(s)`` groups need *exactly* ``s`` ones.

Positions are stored as ``int`` bitmasks; bit ``i`` is position ``i``.
Groups of one row are pairwise disjoint and need not be contiguous.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import networkx as nx

from .exactmath import binomial

__all__ = [
    "E",
    "G",
    "Group",
    "Row",
    "RowError",
    "row_contains",
    "row_cardinality",
    "count_polynomial",
    "rows_disjoint",
    "poly_mul",
    "poly_add",
    "signature_polynomial",
    "render_rows",
]

E = "E"
G = "G"


class RowError(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True, slots=True)
class Group:
    kind: str  # E or G
    threshold: int
    mask: int

    @property
    def size(self) -> int:
        return _popcount(self.mask)

    def accepts(self, ones_here: int) -> bool:
        if self.kind == E:
            return ones_here >= self.threshold
        return ones_here == self.threshold


@dataclass(frozen=True, slots=True)
class Row:
    """One row.  Positions not in ``ones``, ``zeros`` or a group are don't-cares.

    E-groups with as many positions as their threshold, and G-groups likewise,
    can only be all ones; they are folded into ``ones`` on construction.
    """

    width: int
    ones: int = 0
    zeros: int = 0
    groups: tuple[Group, ...] = ()

    def __post_init__(self) -> None:
        full = (1 << self.width) - 1
        if self.ones & self.zeros:
            raise RowError("a position cannot be both 0 and 1")
        used = self.ones | self.zeros
        if used & ~full:
            raise RowError("literal outside row width")
        kept = []
        ones = self.ones
        for g in self.groups:
            if g.kind not in (E, G):
                raise RowError(f"unknown group kind {g.kind!r}")
            if g.threshold < 1:
                raise RowError("group thresholds must be >= 1")
            if g.mask & ~full:
                raise RowError("group position outside row width")
            if g.mask & used:
                raise RowError("groups must not overlap literals or other groups")
            used |= g.mask
            m = g.size
            if m < g.threshold:
                raise RowError(f"{g.kind}({g.threshold}) group has only {m} positions")
            if m == g.threshold:
                ones |= g.mask
            else:
                kept.append(g)
        object.__setattr__(self, "ones", ones)
        object.__setattr__(self, "groups", tuple(kept))

    @property
    def dontcares(self) -> int:
        used = self.ones | self.zeros
        for g in self.groups:
            used |= g.mask
        return ((1 << self.width) - 1) & ~used

    def signature(self) -> tuple:
        """Shape that determines the count polynomial (positions forgotten)."""
        return (
            self.width,
            _popcount(self.ones),
            _popcount(self.dontcares),
            tuple(sorted((g.kind, g.threshold, g.size) for g in self.groups)),
        )

    # -- text form --------------------------------------------------------

    @classmethod
    def from_symbols(cls, symbols: Sequence[str] | str) -> "Row":
        """Parse symbols such as ``["2", "e", "1", "e'", "g(1)", "e(2)"]``.

        Groups are identified by their full token (letter, primes and
        threshold); a bare ``e`` means ``e(1)``.  A string of single
        characters like ``"2e1e"`` is also accepted.
        """
        if isinstance(symbols, str):
            symbols = list(symbols)
        ones = zeros = 0
        groups: dict[tuple[str, str, int], int] = {}
        for i, tok in enumerate(symbols):
            tok = tok.strip()
            if tok == "0":
                zeros |= 1 << i
            elif tok == "1":
                ones |= 1 << i
            elif tok == "2":
                pass
            else:
                m = _TOKEN.fullmatch(tok)
                if not m:
                    raise RowError(f"bad row symbol {tok!r}")
                kind = E if m.group(1) == "e" else G
                s = int(m.group(3)) if m.group(3) else 1
                key = (kind, m.group(2), s)
                groups[key] = groups.get(key, 0) | (1 << i)
        gs = tuple(Group(k, s, mask) for (k, _, s), mask in groups.items())
        return cls(len(symbols), ones, zeros, gs)

    def symbols(self) -> list[str]:
        out = ["2"] * self.width
        for i in range(self.width):
            if self.ones >> i & 1:
                out[i] = "1"
            elif self.zeros >> i & 1:
                out[i] = "0"
        seen: dict[tuple[str, int], int] = {}
        for g in sorted(self.groups, key=lambda g: (g.mask & -g.mask)):
            primes = seen.get((g.kind, g.threshold), 0)
            seen[(g.kind, g.threshold)] = primes + 1
            letter = "e" if g.kind == E else "g"
            tok = letter + "'" * primes
            if not (g.kind == E and g.threshold == 1):
                tok += f"({g.threshold})"
            for i in range(self.width):
                if g.mask >> i & 1:
                    out[i] = tok
        return out

    def __str__(self) -> str:
        return " ".join(self.symbols())


_TOKEN = re.compile(r"([eg])('*)(?:\((\d+)\))?")


def _check_width(r: Row, width: int) -> None:
    if r.width != width:
        raise RowError(f"width mismatch: row has {r.width}, got {width}")


def row_contains(r: Row, x: int | str) -> bool:
    """Membership of the set ``x`` (bitmask, or a 0/1 string read left to right)."""
    if isinstance(x, str):
        _check_width(r, len(x))
        x = int(x[::-1], 2) if x else 0
    elif x >> r.width:
        raise RowError("bitmask wider than the row")
    if x & r.ones != r.ones or x & r.zeros:
        return False
    return all(g.accepts(_popcount(x & g.mask)) for g in r.groups)


def _group_factor(kind: str, s: int, m: int) -> tuple[int, ...]:
    if kind == E:
        return tuple(binomial(m, j) if j >= s else 0 for j in range(m + 1))
    return tuple(binomial(m, s) if j == s else 0 for j in range(m + 1))


def row_cardinality(r: Row) -> int:
    total = 1 << _popcount(r.dontcares)
    for g in r.groups:
        if g.kind == E:
            total *= sum(binomial(g.size, j) for j in range(g.threshold, g.size + 1))
        else:
            total *= binomial(g.size, g.threshold)
    return total


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def poly_add(acc: list[int], p: Sequence[int], scale: int = 1) -> None:
    """In-place ``acc += scale * p``; ``acc`` must be long enough."""
    for i, c in enumerate(p):
        if c:
            acc[i] += scale * c


@lru_cache(maxsize=4096)
def _binomial_row(n: int) -> tuple[int, ...]:
    return tuple(binomial(n, j) for j in range(n + 1))


@lru_cache(maxsize=1 << 15)
def signature_polynomial(sig: tuple) -> tuple[int, ...]:
    """Count polynomial for a :meth:`Row.signature`, padded to ``width + 1``."""
    width, n_ones, n_free, groups = sig
    poly: list[int] = list(_binomial_row(n_free))
    for kind, s, m in groups:
        poly = poly_mul(poly, _group_factor(kind, s, m))
    poly = [0] * n_ones + poly
    return tuple(poly + [0] * (width + 1 - len(poly)))


def count_polynomial(r: Row) -> tuple[int, ...]:
    """Coefficients ``c_0..c_w``; ``c_k`` is the number of k-element members of ``r``."""
    return signature_polynomial(r.signature())


# ---------------------------------------------------------------------------
# Disjointness
# ---------------------------------------------------------------------------

def _fast_disjoint(a: Row, b: Row) -> bool:
    """Cheap sufficient test: literal clash, or a group starved by zeros."""
    if (a.ones & b.zeros) or (b.ones & a.zeros):
        return True
    for x, y in ((a, b), (b, a)):
        for g in x.groups:
            free = g.mask & ~y.zeros
            forced = _popcount(g.mask & y.ones)
            if _popcount(free) < g.threshold:
                return True
            if g.kind == G and forced > g.threshold:
                return True
    return False


def rows_disjoint(a: Row, b: Row) -> bool:
    """Exact test whether no set lies in both rows.

    Every position is in at most one group of ``a`` and at most one group of
    ``b``, so a common member is a choice of positions in a bipartite
    multigraph (a-groups on one side, b-groups on the other) meeting interval
    degree bounds.  That is a flow feasibility problem with lower bounds.
    """
    if a.width != b.width:
        raise RowError(f"width mismatch: {a.width} vs {b.width}")
    if _fast_disjoint(a, b):
        return True
    ones = a.ones | b.ones
    zeros = a.zeros | b.zeros
    free = ((1 << a.width) - 1) & ~ones & ~zeros

    def side(r: Row, tag: str):
        bounds = {}
        owner = {}
        for idx, g in enumerate(r.groups):
            node = (tag, idx)
            fixed = _popcount(g.mask & ones)
            avail = _popcount(g.mask & free)
            need = max(0, g.threshold - fixed)
            hi = avail if g.kind == E else g.threshold - fixed
            if hi < need or need > avail:
                return None, None
            bounds[node] = (need, min(hi, avail))
            m = g.mask & free
            while m:
                low = m & -m
                owner[low.bit_length() - 1] = node
                m ^= low
        bounds[(tag, None)] = (0, a.width)
        return bounds, owner

    a_bounds, a_owner = side(a, "a")
    if a_bounds is None:
        return True
    b_bounds, b_owner = side(b, "b")
    if b_bounds is None:
        return True

    edges: dict[tuple, int] = {}
    m = free
    while m:
        low = m & -m
        i = low.bit_length() - 1
        key = (a_owner.get(i, ("a", None)), b_owner.get(i, ("b", None)))
        edges[key] = edges.get(key, 0) + 1
        m ^= low

    # Lower-bounded flow S -> a-nodes -> b-nodes -> T, closed by T -> S.
    net = nx.DiGraph()
    need_total = 0

    def add(u, v, lo, hi):
        nonlocal need_total
        net.add_edge(u, v, capacity=hi - lo)
        if lo:
            need_total += lo
            _bump(net, "S*", v, lo)
            _bump(net, u, "T*", lo)

    for node, (lo, hi) in a_bounds.items():
        add("S", node, lo, hi)
    for node, (lo, hi) in b_bounds.items():
        add(node, "T", lo, hi)
    for (u, v), c in edges.items():
        add(u, v, 0, c)
    add("T", "S", 0, 2 * a.width + 1)
    if need_total == 0:
        return False
    net.add_node("S*")
    net.add_node("T*")
    return nx.maximum_flow_value(net, "S*", "T*") < need_total


def _bump(net: nx.DiGraph, u, v, c: int) -> None:
    if net.has_edge(u, v):
        net[u][v]["capacity"] += c
    else:
        net.add_edge(u, v, capacity=c)


def rows_disjoint_exhaustive(a: Row, b: Row) -> bool:
    """Brute-force disjointness over all 2^w sets; for small widths only."""
    if a.width != b.width:
        raise RowError(f"width mismatch: {a.width} vs {b.width}")
    return not any(row_contains(a, x) and row_contains(b, x) for x in range(1 << a.width))


def render_rows(rows: Iterable[Row], columns: Sequence[str] | None = None) -> str:
    """Text table with one row per line and its cardinality.  ``columns``
    labels the positions (default ``c1..cw``)."""
    rows = list(rows)
    if not rows:
        return "(no rows)"
    width = rows[0].width
    header = list(columns) if columns is not None else [f"c{i + 1}" for i in range(width)]
    if len(header) != width:
        raise RowError(f"{len(header)} column labels for rows of width {width}")
    cells = [r.symbols() for r in rows]
    colw = [max(len(header[i]), *(len(c[i]) for c in cells)) for i in range(width)]
    namew = len(f"r{len(rows)}")
    lines = [" " * namew + " | " + " ".join(h.rjust(colw[i]) for i, h in enumerate(header))]
    for n, (r, c) in enumerate(zip(rows, cells), 1):
        body = " ".join(s.rjust(colw[i]) for i, s in enumerate(c))
        lines.append(f"{f'r{n}':>{namew}} | {body} | {row_cardinality(r)}")
    return "\n".join(lines)
