"""Coupon/goal instances and their JSON format.

An :class:`Instance` is an ordered list of coupons plus an ordered list of
named goals, each goal being a nonempty set of coupon indices.  Internally a
goal is also kept as an ``int`` bitmask (bit ``i`` set when coupon ``i``
serves the goal), which is what the counting code works with.

JSON layout::

    {"coupons": ["c1", "c2", ...],
     "goals": {"G1": ["c1", "c2"], ...},
     "alpha": {"G1": 2, ...}}          # optional
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

__all__ = [
    "InstanceError",
    "Instance",
    "load_instance",
    "load_instance_file",
    "load_fixture",
    "dump_instance",
    "reduce_goals",
    "build_partition_instance",
    "indices_to_mask",
    "mask_to_indices",
]


class InstanceError(ValueError):
    """Raised for malformed or inconsistent instance data."""


def indices_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def mask_to_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Instance:
    coupons: tuple[str, ...]
    goal_names: tuple[str, ...]
    goals: tuple[frozenset[int], ...]
    alpha: tuple[int, ...] | None = None
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coupons", tuple(self.coupons))
        object.__setattr__(self, "goal_names", tuple(self.goal_names))
        object.__setattr__(self, "goals", tuple(frozenset(g) for g in self.goals))
        if self.alpha is not None:
            object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        self._validate()
        object.__setattr__(self, "masks", tuple(indices_to_mask(g) for g in self.goals))

    def _validate(self) -> None:
        seen: set[str] = set()
        for c in self.coupons:
            if c in seen:
                raise InstanceError(f"duplicate coupon id {c!r}")
            seen.add(c)
        if len(self.goal_names) != len(self.goals):
            raise InstanceError("goal_names and goals differ in length")
        if len(set(self.goal_names)) != len(self.goal_names):
            dup = next(n for n in self.goal_names if self.goal_names.count(n) > 1)
            raise InstanceError(f"duplicate goal name {dup!r}")
        w = len(self.coupons)
        for name, g in zip(self.goal_names, self.goals):
            if not g:
                raise InstanceError(f"empty goal {name!r}")
            bad = [i for i in g if not 0 <= i < w]
            if bad:
                raise InstanceError(f"goal {name!r} references coupon index {bad[0]} outside 0..{w - 1}")
        if self.alpha is not None:
            check_alpha(self, self.alpha)

    @property
    def w(self) -> int:
        return len(self.coupons)

    @property
    def h(self) -> int:
        return len(self.goals)

    def with_alpha(self, alpha: Sequence[int] | None) -> "Instance":
        return Instance(self.coupons, self.goal_names, self.goals, alpha)

    def goals_of(self, coupon: str) -> list[str]:
        """Names of the goals served by ``coupon``."""
        i = self.coupons.index(coupon)
        return [n for n, g in zip(self.goal_names, self.goals) if i in g]

    def to_dict(self) -> dict:
        doc: dict = {
            "coupons": list(self.coupons),
            "goals": {n: [self.coupons[i] for i in sorted(g)] for n, g in zip(self.goal_names, self.goals)},
        }
        if self.alpha is not None:
            doc["alpha"] = dict(zip(self.goal_names, self.alpha))
        return doc

    @classmethod
    def from_sets(cls, w: int, goals: Sequence[Iterable[int]], names: Sequence[str] | None = None,
                  alpha: Sequence[int] | None = None) -> "Instance":
        """Build from 0-based index sets; coupons are named ``c1..cw``."""
        coupons = tuple(f"c{i + 1}" for i in range(w))
        if names is None:
            names = tuple(f"G{i + 1}" for i in range(len(goals)))
        return cls(coupons, tuple(names), tuple(frozenset(g) for g in goals), alpha)


def check_alpha(inst: Instance, alpha: Sequence[int]) -> None:
    if len(alpha) != inst.h:
        raise InstanceError(f"alpha has length {len(alpha)}, expected {inst.h}")
    for name, g, a in zip(inst.goal_names, inst.goals, alpha):
        if a < 1:
            raise InstanceError(f"alpha for goal {name!r} must be >= 1, got {a}")
        if a > len(g):
            raise InstanceError(f"alpha for goal {name!r} is {a} but the goal has only {len(g)} coupons")


def load_instance(document: str | Mapping) -> Instance:
    """Parse and validate an instance from JSON text or an already-decoded mapping."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"malformed document: {exc}") from None
    if not isinstance(document, Mapping):
        raise InstanceError("malformed document: top level must be an object")
    coupons = document.get("coupons")
    goals = document.get("goals")
    if not isinstance(coupons, list) or not all(isinstance(c, str) for c in coupons):
        raise InstanceError("malformed document: 'coupons' must be an array of strings")
    if not isinstance(goals, Mapping):
        raise InstanceError("malformed document: 'goals' must be an object")
    index: dict[str, int] = {}
    for i, c in enumerate(coupons):
        if c in index:
            raise InstanceError(f"duplicate coupon id {c!r}")
        index[c] = i
    names, sets = [], []
    for name, members in goals.items():
        if not isinstance(members, list):
            raise InstanceError(f"malformed document: goal {name!r} must be an array")
        if not members:
            raise InstanceError(f"empty goal {name!r}")
        idx = set()
        for c in members:
            if c not in index:
                raise InstanceError(f"goal {name!r} references unknown coupon {c!r}")
            idx.add(index[c])
        names.append(name)
        sets.append(frozenset(idx))
    alpha = None
    if "alpha" in document and document["alpha"] is not None:
        raw = document["alpha"]
        if not isinstance(raw, Mapping):
            raise InstanceError("malformed document: 'alpha' must be an object")
        unknown = set(raw) - set(names)
        if unknown:
            raise InstanceError(f"alpha references unknown goal {sorted(unknown)[0]!r}")
        alpha = []
        for n in names:
            a = raw.get(n, 1)
            if not isinstance(a, int) or isinstance(a, bool):
                raise InstanceError(f"alpha for goal {n!r} must be an integer")
            alpha.append(a)
    return Instance(tuple(coupons), tuple(names), tuple(sets), None if alpha is None else tuple(alpha))


def load_instance_file(path: str | Path) -> Instance:
    return load_instance(Path(path).read_text())


def load_fixture(name: str) -> Instance:
    """One of the bundled instances, e.g. ``load_fixture("toy_g1")``."""
    res = resources.files("gccp") / "fixtures" / f"{name}.json"
    if not res.is_file():
        raise InstanceError(f"no bundled instance {name!r}")
    return load_instance(res.read_text())


def dump_instance(inst: Instance, **kwargs) -> str:
    return json.dumps(inst.to_dict(), **kwargs)


def reduce_goals(inst: Instance) -> Instance:
    """Drop duplicate goals and goals that contain another goal.

    Hitting the smaller set already hits the superset, so the transversal
    family is unchanged.  The first occurrence of a duplicate keeps its name.
    Any alpha vector is dropped: the reduction is only sound for plain
    transversals.
    """
    keep: list[int] = []
    masks = inst.masks
    for i, m in enumerate(masks):
        dominated = False
        for j, other in enumerate(masks):
            if j == i:
                continue
            if other & m == other and (other != m or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return Instance(inst.coupons, tuple(inst.goal_names[i] for i in keep),
                    tuple(inst.goals[i] for i in keep))


def build_partition_instance(probabilities: Sequence[Fraction | int | str]) -> Instance:
    """Replicate coupons so that rational drawing probabilities become uniform.

    With common denominator D (the lcm of the input denominators) and
    ``p_i = m_i / D``, the result has D coupons split into consecutive
    disjoint goals of sizes m_1, ..., m_h.
    """
    ps = [Fraction(p) for p in probabilities]
    if not ps:
        raise InstanceError("need at least one probability")
    for i, p in enumerate(ps):
        if p <= 0:
            raise InstanceError(f"probability #{i + 1} is not positive: {p}")
    if sum(ps) != 1:
        raise InstanceError(f"probabilities sum to {sum(ps)}, not 1")
    D = math.lcm(*(p.denominator for p in ps))
    sizes = [p.numerator * (D // p.denominator) for p in ps]
    goals, start = [], 0
    for m in sizes:
        goals.append(range(start, start + m))
        start += m
    return Instance.from_sets(D, goals, names=[f"p{i + 1}" for i in range(len(ps))])
