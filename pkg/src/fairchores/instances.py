"""Core data model: chore-division instances, orderings, and allocations.

Valuations are non-negative integers (chores cost effort, larger means
worse). All threshold arithmetic is exact: thresholds are rationals and
every comparison against an integer load happens through
``fractions.Fraction``, never floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import (
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .errors import InputError

# Exact rational used for thresholds such as 11/9 of a maximin share.
# Fraction keeps lowest terms and compares exactly against integers.
Ratio = Fraction

# Valuations must fit in a signed 64-bit word so serialized instances
# stay portable to fixed-width consumers.
MAX_VALUE = 2**63 - 1


def _as_int(value: object, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{what} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class Instance:
    """n agents, m chores, and an n x m non-negative integer value matrix.

    Attributes:
        num_agents: number of agents n (at least 1).
        num_chores: number of chores m (0 allowed).
        valuations: tuple of n rows; valuations[i][c] is agent i's cost
            for chore c.
    """

    num_agents: int
    num_chores: int
    valuations: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.valuations)
        object.__setattr__(self, "valuations", rows)
        if _as_int(self.num_agents, "num_agents") < 1:
            raise InputError("an instance needs at least one agent")
        if _as_int(self.num_chores, "num_chores") < 0:
            raise InputError("num_chores must be non-negative")
        if len(rows) != self.num_agents:
            raise InputError(
                f"expected {self.num_agents} valuation rows, got {len(rows)}"
            )
        for i, row in enumerate(rows):
            if len(row) != self.num_chores:
                raise InputError(
                    f"agent {i}: expected {self.num_chores} values, got {len(row)}"
                )
            for c, value in enumerate(row):
                _as_int(value, f"valuations[{i}][{c}]")
                if value < 0:
                    raise InputError(f"valuations[{i}][{c}] is negative")
                if value > MAX_VALUE:
                    raise InputError(f"valuations[{i}][{c}] exceeds 64-bit range")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Instance":
        rows = [list(row) for row in rows]
        if not rows:
            raise InputError("an instance needs at least one agent")
        return cls(
            num_agents=len(rows),
            num_chores=len(rows[0]),
            valuations=tuple(tuple(row) for row in rows),
        )

    def row(self, agent: int) -> Tuple[int, ...]:
        self._check_agent(agent)
        return self.valuations[agent]

    def value(self, agent: int, chores: Iterable[int]) -> int:
        """Total cost of a set of chores for one agent."""
        row = self.row(agent)
        return sum(row[c] for c in chores)

    def total(self, agent: int) -> int:
        return sum(self.row(agent))

    def _check_agent(self, agent: int) -> None:
        if not 0 <= agent < self.num_agents:
            raise InputError(f"agent index {agent} out of range")


@dataclass(frozen=True)
class OrderedInstance:
    """An instance whose rows are each sorted nonincreasing.

    Position j holds every agent's j-th largest chore, so the shared
    descending order is simply 0..m-1. ``source_ranks[i][j]`` is the
    original chore index behind agent i's position j.
    """

    instance: Instance
    source_ranks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        ranks = tuple(tuple(row) for row in self.source_ranks)
        object.__setattr__(self, "source_ranks", ranks)
        inst = self.instance
        if len(ranks) != inst.num_agents:
            raise InputError("source_ranks must have one row per agent")
        full = set(range(inst.num_chores))
        for i, row in enumerate(inst.valuations):
            for j in range(1, len(row)):
                if row[j - 1] < row[j]:
                    raise InputError(f"agent {i}: row not nonincreasing at {j}")
            if set(ranks[i]) != full or len(ranks[i]) != inst.num_chores:
                raise InputError(f"agent {i}: source_ranks row is not a permutation")


@dataclass(frozen=True)
class Allocation:
    """n bundles plus an explicit leftover set.

    Bundles and leftover are pairwise disjoint and together cover chores
    0..m-1 exactly; chores an algorithm could not place stay visible in
    ``leftover`` instead of silently vanishing.
    """

    bundles: Tuple[FrozenSet[int], ...]
    leftover: FrozenSet[int]

    def __post_init__(self) -> None:
        bundles = tuple(frozenset(b) for b in self.bundles)
        leftover = frozenset(self.leftover)
        object.__setattr__(self, "bundles", bundles)
        object.__setattr__(self, "leftover", leftover)
        seen: set = set()
        count = 0
        for part in (*bundles, leftover):
            seen.update(part)
            count += len(part)
        if count != len(seen):
            raise InputError("bundles and leftover must be pairwise disjoint")
        if seen != set(range(len(seen))):
            raise InputError("allocation must cover chores 0..m-1 exactly")

    @property
    def num_chores(self) -> int:
        return sum(len(b) for b in self.bundles) + len(self.leftover)

    @property
    def complete(self) -> bool:
        return not self.leftover


@dataclass(frozen=True)
class ThresholdVector:
    """Per-agent rational caps driving the greedy allocator."""

    thresholds: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        values = tuple(Fraction(t) for t in self.thresholds)
        object.__setattr__(self, "thresholds", values)
        for i, t in enumerate(values):
            if t < 0:
                raise InputError(f"threshold {i} is negative")

    @classmethod
    def uniform(cls, n: int, value: Union[int, Fraction]) -> "ThresholdVector":
        return cls(tuple(Fraction(value) for _ in range(n)))

    def __len__(self) -> int:
        return len(self.thresholds)

    def __getitem__(self, i: int) -> Fraction:
        return self.thresholds[i]


def ordered_instance(inst: Instance) -> OrderedInstance:
    """Sort every agent's row nonincreasing, remembering the permutations.

    Ties are broken by ascending original chore index, so the result is
    reproducible and ``ordered_instance`` is idempotent on its output.
    """
    rows: List[Tuple[int, ...]] = []
    ranks: List[Tuple[int, ...]] = []
    for row in inst.valuations:
        order = sorted(range(inst.num_chores), key=lambda c: (-row[c], c))
        rows.append(tuple(row[c] for c in order))
        ranks.append(tuple(order))
    ordered = Instance(inst.num_agents, inst.num_chores, tuple(rows))
    return OrderedInstance(instance=ordered, source_ranks=tuple(ranks))


def ido_order(inst: Instance) -> Optional[Tuple[int, ...]]:
    """A chore order that is nonincreasing for every agent, if one exists.

    Sorting by the full per-agent value vectors (descending, ties by
    chore index) yields a valid order whenever any does: a shared order
    forces every pair of chores to be comparable coordinatewise, and the
    lexicographic sort respects that dominance.
    """
    order = sorted(
        range(inst.num_chores),
        key=lambda c: tuple(-inst.valuations[i][c] for i in range(inst.num_agents))
        + (c,),
    )
    for row in inst.valuations:
        for a, b in zip(order, order[1:]):
            if row[a] < row[b]:
                return None
    return tuple(order)


def is_ido(inst: Instance) -> bool:
    """True iff all agents rank chores identically by value."""
    return ido_order(inst) is not None


def lift_allocation(
    inst: Instance, ordd: OrderedInstance, ord_alloc: Allocation
) -> Allocation:
    """Map a complete allocation of the ordered instance back to ``inst``.

    Walks ordered positions from the smallest chore (j = m-1) to the
    largest (j = 0); the agent owning position j picks their currently
    cheapest remaining original chore (ties by lowest chore index). Each
    agent ends up no worse off than their ordered bundle:
    v_i(result_i) <= v*_i(ord_alloc_i).
    """
    n, m = inst.num_agents, inst.num_chores
    if ordd.instance.num_agents != n or ordd.instance.num_chores != m:
        raise InputError("ordered instance does not match the original")
    if ord_alloc.leftover:
        raise InputError("lift_allocation needs a complete ordered allocation")
    if len(ord_alloc.bundles) != n or ord_alloc.num_chores != m:
        raise InputError("ordered allocation does not match the instance")

    owner = [0] * m
    for i, bundle in enumerate(ord_alloc.bundles):
        for j in bundle:
            owner[j] = i

    remaining = set(range(m))
    picked: List[List[int]] = [[] for _ in range(n)]
    for j in range(m - 1, -1, -1):
        agent = owner[j]
        row = inst.valuations[agent]
        chore = min(remaining, key=lambda c: (row[c], c))
        picked[agent].append(chore)
        remaining.remove(chore)
    return Allocation(
        bundles=tuple(frozenset(b) for b in picked), leftover=frozenset()
    )


@dataclass(frozen=True)
class VerificationReport:
    """Per-agent loads and threshold flags for an allocation."""

    loads: Tuple[int, ...]
    within_threshold: Tuple[bool, ...]
    complete: bool


def verify_allocation(
    inst: Instance, alloc: Allocation, thresholds: ThresholdVector
) -> VerificationReport:
    """Check an allocation against an instance and per-agent caps."""
    if len(alloc.bundles) != inst.num_agents:
        raise InputError("allocation bundle count does not match agent count")
    if alloc.num_chores != inst.num_chores:
        raise InputError("allocation chore universe does not match the instance")
    if len(thresholds) != inst.num_agents:
        raise InputError("threshold vector length does not match agent count")
    loads = tuple(
        inst.value(i, alloc.bundles[i]) for i in range(inst.num_agents)
    )
    within = tuple(loads[i] <= thresholds[i] for i in range(inst.num_agents))
    return VerificationReport(
        loads=loads, within_threshold=within, complete=alloc.complete
    )


def classify_chores(
    inst: Instance, agent: int, cutoff: Union[int, Fraction]
) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Split chores into (large, small) for one agent.

    Large means strictly above the cutoff; small is the complement, so
    the two sets always partition 0..m-1.
    """
    row = inst.row(agent)
    bound = Fraction(cutoff)
    large = frozenset(c for c in range(inst.num_chores) if row[c] > bound)
    small = frozenset(range(inst.num_chores)) - large
    return large, small


# -- JSON interchange ---------------------------------------------------------
#
# Instance files:   {"agents": n, "chores": m, "valuations": [[int, ...], ...]}
# Allocation files: {"bundles": [[choreIdx, ...], ...], "leftover": [...]}
# Index lists are emitted sorted so the files round-trip byte-stably.


def instance_to_json(inst: Instance) -> Mapping[str, object]:
    return {
        "agents": inst.num_agents,
        "chores": inst.num_chores,
        "valuations": [list(row) for row in inst.valuations],
    }


def instance_from_json(obj: object) -> Instance:
    if not isinstance(obj, dict):
        raise InputError("instance JSON must be an object")
    try:
        agents = obj["agents"]
        chores = obj["chores"]
        valuations = obj["valuations"]
    except KeyError as exc:
        raise InputError(f"instance JSON missing key {exc.args[0]!r}") from exc
    if not isinstance(valuations, list) or not all(
        isinstance(row, list) for row in valuations
    ):
        raise InputError("valuations must be a list of rows")
    inst = Instance(
        num_agents=_as_int(agents, "agents"),
        num_chores=_as_int(chores, "chores"),
        valuations=tuple(tuple(row) for row in valuations),
    )
    return inst


def allocation_to_json(alloc: Allocation) -> Mapping[str, object]:
    return {
        "bundles": [sorted(b) for b in alloc.bundles],
        "leftover": sorted(alloc.leftover),
    }


def allocation_from_json(obj: object) -> Allocation:
    if not isinstance(obj, dict):
        raise InputError("allocation JSON must be an object")
    try:
        bundles = obj["bundles"]
        leftover = obj["leftover"]
    except KeyError as exc:
        raise InputError(f"allocation JSON missing key {exc.args[0]!r}") from exc
    if not isinstance(bundles, list) or not all(
        isinstance(b, list) for b in bundles
    ):
        raise InputError("bundles must be a list of index lists")
    if not isinstance(leftover, list):
        raise InputError("leftover must be an index list")
    for idx in [c for b in bundles for c in b] + list(leftover):
        _as_int(idx, "chore index")
    return Allocation(
        bundles=tuple(frozenset(b) for b in bundles), leftover=frozenset(leftover)
    )


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            obj = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from exc
    return instance_from_json(obj)


def load_allocation(path: str) -> Allocation:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            obj = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from exc
    return allocation_from_json(obj)
