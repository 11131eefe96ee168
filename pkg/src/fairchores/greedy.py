"""Threshold-greedy bundle filling on identically-ordered instances.

One bundle is built per round by a single pass over the remaining
chores, largest first: a chore joins the bundle as long as some still
unassigned agent could accept the grown bundle within their threshold.
The finished bundle then goes to the lowest-index unassigned agent it
fits. Whatever no round could place is reported as leftover rather than
raised, because the interesting counterexamples live exactly there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import InputError, SolverInvariantError
from .instances import (
    Allocation,
    Instance,
    OrderedInstance,
    Ratio,
    ThresholdVector,
    ido_order,
)
from .oracle import MmsProfile


@dataclass(frozen=True)
class TraceEntry:
    """One accepted chore: which round took it, who vouched for it.

    ``witness_load`` is the witnessing agent's bundle cost right after
    the insertion. Debugging aid only; no equality contract.
    """

    round_index: int
    chore: int
    witness: int
    witness_load: int

    def to_json(self) -> dict:
        return {
            "round": self.round_index,
            "chore": self.chore,
            "witness": self.witness,
            "load": self.witness_load,
        }


@dataclass(frozen=True)
class GreedyResult:
    """Allocation (bundles indexed by agent), round ownership, and trace.

    ``assignment[k]`` is the agent who received the bundle built in
    round k, so ``allocation.bundles[assignment[k]]`` recovers bundles
    in round order.
    """

    allocation: Allocation
    assignment: Tuple[int, ...]
    trace: Tuple[TraceEntry, ...]

    def round_bundles(self) -> Tuple[frozenset, ...]:
        return tuple(self.allocation.bundles[i] for i in self.assignment)


def greedy_fill(
    target: Union[OrderedInstance, Instance], thresholds: ThresholdVector
) -> GreedyResult:
    """Run the n-round threshold greedy on an IDO instance.

    Accepts an OrderedInstance (scanned by position) or a raw instance
    that must already share one descending chore order. Within a round
    the scan never revisits earlier chores; acceptance asks, in
    ascending agent index, whether anyone unassigned could absorb the
    grown bundle. The round's bundle always has a feasible taker: the
    last accepted chore's witness still qualifies, and an empty bundle
    fits anyone. Deterministic given its inputs.
    """
    if isinstance(target, OrderedInstance):
        inst = target.instance
        scan = list(range(inst.num_chores))
    else:
        inst = target
        order = ido_order(inst)
        if order is None:
            raise InputError("greedy_fill needs an identically-ordered instance")
        scan = list(order)
    n = inst.num_agents
    if len(thresholds) != n:
        raise InputError("threshold vector length does not match agent count")

    rows = inst.valuations
    unassigned = list(range(n))
    bundles: List[frozenset] = [frozenset()] * n
    assignment: List[int] = []
    trace: List[TraceEntry] = []

    for round_index in range(n):
        loads = {i: 0 for i in unassigned}
        bundle: List[int] = []
        kept: List[int] = []
        for chore in scan:
            witness: Optional[int] = None
            for i in unassigned:
                if loads[i] + rows[i][chore] <= thresholds[i]:
                    witness = i
                    break
            if witness is None:
                kept.append(chore)
                continue
            bundle.append(chore)
            for i in unassigned:
                loads[i] += rows[i][chore]
            trace.append(
                TraceEntry(round_index, chore, witness, loads[witness])
            )
        owner: Optional[int] = None
        for i in unassigned:
            if loads[i] <= thresholds[i]:
                owner = i
                break
        if owner is None:
            raise SolverInvariantError(
                "no unassigned agent accepts the finished bundle"
            )
        bundles[owner] = frozenset(bundle)
        assignment.append(owner)
        unassigned.remove(owner)
        scan = kept

    allocation = Allocation(bundles=tuple(bundles), leftover=frozenset(scan))
    return GreedyResult(
        allocation=allocation, assignment=tuple(assignment), trace=tuple(trace)
    )


@dataclass(frozen=True)
class AmmsReport:
    """Outcome of checking loads against alpha times each maximin share.

    ``ratios[i]`` is the exact load/share fraction, 0 when both are
    zero, and None in the degenerate case of a positive load against a
    zero share (which also fails the check).
    """

    passed: bool
    within: Tuple[bool, ...]
    ratios: Tuple[Optional[Fraction], ...]


def check_amms(
    inst: Instance, alloc: Allocation, profile: MmsProfile, alpha: Ratio
) -> AmmsReport:
    """Does every agent carry at most alpha times their maximin share?"""
    if not alloc.complete:
        raise InputError("check_amms needs a complete allocation")
    if len(alloc.bundles) != inst.num_agents or alloc.num_chores != inst.num_chores:
        raise InputError("allocation does not match the instance")
    if len(profile.values) != inst.num_agents:
        raise InputError("profile does not match the instance")

    within: List[bool] = []
    ratios: List[Optional[Fraction]] = []
    for i in range(inst.num_agents):
        load = inst.value(i, alloc.bundles[i])
        share = profile.values[i]
        if share > 0:
            within.append(Fraction(load) <= alpha * share)
            ratios.append(Fraction(load, share))
        elif load == 0:
            within.append(True)
            ratios.append(Fraction(0))
        else:
            within.append(False)
            ratios.append(None)
    return AmmsReport(passed=all(within), within=tuple(within), ratios=tuple(ratios))
