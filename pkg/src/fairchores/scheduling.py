"""Identical-machines makespan scheduling.

With one shared valuation the maximin share and the optimal makespan
coincide, and the single-agent naive test becomes trustworthy enough to
binary-search: every threshold at or above 11/9 of the optimum passes,
so the search lands on an s* with 9*s* <= 11*OPT and the greedy at s*
schedules everything within it. A classic longest-processing-time
baseline is included for comparison.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import InputError, SolverInvariantError
from .greedy import greedy_fill
from .instances import (
    Allocation,
    Instance,
    ThresholdVector,
    lift_allocation,
    ordered_instance,
)
from .solvers import MAX_EXPANSIONS, naive_test

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScheduleResult:
    """Machine bundles, their loads, the makespan, and the threshold used."""

    allocation: Allocation
    loads: Tuple[int, ...]
    makespan: int
    threshold: int


@dataclass(frozen=True)
class LptResult:
    """Machine bundles, their loads, and the makespan."""

    allocation: Allocation
    loads: Tuple[int, ...]
    makespan: int


def _check_jobs(values: Sequence[int], machines: int) -> None:
    if machines < 1:
        raise InputError("machines must be at least 1")
    for j, value in enumerate(values):
        if isinstance(value, bool) or not isinstance(value, int):
            raise InputError(f"job {j} must be an integer, got {value!r}")
        if value < 0:
            raise InputError(f"job {j} is negative")


def schedule_119(values: Sequence[int], machines: int) -> ScheduleResult:
    """Schedule jobs on identical machines within 11/9 of optimal.

    Binary-searches the naive test over the pigeonhole bracket
    [lower, 2*lower] with the "high passes" invariant, then runs the
    greedy once at the found threshold. The makespan never exceeds the
    threshold.
    """
    values = list(values)
    _check_jobs(values, machines)
    inst = Instance.from_rows([values] * machines)

    total = sum(values)
    top = max(values) if values else 0
    lo = max(-(-total // machines), top)
    hi = 2 * lo

    expansions = 0
    while not naive_test(inst, 0, hi):
        expansions += 1
        if expansions > MAX_EXPANSIONS:
            raise SolverInvariantError(
                f"naive test keeps failing above the makespan bracket "
                f"(reached s={hi})"
            )
        logger.warning("naive test failed at upper bound s=%d; doubling", hi)
        hi = max(2 * hi, 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if naive_test(inst, 0, mid):
            hi = mid
        else:
            lo = mid + 1
    threshold = lo

    ordd = ordered_instance(inst)
    result = greedy_fill(ordd, ThresholdVector.uniform(machines, threshold))
    if not result.allocation.complete:
        raise SolverInvariantError(
            f"greedy left jobs over at a threshold the test accepted ({threshold})"
        )
    lifted = lift_allocation(inst, ordd, result.allocation)
    loads = tuple(inst.value(b, lifted.bundles[b]) for b in range(machines))
    makespan = max(loads)
    if makespan > threshold:
        raise SolverInvariantError("makespan exceeds the searched threshold")
    return ScheduleResult(
        allocation=lifted, loads=loads, makespan=makespan, threshold=threshold
    )


def schedule_lpt(values: Sequence[int], machines: int) -> LptResult:
    """Longest processing time baseline: 4/3 of optimal, one pass.

    Jobs in nonincreasing order each go to the currently least-loaded
    machine, ties to the lowest machine index.
    """
    values = list(values)
    _check_jobs(values, machines)

    order = sorted(range(len(values)), key=lambda j: (-values[j], j))
    heap: List[Tuple[int, int]] = [(0, b) for b in range(machines)]
    heapq.heapify(heap)
    bundles: List[List[int]] = [[] for _ in range(machines)]
    for job in order:
        load, machine = heapq.heappop(heap)
        bundles[machine].append(job)
        heapq.heappush(heap, (load + values[job], machine))

    loads = tuple(sum(values[j] for j in b) for b in bundles)
    allocation = Allocation(
        bundles=tuple(frozenset(b) for b in bundles), leftover=frozenset()
    )
    return LptResult(allocation=allocation, loads=loads, makespan=max(loads))
