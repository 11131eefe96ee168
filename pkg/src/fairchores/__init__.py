"""Approximately fair division of indivisible chores.

Everything revolves around the maximin share: the worst bundle cost an
agent could guarantee themselves if they cut the chores into n bundles and
received the heaviest. The package provides an exact oracle for that
share, a threshold-greedy allocator, an oracle-backed solver meeting
11/9 of each share, a polynomial-time solver meeting 5/4, and an
identical-machines scheduler within 11/9 of the optimal makespan.
"""

from .errors import (
    FairChoresError,
    InputError,
    InstanceTooLargeError,
    NodeBudgetError,
    OracleLimitError,
    SolverInvariantError,
)
from .fixtures import Fixture, builtin_fixtures
from .generator import GeneratorConfig, generate
from .greedy import AmmsReport, GreedyResult, TraceEntry, check_amms, greedy_fill
from .instances import (
    Allocation,
    Instance,
    OrderedInstance,
    Ratio,
    ThresholdVector,
    VerificationReport,
    classify_chores,
    ido_order,
    is_ido,
    lift_allocation,
    ordered_instance,
    verify_allocation,
)
from .oracle import MmsProfile, OracleLimits, exact_mms, mms_profile, optimal_makespan
from .scheduling import LptResult, ScheduleResult, schedule_119, schedule_lpt
from .solvers import (
    BoundCertificate,
    ExistenceResult,
    PolyResult,
    SearchBounds,
    TestOutcome,
    naive_test,
    search_bounds,
    search_threshold,
    solve_existence_119,
    solve_poly_54,
    threshold_test,
)
from .cli import run_cli

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "AmmsReport",
    "BoundCertificate",
    "ExistenceResult",
    "FairChoresError",
    "Fixture",
    "GeneratorConfig",
    "GreedyResult",
    "InputError",
    "Instance",
    "InstanceTooLargeError",
    "LptResult",
    "MmsProfile",
    "NodeBudgetError",
    "OracleLimitError",
    "OracleLimits",
    "OrderedInstance",
    "PolyResult",
    "Ratio",
    "ScheduleResult",
    "SearchBounds",
    "SolverInvariantError",
    "TestOutcome",
    "ThresholdVector",
    "TraceEntry",
    "VerificationReport",
    "builtin_fixtures",
    "check_amms",
    "classify_chores",
    "exact_mms",
    "generate",
    "greedy_fill",
    "ido_order",
    "is_ido",
    "lift_allocation",
    "mms_profile",
    "naive_test",
    "optimal_makespan",
    "ordered_instance",
    "run_cli",
    "schedule_119",
    "schedule_lpt",
    "search_bounds",
    "search_threshold",
    "solve_existence_119",
    "solve_poly_54",
    "threshold_test",
    "verify_allocation",
]
