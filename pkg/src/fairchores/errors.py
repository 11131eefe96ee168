"""Exception taxonomy shared across the library and the CLI.

The CLI maps these onto exit codes: bad user input (2), a violated
internal solver invariant (3), and oracle resource limits (4).
"""


class FairChoresError(Exception):
    """Base class for every error raised by this package."""


class InputError(FairChoresError, ValueError):
    """An instance, allocation, or argument violates a documented contract."""


class SolverInvariantError(FairChoresError):
    """A guarantee the solver relies on failed at runtime.

    Seeing this means a bug somewhere: the algorithms never raise it on
    inputs that satisfy their preconditions.
    """


class OracleLimitError(FairChoresError):
    """The exact oracle refused to run or to continue within its limits."""


class InstanceTooLargeError(OracleLimitError):
    """The instance has more chores than the oracle limit allows."""


class NodeBudgetError(OracleLimitError):
    """The branch-and-bound search exhausted its node budget.

    Never downgraded to an approximation; the caller must raise the
    budget or shrink the instance.
    """
