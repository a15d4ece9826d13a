"""Exception hierarchy.

Every error carries a short ``category`` string; the CLI prints it so that
failures are machine parseable.
"""


class ThzDraError(Exception):
    category = "error"


class DomainError(ThzDraError, ValueError):
    """Input outside the valid domain of an operation."""

    category = "domain"


class ConvergenceError(ThzDraError, ArithmeticError):
    """An iterative solver or quadrature did not converge.

    ``trace`` holds solver-specific diagnostics (iterates, last estimates).
    """

    category = "convergence"

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace) if trace is not None else []


class SpuriousRootError(ConvergenceError):
    """Solver converged onto a non-guided (light-line / branch) zero."""

    category = "spurious-root"


class CutoffError(DomainError):
    category = "cutoff"


class NoSppBranchError(DomainError):
    category = "no-spp-branch"


class RootNotFoundError(ThzDraError, LookupError):
    category = "not-found"


class InfeasibleDesignError(ThzDraError):
    """No geometry within the search window hits the target.

    ``closest`` holds the best achievable (parameter, frequency) pair.
    """

    category = "infeasible"

    def __init__(self, message, closest=None):
        super().__init__(message)
        self.closest = closest


class ConfigError(ThzDraError, ValueError):
    category = "config"


class BranchCutWarning(RuntimeWarning):
    """A residual was queried exactly on a cladding branch cut and nudged off it."""
