"""Exception hierarchy.

Domain errors (bad parameters, points on a branch cut) subclass ValueError;
convergence failures subclass RuntimeError.  Everything derives from
FreeconvError so callers can catch the whole library with one clause.
"""


class FreeconvError(Exception):
    pass


class DomainError(FreeconvError, ValueError):
    """Input outside the mathematical domain of the requested map."""


class BranchCutError(DomainError):
    """A point landed on (or within CUT_TOL of) a branch cut."""


class AdmissibilityError(DomainError):
    """(alpha, s) outside the admissible parameter region."""


class HypothesisError(DomainError):
    """A routine's structural hypothesis (symmetry, positivity, ...) fails."""


class ConvergenceError(FreeconvError, RuntimeError):
    """An iterative or extrapolation scheme failed to converge."""


class BracketingError(ConvergenceError):
    """A root bracket could not be established."""


class QuadratureError(ConvergenceError):
    """Adaptive quadrature failed; .estimate carries the best value seen."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate
