class InfeasibleInstanceError(ValueError):
    """The instance (or a derived subproblem) has no feasible solution."""


class AugmentationInfeasibleError(InfeasibleInstanceError):
    """A set with requirement 1 has no candidate edge crossing it."""


class InfeasibleHittingSetError(InfeasibleInstanceError):
    """Some set of the hitting-set family is empty."""


class NoArborescenceError(ValueError):
    """The digraph has no r-rooted k-arborescence."""


class DecompositionError(ValueError):
    """An arc multiset is not a valid r-rooted k-arborescence."""


class NoJoinError(ValueError):
    """No W-join exists in the graph."""


class ArborescenceSolverError(RuntimeError):
    """CBC stopped without proving a node LP optimal or infeasible (time limit, numerical trouble)."""
