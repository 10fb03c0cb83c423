"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CoclosedError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(CoclosedError):
    """A vertex or edge field has the wrong length for its graph."""


class GraphError(CoclosedError):
    """Invalid graph construction input."""


class IndexOutOfRangeError(GraphError):
    """An edge endpoint is outside [0, vertex_count)."""


class SelfLoopError(GraphError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(GraphError):
    """The same unordered vertex pair appears twice."""


class DisconnectedError(GraphError):
    """The underlying undirected graph is not connected."""


class RhsNotMeanZeroError(CoclosedError):
    """Right-hand side of a Laplacian solve is not mean-zero."""


class NotMeanZeroError(CoclosedError):
    """A vertex field expected on the mean-zero slice is not mean-zero."""


class NonpositiveWeightError(CoclosedError):
    """An edge weight vector contains a zero or negative entry."""


class SolveFailedError(CoclosedError):
    """A linear solve did not reach the required residual."""


class EigenFailedError(CoclosedError):
    """The symmetric eigensolver did not converge."""


class DegenerateWeightError(CoclosedError):
    """Hessian edge weights vanish, so the Newton metric is singular."""


class MaxIterationsError(CoclosedError):
    """Newton iteration exceeded its step budget."""


class NoObstructionFoundError(CoclosedError):
    """No scale with a detectable superposition gap; potential behaves
    quadratically on the sweep."""


class NotACactusError(CoclosedError):
    """Graph has two simple cycles sharing an edge."""


class IsACactusError(CoclosedError):
    """Graph has no pair of simple cycles sharing an edge, so no
    obstruction witness exists."""


class CriterionViolatedError(CoclosedError):
    """Numerical collapse evidence contradicts the structural verdict."""
