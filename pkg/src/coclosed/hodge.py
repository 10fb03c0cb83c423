"""Laplacian solves on the mean-zero slice and linear circulation projectors.

The orthogonal projector onto divergence-free edge fields subtracts the
coboundary of a Laplacian solve.  Weighted variants use a positive edge
weight vector both in the divergence and in the Laplacian, which is what
Newton steps for non-quadratic edge energies need.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg

from .errors import (
    EigenFailedError,
    NonpositiveWeightError,
    RhsNotMeanZeroError,
    SolveFailedError,
)
from .graphs import (
    OrientedGraph,
    _as_edge_field,
    _as_vertex_field,
    coboundary,
    divergence,
    laplacian_matrix,
    mean_zero_project,
)

__all__ = [
    "solve_laplacian",
    "hodge_project",
    "weighted_divergence",
    "weighted_laplacian_solve",
    "weighted_hodge_project",
    "poincare_constant",
]

# Mean-zero admission gate for solve right-hand sides.
_MEAN_ZERO_RTOL = 1e-10
# Relative residual required of a Laplacian solve.
_SOLVE_RTOL = 1e-11


def _check_weights(g: OrientedGraph, w) -> np.ndarray:
    w = _as_edge_field(g, w)
    if w.size and w.min() <= 0.0:
        k = int(np.argmin(w))
        raise NonpositiveWeightError(
            f"weight {w[k]!r} at edge {k} is not positive"
        )
    return w


def _require_mean_zero_rhs(rhs: np.ndarray, n: int) -> None:
    scale = np.max(np.abs(rhs)) if rhs.size else 0.0
    if abs(rhs.sum()) > _MEAN_ZERO_RTOL * scale * n:
        raise RhsNotMeanZeroError(
            f"rhs sums to {rhs.sum()!r}, beyond the mean-zero gate"
        )


def _solve_grounded(g: OrientedGraph, w: np.ndarray | None, rhs: np.ndarray) -> np.ndarray:
    """Solve the (weighted) Laplacian system on the mean-zero slice.

    Pins vertex 0, solves the grounded SPD system by Cholesky, re-centers.
    One round of iterative refinement before giving up on the residual.
    """
    n = g.vertex_count
    if n == 1:
        return np.zeros(1)
    d = g.incidence_matrix()
    lap = d.T @ d if w is None else d.T @ (w[:, None] * d)
    a = lap[1:, 1:]
    try:
        factor = scipy.linalg.cho_factor(a, check_finite=False)
        x = scipy.linalg.cho_solve(factor, rhs[1:], check_finite=False)
    except scipy.linalg.LinAlgError as exc:
        raise SolveFailedError(f"grounded Cholesky failed: {exc}") from exc
    u = np.concatenate(([0.0], x))
    rhs_norm = float(np.linalg.norm(rhs))
    # absolute floor keeps the gate meaningful when rhs sits at roundoff
    gate = _SOLVE_RTOL * rhs_norm + 1e-14 * float(np.abs(lap).sum())
    residual = float(np.linalg.norm(lap @ u - rhs))
    if residual > gate:
        x = x + scipy.linalg.cho_solve(factor, (rhs - lap @ u)[1:], check_finite=False)
        u = np.concatenate(([0.0], x))
        residual = float(np.linalg.norm(lap @ u - rhs))
        if residual > gate:
            raise SolveFailedError(
                f"solve residual {residual:.3e} exceeds gate {gate:.3e}"
            )
    return mean_zero_project(u)


def solve_laplacian(g: OrientedGraph, rhs) -> np.ndarray:
    """Mean-zero solution of the Laplacian equation for a mean-zero rhs.

    Raises:
        RhsNotMeanZeroError: the rhs fails the mean-zero gate.
        SolveFailedError: the relative residual cannot be brought below
            1e-11.
    """
    rhs = _as_vertex_field(g, rhs)
    _require_mean_zero_rhs(rhs, g.vertex_count)
    return _solve_grounded(g, None, rhs)


def hodge_project(g: OrientedGraph, omega) -> np.ndarray:
    """Orthogonal projection of an edge field onto divergence-free fields."""
    omega = _as_edge_field(g, omega)
    if g.edge_count == 0:
        return omega.copy()
    u = _solve_grounded(g, None, divergence(g, omega))
    return omega - coboundary(g, u)


def weighted_divergence(g: OrientedGraph, weights, omega) -> np.ndarray:
    """Divergence of the weight-rescaled field: adjoint of the coboundary
    under the weighted edge inner product."""
    weights = _check_weights(g, weights)
    omega = _as_edge_field(g, omega)
    return divergence(g, weights * omega)


def weighted_laplacian_solve(g: OrientedGraph, weights, rhs) -> np.ndarray:
    """Mean-zero solve with the weighted Laplacian."""
    weights = _check_weights(g, weights)
    rhs = _as_vertex_field(g, rhs)
    _require_mean_zero_rhs(rhs, g.vertex_count)
    return _solve_grounded(g, weights, rhs)


def weighted_hodge_project(g: OrientedGraph, weights, omega) -> np.ndarray:
    """Projection onto weighted-divergence-free fields along coboundaries.

    Idempotent and self-adjoint in the weighted inner product; reduces to
    :func:`hodge_project` for unit weights.
    """
    weights = _check_weights(g, weights)
    omega = _as_edge_field(g, omega)
    if g.edge_count == 0:
        return omega.copy()
    u = _solve_grounded(g, weights, divergence(g, weights * omega))
    return omega - coboundary(g, u)


def poincare_constant(g: OrientedGraph) -> float:
    """Largest c with ||coboundary(u)|| >= c ||u|| for mean-zero u.

    Equals the square root of the second-smallest Laplacian eigenvalue.
    Returns inf for the single-vertex graph, whose mean-zero slice is {0}.
    """
    if g.vertex_count == 1:
        return math.inf
    try:
        eigenvalues = np.linalg.eigvalsh(laplacian_matrix(g))
    except np.linalg.LinAlgError as exc:
        raise EigenFailedError(f"eigensolver failed: {exc}") from exc
    return float(math.sqrt(max(eigenvalues[1], 0.0)))
