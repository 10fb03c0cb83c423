"""Oriented graphs and the discrete calculus on them.

Vertex fields are real vectors indexed by vertices, edge fields by edges.
The coboundary of a vertex field takes head-minus-tail differences; the
divergence is its adjoint under the standard inner products.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    DisconnectedError,
    DuplicateEdgeError,
    IndexOutOfRangeError,
    SelfLoopError,
)

__all__ = [
    "OrientedGraph",
    "build_graph",
    "coboundary",
    "divergence",
    "laplacian_matrix",
    "mean_zero_project",
    "betti_1",
]


@dataclass(frozen=True)
class OrientedGraph:
    """Finite connected simple graph with a fixed orientation per edge.

    Edges are (tail, head) pairs; the orientation is bookkeeping only and
    carries no modelling meaning.  Instances are built through
    :func:`build_graph`, which validates the input.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    tails: np.ndarray = field(repr=False, compare=False)
    heads: np.ndarray = field(repr=False, compare=False)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def incidence_matrix(self) -> np.ndarray:
        """Dense coboundary matrix of shape (edge_count, vertex_count).

        Row e has +1 at the head and -1 at the tail of edge e, so that
        ``coboundary(g, u) == incidence_matrix() @ u``.
        """
        d = np.zeros((self.edge_count, self.vertex_count))
        rows = np.arange(self.edge_count)
        d[rows, self.heads] = 1.0
        d[rows, self.tails] = -1.0
        return d


def build_graph(vertex_count: int, edges) -> OrientedGraph:
    """Validate and construct an :class:`OrientedGraph`.

    Args:
        vertex_count: number of vertices, at least 1; vertices are
            0 .. vertex_count-1.
        edges: iterable of (tail, head) pairs.

    Raises:
        IndexOutOfRangeError: an endpoint is not a valid vertex.
        SelfLoopError: tail equals head.
        DuplicateEdgeError: an unordered pair repeats.
        DisconnectedError: the underlying graph is not connected.
    """
    if vertex_count < 1:
        raise ValueError(f"vertex_count must be >= 1, got {vertex_count}")
    pairs = []
    for k, (t, h) in enumerate(edges):
        t, h = int(t), int(h)
        if not (0 <= t < vertex_count and 0 <= h < vertex_count):
            raise IndexOutOfRangeError(
                f"edge {k} = ({t}, {h}) has an endpoint outside "
                f"[0, {vertex_count})"
            )
        if t == h:
            raise SelfLoopError(f"edge {k} = ({t}, {h}) is a self-loop")
        pairs.append((t, h))
    seen: dict[tuple[int, int], int] = {}
    for k, (t, h) in enumerate(pairs):
        key = (t, h) if t < h else (h, t)
        if key in seen:
            raise DuplicateEdgeError(
                f"edges {seen[key]} and {k} both join vertices {key}"
            )
        seen[key] = k

    parent = list(range(vertex_count))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for t, h in pairs:
        parent[find(t)] = find(h)
    roots = {find(v) for v in range(vertex_count)}
    if len(roots) > 1:
        raise DisconnectedError(
            f"graph has {len(roots)} connected components"
        )

    tails = np.array([t for t, _ in pairs], dtype=np.intp)
    heads = np.array([h for _, h in pairs], dtype=np.intp)
    tails.setflags(write=False)
    heads.setflags(write=False)
    return OrientedGraph(vertex_count, tuple(pairs), tails, heads)


def _as_vertex_field(g: OrientedGraph, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.shape != (g.vertex_count,):
        raise DimensionMismatchError(
            f"vertex field has shape {u.shape}, expected ({g.vertex_count},)"
        )
    return u


def _as_edge_field(g: OrientedGraph, w) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if w.shape != (g.edge_count,):
        raise DimensionMismatchError(
            f"edge field has shape {w.shape}, expected ({g.edge_count},)"
        )
    return w


def coboundary(g: OrientedGraph, u) -> np.ndarray:
    """Edge field of head-minus-tail differences of a vertex field."""
    u = _as_vertex_field(g, u)
    return u[g.heads] - u[g.tails]


def divergence(g: OrientedGraph, w) -> np.ndarray:
    """Adjoint of :func:`coboundary`: per-vertex inflow minus outflow.

    Satisfies <w, coboundary(u)> == <divergence(w), u> for all fields, and
    its output always sums to zero in exact arithmetic.
    """
    w = _as_edge_field(g, w)
    n = g.vertex_count
    return np.bincount(g.heads, weights=w, minlength=n) - np.bincount(
        g.tails, weights=w, minlength=n
    )


def laplacian_matrix(g: OrientedGraph) -> np.ndarray:
    """Dense graph Laplacian, the composition divergence-after-coboundary.

    Symmetric positive semidefinite with row sums zero; the diagonal holds
    vertex degrees and off-diagonal entries are -1 per edge.
    """
    d = g.incidence_matrix()
    return d.T @ d


def mean_zero_project(u) -> np.ndarray:
    """Orthogonal projection of a vector onto the mean-zero slice."""
    u = np.asarray(u, dtype=float)
    if u.ndim != 1:
        raise DimensionMismatchError(f"expected a vector, got shape {u.shape}")
    if u.size == 0:
        return u.copy()
    return u - u.mean()


def betti_1(g: OrientedGraph) -> int:
    """Number of independent cycles: edges - vertices + 1 (connected)."""
    return g.edge_count - g.vertex_count + 1
