"""Shared generators and independent oracles for the test suite.

The cycle-count oracle enumerates simple cycles directly from adjacency
lists, with no shared code paths with the library's biconnected-component
machinery.
"""

import itertools

import numpy as np

from coclosed import OrientedGraph, build_graph

TWO_TRIANGLE_EDGES = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 0)]
K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def two_triangle() -> OrientedGraph:
    return build_graph(4, TWO_TRIANGLE_EDGES)


def k4() -> OrientedGraph:
    return build_graph(4, K4_EDGES)


def random_connected_graph(rng, n, extra_edges=0) -> OrientedGraph:
    """Random spanning tree plus extra non-parallel edges."""
    edges = []
    seen = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges.append((u, v) if rng.random() < 0.5 else (v, u))
        seen.add((u, v))
    tries = 0
    while extra_edges > 0 and tries < 50 * n:
        a, b = (int(x) for x in rng.integers(0, n, 2))
        key = (min(a, b), max(a, b))
        if a != b and key not in seen:
            seen.add(key)
            edges.append((a, b) if rng.random() < 0.5 else (b, a))
            extra_edges -= 1
        tries += 1
    return build_graph(n, edges)


def mean_zero_vertex(rng, n, amp=2.0) -> np.ndarray:
    u = rng.uniform(-amp, amp, n)
    return u - u.mean()


def simple_cycle_edge_counts(g: OrientedGraph) -> np.ndarray:
    """Number of distinct simple cycles through each edge, by enumeration.

    Walks every simple path from each start vertex using only vertices not
    smaller than the start, so each cycle is discovered exactly twice (once
    per direction) and deduplicated by its edge set.
    """
    adj = [[] for _ in range(g.vertex_count)]
    for k, (t, h) in enumerate(g.edges):
        adj[t].append((h, k))
        adj[h].append((t, k))
    cycles = set()
    for start in range(g.vertex_count):
        stack = [(start, [start], [])]
        while stack:
            v, path, used = stack.pop()
            for nbr, k in adj[v]:
                if nbr == start and len(path) >= 3 and k != used[-1]:
                    cycles.add(frozenset(used + [k]))
                elif nbr > start and nbr not in path:
                    stack.append((nbr, path + [nbr], used + [k]))
    counts = np.zeros(g.edge_count, dtype=int)
    for cyc in cycles:
        for k in cyc:
            counts[k] += 1
    return counts


def connected_graphs_upto(max_vertices: int):
    """All connected simple labeled graphs with at most max_vertices."""
    for n in range(1, max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for size in range(n - 1, len(pairs) + 1):
            for subset in itertools.combinations(pairs, size):
                if _connected(n, subset):
                    yield build_graph(n, list(subset))


def _connected(n, edges) -> bool:
    if n == 1:
        return True
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    return len(seen) == n
