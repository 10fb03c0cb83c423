"""Biconnected components, bridges, and shared-path cycle pairs.

A biconnected component is returned as a list of edge indices.  Components
of one edge are bridges; a component whose edge count equals its vertex
count is a simple cycle; anything larger contains two simple cycles that
share a nontrivial path, which `shared_path_cycles` extracts explicitly.
"""

from __future__ import annotations

from collections import deque

from .graphs import OrientedGraph

__all__ = [
    "biconnected_components",
    "bridge_edges",
    "component_is_cycle",
    "cycle_vertex_walk",
    "shared_path_cycles",
]


def _adjacency(g: OrientedGraph, edge_ids=None) -> list[list[tuple[int, int]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.vertex_count)]
    ids = range(g.edge_count) if edge_ids is None else edge_ids
    for k in ids:
        t, h = g.edges[k]
        adj[t].append((h, k))
        adj[h].append((t, k))
    return adj


def biconnected_components(g: OrientedGraph) -> list[list[int]]:
    """Edge-index lists of the biconnected components (iterative Tarjan)."""
    adj = _adjacency(g)
    n = g.vertex_count
    disc = [-1] * n
    low = [0] * n
    edge_stack: list[int] = []
    components: list[list[int]] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        stack = [(root, -1, 0)]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent_edge, i = stack.pop()
            if i < len(adj[v]):
                stack.append((v, parent_edge, i + 1))
                u, k = adj[v][i]
                if k == parent_edge:
                    continue
                if disc[u] == -1:
                    edge_stack.append(k)
                    disc[u] = low[u] = timer
                    timer += 1
                    stack.append((u, k, 0))
                elif disc[u] < disc[v]:
                    edge_stack.append(k)
                    low[v] = min(low[v], disc[u])
            elif parent_edge != -1:
                t, h = g.edges[parent_edge]
                p = t if disc[t] < disc[v] else h
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    comp = []
                    while True:
                        k = edge_stack.pop()
                        comp.append(k)
                        if k == parent_edge:
                            break
                    components.append(comp)
    return components


def bridge_edges(g: OrientedGraph) -> list[int]:
    """Edge indices lying on no simple cycle."""
    return sorted(
        comp[0] for comp in biconnected_components(g) if len(comp) == 1
    )


def component_is_cycle(g: OrientedGraph, component: list[int]) -> bool:
    vertices = {v for k in component for v in g.edges[k]}
    return len(component) > 1 and len(component) == len(vertices)


def cycle_vertex_walk(g: OrientedGraph, component: list[int]) -> list[int]:
    """Vertices of a cycle component in traversal order (start not repeated)."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for k in component:
        t, h = g.edges[k]
        adj.setdefault(t, []).append((h, k))
        adj.setdefault(h, []).append((t, k))
    start = min(adj)
    walk = [start]
    prev_edge = -1
    v = start
    while True:
        u, k = next((u, k) for u, k in adj[v] if k != prev_edge)
        if u == start:
            return walk
        walk.append(u)
        prev_edge = k
        v = u


def _find_cycle_in(adj, start: int) -> list[int]:
    """Some vertex cycle reachable from start; requires one to exist.

    Emulates recursive DFS so that the back-edge test really sees an
    ancestor on the current path, not merely a discovered vertex.
    """
    parent_v = {start: -1}
    on_path = {start}
    done = set()
    stack = [(start, -1, iter(adj[start]))]
    while stack:
        v, pe, it = stack[-1]
        advanced = False
        for u, k in it:
            if k == pe:
                continue
            if u in on_path:
                path = [v]
                x = v
                while x != u:
                    x = parent_v[x]
                    path.append(x)
                return path[::-1]
            if u not in done:
                parent_v[u] = v
                on_path.add(u)
                stack.append((u, k, iter(adj[u])))
                advanced = True
                break
        if not advanced:
            on_path.discard(v)
            done.add(v)
            stack.pop()
    raise AssertionError("component contains no cycle")


def shared_path_cycles(
    g: OrientedGraph, component: list[int]
) -> tuple[list[int], list[int], list[int]]:
    """Two vertex cycles through a shared nontrivial path, plus that path.

    The component must be biconnected with more edges than vertices.  The
    construction finds a cycle and an ear attached to it at two distinct
    vertices; the ear is the shared path.  Returns (cycle1, cycle2, path):
    the cycles are closed vertex walks (start not repeated) that begin by
    traversing the path in the same direction, so their edge forms agree
    along it and the walks split at its final vertex.
    """
    adj: dict[int, list[tuple[int, int]]] = {}
    for k in component:
        t, h = g.edges[k]
        adj.setdefault(t, []).append((h, k))
        adj.setdefault(h, []).append((t, k))
    comp_edges = set(component)
    cycle = _find_cycle_in(adj, min(adj))
    on_cycle = set(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    length = len(cycle)
    cyc_edges = set()
    for i, v in enumerate(cycle):
        u = cycle[(i + 1) % length]
        for x, k in adj[v]:
            if x == u:
                cyc_edges.add(k)

    ear: list[int] | None = None
    for k in sorted(comp_edges - cyc_edges):
        t, h = g.edges[k]
        if t in on_cycle and h in on_cycle:
            ear = [t, h]  # chord
            break
    if ear is None:
        # Grow an ear from a cycle vertex through the outside and back.
        a = x0 = None
        for v in cycle:
            for u, _ in adj[v]:
                if u not in on_cycle:
                    a, x0 = v, u
                    break
            if a is not None:
                break
        assert a is not None and x0 is not None
        parent = {x0: a}
        queue = deque([x0])
        b = None
        while queue:
            v = queue.popleft()
            if v in on_cycle:
                b = v
                break
            for u, _ in adj[v]:
                if u == a or u in parent:
                    continue
                parent[u] = v
                queue.append(u)
        assert b is not None
        path = [b]
        x = b
        while x != a:
            x = parent[x]
            path.append(x)
        ear = path[::-1]

    a, b = ear[0], ear[-1]
    i, j = pos[a], pos[b]
    forward = [cycle[(i + s) % length] for s in range(((j - i) % length) + 1)]
    backward = [cycle[(i - s) % length] for s in range(((i - j) % length) + 1)]
    # The three internally disjoint a-b paths of the theta; any one can be
    # the shared path.  Take the shortest, so a chord yields a single-edge
    # shared path.
    paths = sorted([ear, forward, backward], key=len)
    shared = paths[0][::-1]  # traversed into the split vertex a
    cycle1 = shared[:-1] + paths[1][:-1]
    cycle2 = shared[:-1] + paths[2][:-1]
    return cycle1, cycle2, shared
