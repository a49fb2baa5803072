"""Independent brute-force oracles. Nothing here calls the flow code."""
from __future__ import annotations

from itertools import combinations


def _reaches(n, adj, u, v, removed_vertices=frozenset(), removed_edges=frozenset()):
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in seen or y in removed_vertices:
                continue
            if frozenset((x, y)) in removed_edges:
                continue
            if y == v:
                return True
            seen.add(y)
            stack.append(y)
    return False


def min_vertex_separator_size(g, u, v):
    """Smallest S in V - {u, v} whose deletion separates u from v (u, v nonadjacent)."""
    adj = [set(a) for a in g.adjacency]
    assert v not in adj[u]
    rest = [x for x in range(g.n) if x not in (u, v)]
    for size in range(len(rest) + 1):
        for s in combinations(rest, size):
            if not _reaches(g.n, adj, u, v, removed_vertices=frozenset(s)):
                return size
    raise AssertionError("unreachable")


def min_edge_cut_size(g, u, v):
    adj = [set(a) for a in g.adjacency]
    edges = [frozenset(e) for e in g.edges()]
    for size in range(len(edges) + 1):
        for cut in combinations(edges, size):
            if not _reaches(g.n, adj, u, v, removed_edges=frozenset(cut)):
                return size
    raise AssertionError("unreachable")


def brute_local_vertex_connectivity(g, u, v):
    """Menger for nonadjacent pairs; 1 + value in G - uv for adjacent ones."""
    if v in g.adjacency[u]:
        from avgconn.graph import delete_edge

        return 1 + min_vertex_separator_size(delete_edge(g, u, v), u, v)
    return min_vertex_separator_size(g, u, v)


def brute_global_vertex_connectivity(g):
    """Smallest vertex set whose removal disconnects G or leaves one vertex."""
    for size in range(g.n):
        for s in combinations(range(g.n), size):
            left = [x for x in range(g.n) if x not in s]
            if len(left) <= 1:
                return size
            adj = [set(a) for a in g.adjacency]
            if any(not _reaches(g.n, adj, left[0], y, frozenset(s)) for y in left[1:]):
                return size
    return g.n - 1


def compositions(total, parts):
    """All ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest
