"""Immutable simple undirected graphs on vertices 0..n-1.

Construction-produced graphs carry a sidecar label table (class tag plus
index, e.g. ``w_3`` or ``x2_0``); algorithms never look at labels.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "Label",
    "from_edge_list",
    "bipartition",
    "induced_subgraph",
    "delete_edge",
    "delete_vertices",
    "add_edge",
    "encode_graph6",
    "decode_graph6",
    "read_edge_list",
    "write_edge_list",
    "to_dot",
]


class GraphError(ValueError):
    """Raised for malformed graphs, invalid ids or bad interchange data."""


class Label(NamedTuple):
    cls: str
    index: int

    def __str__(self) -> str:
        return f"{self.cls.lower()}_{self.index}"

    @classmethod
    def parse(cls, text: str) -> "Label":
        tag, _, idx = text.rpartition("_")
        if not tag:
            raise GraphError(f"bad label {text!r}")
        return cls(tag.upper(), int(idx))


@dataclass(frozen=True)
class Graph:
    """Simple graph with sorted adjacency tuples.

    Instances are immutable; every mutation helper returns a new graph.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[Label, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adjacency) != self.n:
            raise GraphError("adjacency length must equal n")
        for v, nbrs in enumerate(self.adjacency):
            prev = -1
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise GraphError(f"neighbour {u} of {v} out of range")
                if u == v:
                    raise GraphError(f"self-loop at {v}")
                if u <= prev:
                    raise GraphError(f"adjacency of {v} not strictly increasing")
                prev = u
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if v not in self._nbr_sets[u]:
                    raise GraphError(f"asymmetric adjacency {v}-{u}")
        if self.labels is not None:
            if len(self.labels) != self.n or len(set(self.labels)) != self.n:
                raise GraphError("labels must cover every vertex exactly once")

    @cached_property
    def _nbr_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    @cached_property
    def label_index(self) -> dict[Label, int]:
        if self.labels is None:
            return {}
        return {lab: i for i, lab in enumerate(self.labels)}

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def min_degree(self) -> int:
        return min(self.degrees) if self.n else 0

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def vertex(self, label: Label | str) -> int:
        """Vertex id of a construction label."""
        if isinstance(label, str):
            label = Label.parse(label)
        try:
            return self.label_index[label]
        except KeyError:
            raise GraphError(f"unknown label {label}") from None

    def label_of(self, v: int) -> str:
        return str(self.labels[v]) if self.labels is not None else str(v)

    def neighbourhood(self, vertices: Iterable[int]) -> frozenset[int]:
        """Open neighbourhood N(U): vertices outside U adjacent to U."""
        inside = set(vertices)
        out: set[int] = set()
        for v in inside:
            out.update(self.adjacency[v])
        return frozenset(out - inside)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(offsets, targets) int64 arrays of the adjacency."""
        offsets = np.zeros(self.n + 1, dtype=np.int64)
        offsets[1:] = np.cumsum([len(a) for a in self.adjacency])
        targets = np.fromiter(
            (u for a in self.adjacency for u in a), dtype=np.int64, count=int(offsets[-1])
        )
        return offsets, targets

    @cached_property
    def nbr_masks(self) -> np.ndarray:
        """Neighbourhood bitmasks, one int64 per vertex (n <= 63 only)."""
        if self.n > 63:
            raise GraphError("bitmask representation needs n <= 63")
        masks = np.zeros(self.n, dtype=np.int64)
        for v, nbrs in enumerate(self.adjacency):
            acc = 0
            for u in nbrs:
                acc |= 1 << u
            masks[v] = acc
        return masks

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """Connected components of G - removed, each sorted, ordered by min vertex."""
        gone = set(removed)
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s] or s in gone:
                continue
            seen[s] = True
            stack, comp = [s], [s]
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if not seen[y] and y not in gone:
                        seen[y] = True
                        stack.append(y)
                        comp.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _build(n: int, adj_sets: Sequence[Iterable[int]], labels=None) -> Graph:
    return Graph(n, tuple(tuple(sorted(a)) for a in adj_sets), labels)


def from_edge_list(
    n: int, edges: Iterable[tuple[int, int]], labels: Sequence[Label] | None = None
) -> Graph:
    """Graph with exactly the given edges; loops, duplicates and bad ids are rejected."""
    if n < 0:
        raise GraphError("n must be nonnegative")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an id outside [0, {n})")
        if u == v:
            raise GraphError(f"self-loop at {u}")
        if v in adj[u]:
            raise GraphError(f"duplicate edge ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
    return _build(n, adj, tuple(labels) if labels is not None else None)


def _check_vertices(g: Graph, vs: Iterable[int]) -> list[int]:
    out = sorted(set(int(v) for v in vs))
    for v in out:
        if not 0 <= v < g.n:
            raise GraphError(f"invalid vertex id {v}")
    return out


def bipartition(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two independent sets covering V, or None if an odd cycle exists.

    Each component is 2-coloured starting from its smallest vertex, which goes
    to the first part.
    """
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adjacency[x]:
                if colour[y] < 0:
                    colour[y] = 1 - colour[x]
                    stack.append(y)
                elif colour[y] == colour[x]:
                    return None
    a = tuple(v for v in range(g.n) if colour[v] == 0)
    b = tuple(v for v in range(g.n) if colour[v] == 1)
    return a, b


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``s`` plus the new->old id table."""
    keep = _check_vertices(g, s)
    new_id = {v: i for i, v in enumerate(keep)}
    adj = [[new_id[u] for u in g.adjacency[v] if u in new_id] for v in keep]
    labels = tuple(g.labels[v] for v in keep) if g.labels is not None else None
    return _build(len(keep), adj, labels), keep


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise GraphError(f"no edge ({u}, {v})")
    adj = [list(a) for a in g.adjacency]
    adj[u].remove(v)
    adj[v].remove(u)
    return Graph(g.n, tuple(tuple(a) for a in adj), g.labels)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if not (0 <= u < g.n and 0 <= v < g.n) or u == v or g.has_edge(u, v):
        raise GraphError(f"cannot add edge ({u}, {v})")
    adj = [set(a) for a in g.adjacency]
    adj[u].add(v)
    adj[v].add(u)
    return _build(g.n, adj, g.labels)


def delete_vertices(g: Graph, s: Iterable[int]) -> Graph:
    """G - S with the surviving vertices renumbered in increasing order."""
    gone = set(_check_vertices(g, s))
    return induced_subgraph(g, [v for v in range(g.n) if v not in gone])[0]


# graph6 ---------------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> sh) & 63) + 63) for sh in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> sh) & 63) + 63) for sh in (30, 24, 18, 12, 6, 0))
    raise GraphError("graph too large for graph6")


def encode_graph6(g: Graph) -> str:
    """Header-less graph6 line (no trailing newline)."""
    bits = [
        1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)
    ]
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[i:i + 6])), 2)) for i in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def decode_graph6(line: str) -> Graph:
    text = line.strip()
    if text.startswith(">>graph6<<"):
        text = text[10:]
    if not text:
        raise GraphError("empty graph6 line")
    vals = []
    for pos, ch in enumerate(text):
        c = ord(ch) - 63
        if not 0 <= c <= 63:
            raise GraphError(f"malformed graph6 character {ch!r} at offset {pos}")
        vals.append(c)
    if vals[0] != 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise GraphError("truncated graph6 size field")
        n = 0
        for c in vals[2:8]:
            n = (n << 6) | c
        body = vals[8:]
    else:
        if len(vals) < 4:
            raise GraphError("truncated graph6 size field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise GraphError(
            f"graph6 payload has {len(body)} bytes, expected {need} for n={n}"
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return from_edge_list(n, edges)


# edge list / DOT ------------------------------------------------------------

def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list must start with an 'n m' header")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = []
    for row in rows[1:]:
        if len(row) != 2:
            raise GraphError(f"bad edge line {' '.join(row)!r}")
        edges.append((int(row[0]), int(row[1])))
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    return from_edge_list(n, edges)


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{g.label_of(v)}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
