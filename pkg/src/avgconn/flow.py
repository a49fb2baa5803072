"""Residual flow networks derived from graphs.

Vertex mode splits every vertex v into ``in(v) = 2v`` and ``out(v) = 2v + 1``
joined by a unit arc; each edge uv becomes the arcs out(u)->in(v) and
out(v)->in(u) with effectively infinite capacity. Edge mode turns every edge
into a pair of unit arcs that serve as each other's residual reverse.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _accel
from .graph import Graph


def in_node(v: int) -> int:
    return 2 * v


def out_node(v: int) -> int:
    return 2 * v + 1


@dataclass(frozen=True, eq=False)
class FlowNetwork:
    offsets: np.ndarray
    to: np.ndarray
    cap: np.ndarray
    rev: np.ndarray

    @property
    def num_nodes(self) -> int:
        return self.offsets.shape[0] - 1

    def tail(self, a: int) -> int:
        return int(self.to[self.rev[a]])

    def find_arc(self, tail: int, head: int) -> int:
        """Index of the positive-capacity arc tail->head, or -1."""
        lo, hi = int(self.offsets[tail]), int(self.offsets[tail + 1])
        for a in range(lo, hi):
            if self.to[a] == head and self.cap[a] > 0:
                return a
        return -1

    def max_flow(self, s: int, t: int, limit: int, skip: int = -1) -> tuple[int, np.ndarray]:
        return _accel.max_flow(self.offsets, self.to, self.cap, self.rev, s, t, limit, skip)

    def reachable(self, flow: np.ndarray, s: int, skip: int = -1) -> np.ndarray:
        return _accel.residual_reach(self.offsets, self.to, self.cap, flow, s, skip)


def build_network(num_nodes: int, arcs: list[tuple[int, int, int, int]]) -> FlowNetwork:
    """CSR network from (tail, head, forward cap, backward cap) arc pairs.

    Arcs out of each node are ordered by head id so every search is deterministic.
    """
    m = len(arcs)
    tails = np.empty(2 * m, dtype=np.int64)
    heads = np.empty(2 * m, dtype=np.int64)
    caps = np.empty(2 * m, dtype=np.int64)
    if m:
        arr = np.asarray(arcs, dtype=np.int64)
        tails[0::2], heads[0::2], caps[0::2] = arr[:, 0], arr[:, 1], arr[:, 2]
        tails[1::2], heads[1::2], caps[1::2] = arr[:, 1], arr[:, 0], arr[:, 3]
    partner = np.arange(2 * m, dtype=np.int64) ^ 1
    order = np.lexsort((np.arange(2 * m), heads, tails))
    pos = np.empty(2 * m, dtype=np.int64)
    pos[order] = np.arange(2 * m, dtype=np.int64)
    offsets = np.zeros(num_nodes + 1, dtype=np.int64)
    np.add.at(offsets, tails + 1, 1)
    offsets = np.cumsum(offsets)
    return FlowNetwork(
        offsets=offsets,
        to=heads[order],
        cap=caps[order],
        rev=pos[partner[order]],
    )


def split_arcs(g: Graph) -> list[tuple[int, int, int, int]]:
    big = max(g.n, 1)
    arcs = [(in_node(v), out_node(v), 1, 0) for v in range(g.n)]
    for u, v in g.edges():
        arcs.append((out_node(u), in_node(v), big, 0))
        arcs.append((out_node(v), in_node(u), big, 0))
    return arcs


def vertex_network(g: Graph) -> FlowNetwork:
    # cached on the (immutable) graph instance
    net = g.__dict__.get("_vertex_network")
    if net is None:
        net = g.__dict__["_vertex_network"] = build_network(2 * g.n, split_arcs(g))
    return net


def edge_network(g: Graph) -> FlowNetwork:
    net = g.__dict__.get("_edge_network")
    if net is None:
        net = g.__dict__["_edge_network"] = build_network(
            g.n, [(u, v, 1, 1) for u, v in g.edges()]
        )
    return net
