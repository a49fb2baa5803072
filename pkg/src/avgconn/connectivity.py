"""Exact local/global vertex and edge connectivity and their averages."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Literal

from .flow import edge_network, in_node, out_node, vertex_network
from .graph import Graph, GraphError, delete_edge

Mode = Literal["vertex", "edge"]
MODES = ("vertex", "edge")


def _check_pair(g: Graph, u: int, v: int) -> None:
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError(f"invalid vertex pair ({u}, {v})")
    if u == v:
        raise GraphError("connectivity needs two distinct vertices")


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be 'vertex' or 'edge', got {mode!r}")


def _kappa(g: Graph, u: int, v: int, limit: int) -> int:
    net = vertex_network(g)
    s, t = out_node(u), in_node(v)
    if g.has_edge(u, v):
        # the edge itself plus internally disjoint paths of G - uv
        skip = net.find_arc(s, t)
        return 1 + net.max_flow(s, t, max(limit - 1, 0), skip)[0]
    return net.max_flow(s, t, limit)[0]


def _lambda(g: Graph, u: int, v: int, limit: int) -> int:
    return edge_network(g).max_flow(u, v, limit)[0]


def local_vertex_connectivity(g: Graph, u: int, v: int) -> int:
    """Maximum number of internally disjoint u-v paths."""
    _check_pair(g, u, v)
    return _kappa(g, u, v, min(g.degree(u), g.degree(v)))


def local_edge_connectivity(g: Graph, u: int, v: int) -> int:
    """Maximum number of edge-disjoint u-v paths."""
    _check_pair(g, u, v)
    return _lambda(g, u, v, min(g.degree(u), g.degree(v)))


def local_connectivity(g: Graph, u: int, v: int, mode: Mode = "vertex") -> int:
    _check_mode(mode)
    if mode == "vertex":
        return local_vertex_connectivity(g, u, v)
    return local_edge_connectivity(g, u, v)


def global_connectivity(g: Graph, mode: Mode = "vertex") -> int:
    """kappa(G) or lambda(G).

    Vertex mode runs Even's scheme: with the vertices ordered by degree, only
    nonadjacent pairs (v_i, v_j), i < j, i <= current bound, need a flow.
    """
    _check_mode(mode)
    if g.n < 2:
        raise GraphError("connectivity of the trivial graph is undefined")
    if not g.is_connected():
        return 0
    best = g.min_degree()
    if mode == "edge":
        for v in range(1, g.n):
            best = min(best, _lambda(g, 0, v, best))
        return best
    order = sorted(range(g.n), key=lambda x: (g.degree(x), x))
    for i, a in enumerate(order):
        if i > best:
            break
        for b in order[i + 1:]:
            if not g.has_edge(a, b):
                best = min(best, _kappa(g, a, b, best))
    return best


@dataclass
class PairConnectivityReport:
    """Per-pair connectivity table with exact total and average."""

    mode: str
    n: int
    values: dict[tuple[int, int], int] = field(repr=False)

    @property
    def total(self) -> int:
        return sum(self.values.values())

    @property
    def average(self) -> Fraction:
        return Fraction(self.total, comb(self.n, 2))

    @property
    def minimum(self) -> int:
        return min(self.values.values())

    def value(self, u: int, v: int) -> int:
        return self.values[(u, v) if u < v else (v, u)]

    def to_dict(self) -> dict:
        avg = self.average
        return {
            "mode": self.mode,
            "n": self.n,
            "pairs": [[u, v, val] for (u, v), val in sorted(self.values.items())],
            "total": {"num": self.total, "den": 1},
            "average": {"num": avg.numerator, "den": avg.denominator},
            "global": self.minimum,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v", "value"])
        for (u, v), val in sorted(self.values.items()):
            w.writerow([u, v, val])
        return buf.getvalue()

    @classmethod
    def from_dict(cls, data: dict) -> "PairConnectivityReport":
        values = {(int(u), int(v)): int(val) for u, v, val in data["pairs"]}
        rep = cls(data["mode"], int(data["n"]), values)
        avg = Fraction(data["average"]["num"], data["average"]["den"])
        if avg != rep.average:
            raise ValueError("stored average disagrees with the pair table")
        return rep


def _pair_values(g: Graph, mode: str, pairs: list[tuple[int, int]]) -> list[int]:
    fn = _kappa if mode == "vertex" else _lambda
    return [fn(g, u, v, min(g.degree(u), g.degree(v))) for u, v in pairs]


def all_pairs_report(
    g: Graph,
    mode: Mode = "vertex",
    workers: int = 1,
    shortcut: bool = False,
    pairs: Iterable[tuple[int, int]] | None = None,
) -> PairConnectivityReport:
    """Connectivity of every unordered pair (or of ``pairs`` only).

    With ``shortcut`` the global connectivity c is computed first and every
    pair with min(deg u, deg v) == c is assigned c without a flow, since
    c <= kappa(u, v) <= min(deg u, deg v).
    """
    _check_mode(mode)
    if g.n < 2:
        raise GraphError("average connectivity of the trivial graph is undefined")
    todo = sorted((min(p), max(p)) for p in pairs) if pairs is not None else list(
        combinations(range(g.n), 2)
    )
    values: dict[tuple[int, int], int] = {}
    if shortcut:
        c = global_connectivity(g, mode)
        rest = []
        for u, v in todo:
            if min(g.degree(u), g.degree(v)) == c:
                values[(u, v)] = c
            else:
                rest.append((u, v))
        todo = rest
    # warm the cached network before fanning out
    vertex_network(g) if mode == "vertex" else edge_network(g)
    if workers > 1 and len(todo) > workers:
        chunks = [todo[i::workers] for i in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda ch: _pair_values(g, mode, ch), chunks))
        for ch, vals in zip(chunks, results):
            values.update(zip(ch, vals))
    else:
        values.update(zip(todo, _pair_values(g, mode, todo)))
    return PairConnectivityReport(mode, g.n, dict(sorted(values.items())))


def average_connectivity(g: Graph, mode: Mode = "vertex", workers: int = 1) -> Fraction:
    return all_pairs_report(g, mode, workers).average


def total_connectivity(g: Graph, mode: Mode = "vertex") -> int:
    return all_pairs_report(g, mode).total


@dataclass(frozen=True)
class MinimalityResult:
    """Outcome of a minimal k-(edge-)connectivity test.

    On failure either ``global_value != k`` or ``edge`` names an edge whose
    deletion keeps connectivity >= k.
    """

    minimal: bool
    global_value: int
    edge: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.minimal


def is_minimally_k_connected(
    g: Graph, k: int, mode: Mode = "vertex", method: str = "safe"
) -> MinimalityResult:
    """True iff connectivity is k and every edge deletion drops it below k.

    ``method="safe"`` recomputes the global connectivity of G - e for every
    edge; ``method="degree"`` skips edges with an endpoint of degree k (their
    deletion drops the minimum degree to k-1) and recomputes the rest;
    ``method="endpoint"`` only checks the local connectivity of the deleted
    edge's endpoints in G - e.
    """
    _check_mode(mode)
    if k < 1:
        raise ValueError("k must be >= 1")
    if method not in ("safe", "degree", "endpoint"):
        raise ValueError(f"unknown method {method!r}")
    c = global_connectivity(g, mode)
    if c != k:
        return MinimalityResult(False, c)
    for u, v in g.edges():
        if method == "degree" and min(g.degree(u), g.degree(v)) == k:
            continue  # G - uv has a vertex of degree k-1
        h = delete_edge(g, u, v)
        if method != "endpoint":
            still = global_connectivity(h, mode) >= k
        else:
            still = local_connectivity(h, u, v, mode) >= k
        if still:
            return MinimalityResult(False, c, (u, v))
    return MinimalityResult(True, c)


def is_degree_partitioned(g: Graph, k: int) -> bool:
    """Bipartite with parts exactly {deg = k} and {deg > k}, both nonempty."""
    if g.n and g.min_degree() < k:
        raise GraphError(f"graph has a vertex of degree < {k}")
    low = [v for v in range(g.n) if g.degree(v) == k]
    if not low or len(low) == g.n:
        return False
    for u, v in g.edges():
        if (g.degree(u) == k) == (g.degree(v) == k):
            return False
    return True
