"""Exhaustive small-order search for optimal minimally k-(edge-)connected graphs."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from . import _accel
from .bounds import kappa_bar_upper, limit_bound
from .connectivity import (
    all_pairs_report,
    global_connectivity,
    is_degree_partitioned,
    is_minimally_k_connected,
)
from .graph import Graph, GraphError, decode_graph6, encode_graph6, from_edge_list

log = logging.getLogger(__name__)

NATIVE_LIMIT = 7
BRUTE_CANON_LIMIT = 8
MAX_REFINED_PERMS = 2_000_000


@lru_cache(maxsize=None)
def _all_perms(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)


def _adj_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    return a


def _graph_from_code(n: int, code: int) -> Graph:
    nbits = n * (n - 1) // 2
    edges = []
    b = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if (code >> b) & 1:
                edges.append((i, j))
            b -= 1
    return from_edge_list(n, edges)


def _refined_classes(g: Graph) -> list[list[int]]:
    """Colour refinement starting from degrees; classes in invariant order."""
    colour = list(g.degrees)
    for _ in range(g.n):
        sig = [(colour[v], tuple(sorted(colour[u] for u in g.adjacency[v]))) for v in range(g.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(colour[v], []).append(v)
    return [classes[c] for c in sorted(classes)]


def _refined_perms(g: Graph) -> np.ndarray:
    classes = _refined_classes(g)
    total = 1
    for c in classes:
        for i in range(2, len(c) + 1):
            total *= i
    if total > MAX_REFINED_PERMS:
        raise GraphError(f"refined canonical form needs {total} orderings; too many")
    rows = [
        [v for block in choice for v in block]
        for choice in product(*(list(permutations(c)) for c in classes))
    ]
    return np.array(rows, dtype=np.int64).reshape(-1, g.n)


def canonical_code(g: Graph, method: str = "auto") -> int:
    """Isomorphism-invariant code: minimum graph6 bit string over vertex orderings.

    ``brute`` scans all n! orderings (reference); ``refined`` only those
    compatible with a colour-refinement partition; ``auto`` picks brute for
    n <= 8.
    """
    if g.n <= 1:
        return 0
    if method == "auto":
        method = "brute" if g.n <= BRUTE_CANON_LIMIT else "refined"
    if method == "brute":
        if g.n > BRUTE_CANON_LIMIT + 1:
            raise GraphError(f"brute-force canonical form limited to n <= {BRUTE_CANON_LIMIT + 1}")
        perms = _all_perms(g.n)
    elif method == "refined":
        perms = _refined_perms(g)
    else:
        raise ValueError(f"unknown canonicalisation method {method!r}")
    return _accel.canonical_code(_adj_matrix(g), perms)[0]


def canonical_form(g: Graph, method: str = "auto") -> Graph:
    return _graph_from_code(g.n, canonical_code(g, method))


def canonical_graph6(g: Graph, method: str = "auto") -> str:
    return encode_graph6(canonical_form(g, method))


@lru_cache(maxsize=None)
def _all_classes(n: int) -> tuple[tuple[int, Graph], ...]:
    """(code, canonical graph) for every isomorphism class on n vertices."""
    if n == 1:
        return ((0, from_edge_list(1, [])),)
    seen: dict[int, Graph] = {}
    for _, h in _all_classes(n - 1):
        base = h.edges()
        for mask in range(1 << (n - 1)):
            edges = base + [(i, n - 1) for i in range(n - 1) if (mask >> i) & 1]
            code = canonical_code(from_edge_list(n, edges), "brute")
            if code not in seen:
                seen[code] = _graph_from_code(n, code)
    return tuple(sorted(seen.items()))


def enumerate_graphs(n: int) -> list[Graph]:
    """One canonical representative per isomorphism class (connected or not)."""
    if not 1 <= n <= NATIVE_LIMIT:
        raise GraphError(f"native enumeration supports 1 <= n <= {NATIVE_LIMIT}; ingest graph6 instead")
    return [g for _, g in _all_classes(n)]


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    for g in enumerate_graphs(n):
        if g.is_connected():
            yield g


def ingest_graph6(path: str | Path, skip_errors: bool = False) -> Iterator[Graph]:
    """Decode a graph6 file line by line (no dedup)."""
    with open(path, encoding="ascii", errors="replace") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                yield decode_graph6(line)
            except GraphError as exc:
                if skip_errors:
                    log.warning("%s:%d: %s", path, lineno, exc)
                    continue
                raise GraphError(f"{path}:{lineno}: {exc}") from None


@dataclass
class SearchReport:
    n: int
    k: int
    mode: str
    count_candidates: int = 0
    count_minimal: int = 0
    best_value: Fraction | None = None
    optima: list[str] = field(default_factory=list)
    all_optima_degree_partitioned: bool | None = None
    bound_satisfied: bool | None = None
    below_limit: bool | None = None

    def to_dict(self) -> dict:
        best = self.best_value
        return {
            "n": self.n,
            "k": self.k,
            "mode": self.mode,
            "count_candidates": self.count_candidates,
            "count_minimal": self.count_minimal,
            "best_value": None if best is None else {"num": best.numerator, "den": best.denominator},
            "optima": self.optima,
            "all_optima_degree_partitioned": self.all_optima_degree_partitioned,
            "bound_satisfied": self.bound_satisfied,
            "below_limit": self.below_limit,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"


def _candidates(n: int, source: str | Path) -> Iterable[Graph]:
    if source == "native":
        return enumerate_connected_graphs(n)
    return (g for g in ingest_graph6(source) if g.n == n)


def find_optimal(
    n: int, k: int, mode: str = "vertex", source: str | Path = "native", workers: int = 1
) -> SearchReport:
    """Maximum average (edge-)connectivity over minimally k-(edge-)connected
    graphs of order n, with every graph attaining it."""
    if n < k + 1:
        raise ValueError("need n >= k + 1")
    rep = SearchReport(n, k, mode)
    best: Fraction | None = None
    optima: dict[int, Graph] = {}
    for g in _candidates(n, source):
        rep.count_candidates += 1
        if g.min_degree() < k or global_connectivity(g, mode) != k:
            continue
        if not is_minimally_k_connected(g, k, mode):
            continue
        rep.count_minimal += 1
        value = all_pairs_report(g, mode, workers).average
        if best is None or value > best:
            best, optima = value, {}
        if value == best:
            optima.setdefault(canonical_code(g), g)
    if best is None:
        return rep
    rep.best_value = best
    canon = sorted(encode_graph6(canonical_form(g)) for g in optima.values())
    rep.optima = canon
    rep.all_optima_degree_partitioned = all(is_degree_partitioned(g, k) for g in optima.values())
    rep.below_limit = best < limit_bound(k)
    if k >= 2 and n >= 2 * k + 1 and rep.all_optima_degree_partitioned:
        rep.bound_satisfied = best <= kappa_bar_upper(k, n)
    return rep


@dataclass
class Evidence:
    k: int
    mode: str
    reports: list[SearchReport]
    verdict: str
    counterexample: str | None = None

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "mode": self.mode,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
            "reports": [r.to_dict() for r in self.reports],
        }


def conjecture_evidence(
    k: int, n_range: Iterable[int], mode: str = "vertex", source: str | Path = "native"
) -> Evidence:
    """Run ``find_optimal`` for each order; "counterexample" if some optimum
    is not degree-partitioned."""
    reports = []
    bad = None
    for n in n_range:
        rep = find_optimal(n, k, mode, source)
        reports.append(rep)
        if bad is None and rep.optima:
            for g6 in rep.optima:
                if not is_degree_partitioned(decode_graph6(g6), k):
                    bad = g6
                    break
    return Evidence(k, mode, reports, "counterexample" if bad else "consistent", bad)
