"""Minimum and minimal vertex separators, plus the structural classifier for
minimal separators of G_{k,p}."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import combinations

from . import _accel
from .constructions import ConstructionSpec, build_gkp
from .flow import in_node, out_node, vertex_network
from .graph import Graph, GraphError

NEIGHBOURHOOD = "neighbourhood-of-endpoint"
TWO_RUN = "two-run"
OTHER = "other"


class VerificationFailure(AssertionError):
    """A computed object contradicts a structural claim being checked."""


@dataclass(frozen=True)
class SeparatorCertificate:
    pair: tuple[int, int]
    separator: tuple[int, ...]
    sides: tuple[tuple[int, ...], tuple[int, ...]]
    minimal: bool
    classification: str | None = None
    runs: dict | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.separator)

    def to_dict(self, g: Graph | None = None) -> dict:
        name = (lambda v: g.label_of(v)) if g is not None else (lambda v: v)
        return {
            "pair": [name(x) for x in self.pair],
            "separator": [name(x) for x in self.separator],
            "sides": [[name(x) for x in side] for side in self.sides],
            "minimal": self.minimal,
            "classification": self.classification,
            "runs": self.runs,
        }


def _side(g: Graph, start: int, removed: set[int]) -> tuple[int, ...]:
    for comp in g.components(removed):
        if start in comp:
            return tuple(comp)
    raise GraphError(f"vertex {start} removed")


def separates(g: Graph, s, u: int, v: int) -> bool:
    removed = set(s)
    if u in removed or v in removed:
        return False
    return v not in _side(g, u, removed)


def is_minimal_separator(g: Graph, s, u: int, v: int) -> bool:
    """Separator test plus "every vertex of S sees both the u- and v-side"."""
    removed = set(s)
    if not separates(g, removed, u, v):
        return False
    cu, cv = set(_side(g, u, removed)), set(_side(g, v, removed))
    return all(
        any(y in cu for y in g.adjacency[x]) and any(y in cv for y in g.adjacency[x])
        for x in removed
    )


def make_certificate(g: Graph, s, u: int, v: int) -> SeparatorCertificate:
    removed = set(s)
    if not separates(g, removed, u, v):
        raise VerificationFailure(f"{sorted(removed)} does not separate {u} and {v}")
    return SeparatorCertificate(
        pair=(u, v),
        separator=tuple(sorted(removed)),
        sides=(_side(g, u, removed), _side(g, v, removed)),
        minimal=is_minimal_separator(g, removed, u, v),
    )


def minimum_separator(g: Graph, u: int, v: int) -> SeparatorCertificate:
    """A minimum u-v vertex separator read off a minimum cut of the split network."""
    if u == v or g.has_edge(u, v):
        raise GraphError(f"{u} and {v} are adjacent or equal: no separator exists")
    net = vertex_network(g)
    val, flow = net.max_flow(out_node(u), in_node(v), g.n)
    reach = net.reachable(flow, out_node(u))
    s = [x for x in range(g.n) if x not in (u, v) and reach[in_node(x)] and not reach[out_node(x)]]
    if len(s) != val:
        raise VerificationFailure("cut size disagrees with the flow value")
    return make_certificate(g, s, u, v)


def enumerate_minimal_separators(
    g: Graph, u: int, v: int, max_n: int = 16
) -> list[SeparatorCertificate]:
    """Every inclusion-minimal u-v separator, by scanning all subsets of V - {u, v}.

    Output is ordered by size, then lexicographically.
    """
    if g.n > max_n:
        raise GraphError(f"brute-force enumeration limited to n <= {max_n} (n = {g.n})")
    if u == v or g.has_edge(u, v):
        raise GraphError(f"{u} and {v} are adjacent or equal")
    masks = _accel.scan_minimal_separators(g.nbr_masks, g.n, u, v)
    sets = sorted(
        (tuple(x for x in range(g.n) if (m >> x) & 1) for m in masks),
        key=lambda t: (len(t), t),
    )
    out = []
    for s in sets:
        cert = make_certificate(g, s, u, v)
        if not cert.minimal:
            raise VerificationFailure(f"scanned separator {s} failed the minimality re-check")
        out.append(cert)
    return out


def minimal_separators_naive(g: Graph, u: int, v: int) -> list[tuple[int, ...]]:
    """Minimal separators by subset re-checks (reference for small graphs)."""
    cand = [x for x in range(g.n) if x not in (u, v)]
    found: list[tuple[int, ...]] = []
    for size in range(len(cand) + 1):
        for s in combinations(cand, size):
            if separates(g, s, u, v) and not any(
                separates(g, s[:i] + s[i + 1:], u, v) for i in range(size)
            ):
                found.append(s)
    return found


# G_{k,p} classification -----------------------------------------------------


def _cyclic_run(indices: set[int], p: int) -> tuple[int, int] | None:
    """(start, length) if ``indices`` is one cyclic run of Z_p, else None."""
    if not indices or len(indices) == p:
        return None
    starts = [i for i in indices if (i - 1) % p not in indices]
    if len(starts) != 1:
        return None
    return starts[0], len(indices)


def classify(
    cert: SeparatorCertificate, g: Graph, spec: ConstructionSpec, strict: bool = False
) -> SeparatorCertificate:
    """Attach the structural shape of a separator of G_{k,p}.

    ``neighbourhood-of-endpoint`` when S = N(u) or N(v); ``two-run`` when
    |S| = 2k-2 and S splits into a left and right block of k-1 vertices each,
    both cut out by the cyclic W-run of the u-side; otherwise ``other``.
    Run descriptors are (start, length) pairs of cyclic index intervals.
    With ``strict`` an ``other`` outcome raises VerificationFailure.
    """
    if g.labels is None:
        raise GraphError("classification needs a labelled G_{k,p}")
    if spec.family != "gkp":
        raise GraphError("classification applies to G_{k,p} only")
    k, p = spec.k, spec.p
    s = set(cert.separator)
    u, v = cert.pair
    if s == set(g.adjacency[u]) or s == set(g.adjacency[v]):
        return replace(cert, classification=NEIGHBOURHOOD, runs=None)
    runs = _two_run_shape(g, s, set(cert.sides[0]), k, p) if len(s) == 2 * k - 2 else None
    if runs is None:
        if strict:
            raise VerificationFailure(f"separator {cert.separator} of {cert.pair} fits no known shape")
        return replace(cert, classification=OTHER, runs=None)
    return replace(cert, classification=TWO_RUN, runs=runs)


def _two_run_shape(g: Graph, s: set[int], side: set[int], k: int, p: int) -> dict | None:
    def idx(v: int) -> int:
        return g.labels[v].index

    def cls(v: int) -> str:
        return g.labels[v].cls

    c_w = {idx(v) for v in side if cls(v) == "W"}
    c_x = {idx(v) for v in side if cls(v) == "X"}
    run = _cyclic_run(c_w, p)
    if run is None or not c_x:
        return None
    a, size = run
    t = size - 1
    if t + k > p:
        return None
    x_ids = {idx(v) for v in s if cls(v) == "X"}
    red = []
    for o in range(t + k):
        i = (a + o) % p
        if i in c_x:
            red.append(o)
        elif i not in x_ids:
            return None  # a white neighbour of the red W-run
    if not red:
        return None
    lo, hi = red[0], red[-1]
    if lo > k - 1 or hi < t:
        return None
    if c_x != {(a + o) % p for o in range(lo, hi + 1)}:
        return None
    l_x = [(a + o) % p for o in range(0, lo)]
    r_x = [(a + o) % p for o in range(hi + 1, t + k)]
    l_w = [(a - j) % p for j in range(k - 1 - lo, 0, -1)]
    r_w = [(a + o) % p for o in range(t + 1, hi + 1)]
    w_ids = {idx(v) for v in s if cls(v) == "W"}
    if w_ids != set(l_w) | set(r_w) or x_ids != set(l_x) | set(r_x):
        return None
    if len(set(l_w) | set(r_w)) + len(set(l_x) | set(r_x)) != 2 * k - 2:
        return None

    def desc(block: list[int]) -> list[int] | None:
        return [block[0], len(block)] if block else None

    def touching(left: list[int], right: list[int]) -> bool:
        return bool(left and right) and (right[-1] + 1) % p == left[0]

    return {
        "C_W": [a, size],
        "C_X": [(a + lo) % p, hi - lo + 1],
        "L_W": desc(l_w),
        "R_W": desc(r_w),
        "L_X": desc(l_x),
        "R_X": desc(r_x),
        "W_runs_touch": touching(l_w, r_w),
        "X_runs_touch": touching(l_x, r_x),
    }


@dataclass
class PairSeparatorCheck:
    pair: tuple[str, str]
    count: int
    sizes: list[int]
    kinds: dict[str, int]
    touching: int
    passed: bool


def verify_gkp_separators(k: int, p: int, max_n: int = 16) -> tuple[list[PairSeparatorCheck], bool]:
    """Every minimal separator of every nonadjacent pair of G_{k,p}: sizes in
    {k, 2k-2} and never classified ``other``."""
    spec = ConstructionSpec("gkp", k, p)
    g = build_gkp(k, p)
    rows = []
    ok_all = True
    for u, v in combinations(range(g.n), 2):
        if g.has_edge(u, v):
            continue
        certs = [classify(c, g, spec) for c in enumerate_minimal_separators(g, u, v, max_n)]
        kinds: dict[str, int] = {}
        for c in certs:
            kinds[c.classification] = kinds.get(c.classification, 0) + 1
        sizes = sorted({c.size for c in certs})
        ok = bool(certs) and set(sizes) <= {k, 2 * k - 2} and OTHER not in kinds
        ok_all &= ok
        rows.append(
            PairSeparatorCheck(
                pair=(g.label_of(u), g.label_of(v)),
                count=len(certs),
                sizes=sizes,
                kinds=kinds,
                touching=sum(1 for c in certs if c.runs and c.runs["W_runs_touch"]),
                passed=ok,
            )
        )
    return rows, ok_all


def certificates_json(certs: list[SeparatorCertificate], g: Graph) -> str:
    return json.dumps([c.to_dict(g) for c in certs], indent=1) + "\n"
