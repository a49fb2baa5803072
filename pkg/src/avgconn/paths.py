"""Flow-certified systems of internally disjoint paths inside index windows
of Psi_{k,p}, and the three-segment long-range witness."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .constructions import ConstructionSpec
from .flow import build_network, in_node, out_node, split_arcs
from .graph import Graph, GraphError, Label, induced_subgraph
from .separators import VerificationFailure


@dataclass(frozen=True)
class Window:
    """Index interval [lo, hi] across every vertex class, indices read mod p."""

    lo: int
    hi: int
    p: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise GraphError(f"empty window [{self.lo}, {self.hi}]")
        if self.hi - self.lo + 1 > self.p:
            raise GraphError(f"window [{self.lo}, {self.hi}] overlaps itself mod {self.p}")

    def contains_index(self, i: int) -> bool:
        return (i - self.lo) % self.p <= self.hi - self.lo

    def vertices(self, g: Graph) -> list[int]:
        blocks = g.n // self.p
        return sorted(
            b * self.p + (i % self.p) for b in range(blocks) for i in range(self.lo, self.hi + 1)
        )

    def contains(self, g: Graph, v: int) -> bool:
        return self.contains_index(g.labels[v].index)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class PathSystem:
    """Vertex sequences; ``shared_source``/``shared_sink`` mark a common endpoint."""

    paths: tuple[tuple[int, ...], ...]
    shared_source: bool = False
    shared_sink: bool = False
    window: Window | None = None

    def __len__(self) -> int:
        return len(self.paths)

    def to_dict(self, g: Graph) -> dict:
        return {
            "paths": [[g.label_of(v) for v in path] for path in self.paths],
            "shared_source": self.shared_source,
            "shared_sink": self.shared_sink,
            "window": [self.window.lo, self.window.hi] if self.window else None,
        }

    def to_json(self, g: Graph) -> str:
        return json.dumps(self.to_dict(g), indent=1) + "\n"


def validate_path_system(g: Graph, system: PathSystem, window: Window | None = None) -> None:
    """Raise VerificationFailure unless the system is a valid disjoint path family.

    Checks consecutive adjacency, simplicity, the endpoint policy, that no
    vertex is used internally by two paths or internally by one and as an
    endpoint by another, and window membership.
    """
    window = window or system.window
    if not system.paths:
        raise VerificationFailure("empty path system")
    starts = [p[0] for p in system.paths]
    ends = [p[-1] for p in system.paths]
    for name, ep, shared in (("source", starts, system.shared_source), ("sink", ends, system.shared_sink)):
        if shared and len(set(ep)) != 1:
            raise VerificationFailure(f"paths do not share a common {name}")
        if not shared and len(set(ep)) != len(ep):
            raise VerificationFailure(f"{name} endpoints are not distinct")
    endpoints = set(starts) | set(ends)
    used: dict[int, int] = {}
    for k, path in enumerate(system.paths):
        if len(path) < 2:
            raise VerificationFailure(f"path {k} has fewer than two vertices")
        if len(set(path)) != len(path):
            raise VerificationFailure(f"path {k} repeats a vertex")
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                raise VerificationFailure(f"path {k}: {g.label_of(a)}-{g.label_of(b)} is not an edge")
        for x in path[1:-1]:
            if x in endpoints:
                raise VerificationFailure(f"path {k} passes through endpoint {g.label_of(x)}")
            if x in used:
                raise VerificationFailure(
                    f"paths {used[x]} and {k} share internal vertex {g.label_of(x)}"
                )
            used[x] = k
        if window is not None:
            for x in path:
                if not window.contains(g, x):
                    raise VerificationFailure(
                        f"path {k}: {g.label_of(x)} lies outside window {window}"
                    )


def _decompose(net, flow, s: int, t: int, count: int) -> list[list[int]]:
    flow = flow.copy()
    paths = []
    for _ in range(count):
        walk = [s]
        arcs: list[int] = []
        pos = {s: 0}
        x = s
        while x != t:
            for a in range(int(net.offsets[x]), int(net.offsets[x + 1])):
                if net.cap[a] > 0 and flow[a] > 0:
                    break
            else:
                raise VerificationFailure("flow decomposition got stuck")
            flow[a] -= 1
            y = int(net.to[a])
            if y in pos:
                # drop the cycle just closed
                cut = pos[y]
                for z in walk[cut + 1:]:
                    del pos[z]
                walk = walk[: cut + 1]
                arcs = arcs[:cut]
            else:
                pos[y] = len(walk)
                walk.append(y)
                arcs.append(a)
            x = y
        paths.append(walk)
    return paths


def _nodes_to_vertices(nodes: list[int], n: int) -> list[int]:
    out: list[int] = []
    for node in nodes:
        if node >= 2 * n:
            continue
        v = node // 2
        if not out or out[-1] != v:
            out.append(v)
    return out


def max_disjoint_paths(
    g: Graph,
    source: int,
    targets: Sequence[int],
    demand: int,
    window: Window | None = None,
) -> PathSystem | None:
    """``demand`` internally disjoint paths from ``source`` into ``targets``.

    With one target the paths share both endpoints; with several, each path
    ends at a distinct target. Only vertices of ``window`` may be used.
    Returns None if no such system exists.
    """
    if demand <= 0:
        raise GraphError("demand must be positive")
    targets = list(dict.fromkeys(targets))
    if source in targets:
        raise GraphError("source may not be a target")
    if len(targets) > 1 and demand > len(targets):
        raise GraphError("demand exceeds the number of distinct targets")
    keep = window.vertices(g) if window is not None else list(range(g.n))
    keep_set = set(keep)
    if source not in keep_set or not keep_set.issuperset(targets):
        raise GraphError("window must contain the source and every target")
    h, old = induced_subgraph(g, keep)
    new = {v: i for i, v in enumerate(old)}
    s = out_node(new[source])
    single = len(targets) == 1
    arcs = split_arcs(h)
    extra: list[list[int]] = []
    skip = -1
    if single:
        tgt = new[targets[0]]
        net = build_network(2 * h.n, arcs)
        t = in_node(tgt)
        if h.has_edge(new[source], tgt):
            skip = net.find_arc(s, t)
            extra.append([new[source], tgt])
            demand -= 1
    else:
        sink = 2 * h.n
        arcs += [(out_node(new[x]), sink, 1, 0) for x in targets]
        net = build_network(2 * h.n + 1, arcs)
        t = sink
    found = []
    if demand > 0:
        val, flow = net.max_flow(s, t, demand, skip)
        if val < demand:
            return None
        if skip >= 0:
            flow[skip] = 0
        found = [_nodes_to_vertices(p, h.n) for p in _decompose(net, flow, s, t, demand)]
    paths = tuple(tuple(old[v] for v in p) for p in extra + found)
    system = PathSystem(paths, shared_source=True, shared_sink=single, window=window)
    validate_path_system(g, system)
    return system


# Psi-specific segments --------------------------------------------------------


def _ids(g: Graph, p: int):
    def w(i: int) -> int:
        return g.vertex(Label("W", i % p))

    def z(i: int) -> int:
        return g.vertex(Label("Z", i % p))

    return w, z


def _require_psi(g: Graph, spec: ConstructionSpec) -> None:
    if spec.family != "psi":
        raise GraphError("path segments are defined for Psi_{k,p}")
    if g.labels is None or g.n != 4 * spec.p:
        raise GraphError("graph does not match the Psi specification")


def small_t_witness(g: Graph, spec: ConstructionSpec, t: int) -> PathSystem | None:
    """3k disjoint w_0-w_t paths inside [-k^2, t+s] (direct flow, 1 <= t < 2s)."""
    _require_psi(g, spec)
    k, s, p = spec.k, spec.s, spec.p
    if not 1 <= t < 2 * s:
        raise GraphError(f"small-t check needs 1 <= t < 2s = {2 * s}")
    w, _ = _ids(g, p)
    return max_disjoint_paths(g, w(0), [w(t)], 3 * k, Window(-k * k, t + s, p))


def find_P_collection(g: Graph, spec: ConstructionSpec, r: int) -> PathSystem | None:
    """P_j from w_0 to w_{r+j}, j = 1..3k, inside [-k^2, r+s]."""
    _require_psi(g, spec)
    k, s, p = spec.k, spec.s, spec.p
    if not 0 <= r < s:
        raise GraphError(f"P collection needs 0 <= r < s = {s}")
    w, _ = _ids(g, p)
    targets = [w(r + j) for j in range(1, 3 * k + 1)]
    found = max_disjoint_paths(g, w(0), targets, 3 * k, Window(-k * k, r + s, p))
    if found is None:
        return None
    by_end = {path[-1]: path for path in found.paths}
    return PathSystem(tuple(by_end[x] for x in targets), shared_source=True, window=found.window)


def find_R_collection(g: Graph, spec: ConstructionSpec, t: int) -> PathSystem | None:
    """R_j from z_{t-s+j} to w_t, j = 1..3k, inside [t-s+1, t+s]."""
    _require_psi(g, spec)
    k, s, p = spec.k, spec.s, spec.p
    if t < 2 * s:
        raise GraphError(f"R collection needs t >= 2s = {2 * s}")
    w, z = _ids(g, p)
    starts = [z(t - s + j) for j in range(1, 3 * k + 1)]
    found = max_disjoint_paths(g, w(t), starts, 3 * k, Window(t - s + 1, t + s, p))
    if found is None:
        return None
    by_start = {path[-1]: tuple(reversed(path)) for path in found.paths}
    system = PathSystem(tuple(by_start[x] for x in starts), shared_sink=True, window=found.window)
    validate_path_system(g, system)
    return system


def build_Q_segment(g: Graph, spec: ConstructionSpec, t: int) -> PathSystem:
    """Q_j = w_{r+j} z_{r+s+j} w_{r+s+j} ... w_{t-2s+j} z_{t-s+j}, r = t mod s."""
    _require_psi(g, spec)
    k, s, p = spec.k, spec.s, spec.p
    if t < 2 * s:
        raise GraphError(f"Q segment needs t >= 2s = {2 * s}")
    r = t % s
    w, z = _ids(g, p)
    paths = []
    for j in range(1, 3 * k + 1):
        seq = []
        i = r + j
        while i <= t - 2 * s + j:
            seq += [w(i), z(i + s)]
            i += s
        paths.append(tuple(seq))
    system = PathSystem(tuple(paths))
    validate_path_system(g, system)
    inner = Window(r + s + 1, t - s + 3 * k, p)
    for path in paths:
        if path[0] != w(r + paths.index(path) + 1) or path[-1] != z(t - s + paths.index(path) + 1):
            raise VerificationFailure("Q path endpoints do not match the ladder formula")
        for x in path[1:-1]:
            if not inner.contains(g, x):
                raise VerificationFailure(f"Q internal vertex {g.label_of(x)} outside {inner}")
    return system


def assemble_full_witness(
    g: Graph, spec: ConstructionSpec, t: int, window: Window | None = None
) -> PathSystem:
    """3k internally disjoint w_0-w_t paths inside [-k^2, t+s].

    For t < 2s this is the direct flow check; otherwise P, Q and R are joined
    end to end. ``window`` overrides the validation window (negative tests).
    """
    _require_psi(g, spec)
    k, s, p = spec.k, spec.s, spec.p
    if not 1 <= t <= p // 2:
        raise GraphError(f"t must satisfy 1 <= t <= p/2 = {p // 2}")
    full = Window(-k * k, t + s, p)
    if t < 2 * s:
        system = small_t_witness(g, spec, t)
        if system is None:
            raise VerificationFailure(f"small-t flow check failed for t={t}")
    else:
        r = t % s
        P = find_P_collection(g, spec, r)
        if P is None:
            raise VerificationFailure(f"P segment missing for r={r}")
        Q = build_Q_segment(g, spec, t)
        R = find_R_collection(g, spec, t)
        if R is None:
            raise VerificationFailure(f"R segment missing for t={t}")
        joined = []
        for a, b, c in zip(P.paths, Q.paths, R.paths):
            if a[-1] != b[0] or b[-1] != c[0]:
                raise VerificationFailure("segment endpoints do not line up")
            joined.append(a + b[1:] + c[1:])
        system = PathSystem(tuple(joined), shared_source=True, shared_sink=True, window=full)
    system = PathSystem(system.paths, True, True, window or full)
    validate_path_system(g, system)
    if len(system) != 3 * k:
        raise VerificationFailure(f"expected {3 * k} paths, got {len(system)}")
    return system


@dataclass
class PathCheck:
    kind: str
    param: int
    passed: bool
    detail: str = ""


def verify_psi_paths(
    k: int,
    p: int | None = None,
    t_range: Iterable[int] | None = None,
    r_range: Iterable[int] | None = None,
    t_samples: Iterable[int] | None = None,
) -> list[PathCheck]:
    """Small-t flow checks, every P collection, R collections and assembled
    witnesses for Psi_{k,p} (default p = 16 s)."""
    from .constructions import build_psi

    s = k**3 - k**2
    p = p or 16 * s
    spec = ConstructionSpec("psi", k, p, allow_any_k=True)
    g = build_psi(k, p, allow_any_k=True)
    t_range = range(1, 2 * s) if t_range is None else t_range
    r_range = range(s) if r_range is None else r_range
    t_samples = default_t_samples(s) if t_samples is None else t_samples
    out = []

    def run(kind: str, param: int, fn) -> None:
        try:
            ok = fn() is not None
            out.append(PathCheck(kind, param, ok, "" if ok else "no path system"))
        except VerificationFailure as exc:
            out.append(PathCheck(kind, param, False, str(exc)))

    for t in t_range:
        run("small-t", t, lambda t=t: small_t_witness(g, spec, t))
    for r in r_range:
        run("P", r, lambda r=r: find_P_collection(g, spec, r))
    for t in t_samples:
        run("R", t, lambda t=t: find_R_collection(g, spec, t))
        run("Q", t, lambda t=t: build_Q_segment(g, spec, t))
        run("full", t, lambda t=t: assemble_full_witness(g, spec, t))
    return out


def default_t_samples(s: int) -> list[int]:
    return [2 * s, 2 * s + 14, 2 * s + 64]
