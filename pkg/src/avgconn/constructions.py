"""Generators for the circulant bipartite families G_{k,p}, Gamma, Psi and Phi.

Vertex numbering is canonical: W occupies ids 0..p-1, then the X block (or
X1, X2), then Y, then Z (or X3), each block in index order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .graph import Graph, Label, from_edge_list

Family = Literal["gkp", "gamma", "psi", "phi"]
FAMILIES = ("gkp", "gamma", "psi", "phi")


class ConstructionError(ValueError):
    pass


def psi_stride(k: int) -> int:
    """s = k^3 - k^2, the long Z-stride distance used by Psi."""
    return k**3 - k**2


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    k: int
    p: int
    r: int | None = None
    allow_any_k: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        k, p = self.k, self.p
        if self.family not in FAMILIES:
            raise ConstructionError(f"unknown family {self.family!r}")
        if self.family in ("gkp", "gamma"):
            if not 3 <= k <= p:
                raise ConstructionError(f"{self.family} needs 3 <= k <= p, got k={k}, p={p}")
        elif self.family == "psi":
            if k < 3 or (k not in (3, 4, 5) and not self.allow_any_k):
                raise ConstructionError(
                    f"psi is only established for k in {{3, 4, 5}} (got k={k}); "
                    "pass allow_any_k to experiment"
                )
            if p < 4 * self.s:
                raise ConstructionError(f"psi needs p >= 4s = {4 * self.s}, got p={p}")
        else:
            if k < 6:
                raise ConstructionError(f"phi needs k >= 6, got k={k}")
            if self.r is None or self.r < k + 1:
                raise ConstructionError(f"phi needs r >= k+1 = {k + 1}, got r={self.r}")
            if p != self.r * k * k - 1:
                raise ConstructionError("phi needs p = r*k^2 - 1")

    @classmethod
    def phi(cls, k: int, r: int) -> "ConstructionSpec":
        if k < 6:
            raise ConstructionError(f"phi needs k >= 6, got k={k}")
        if r < k + 1:
            raise ConstructionError(f"phi needs r >= k+1 = {k + 1}, got r={r}")
        return cls("phi", k, r * k * k - 1, r)

    @property
    def s(self) -> int:
        return psi_stride(self.k)

    @property
    def order(self) -> int:
        return 2 * self.p if self.family == "gkp" else 4 * self.p

    def pi1(self, i: int) -> int:
        return (self.k * i) % self.p

    def pi2(self, i: int) -> int:
        return (self.k * self.k * i) % self.p

    def to_dict(self) -> dict:
        d = {"family": self.family, "k": self.k, "p": self.p}
        if self.family == "psi":
            d["s"] = self.s
        if self.family == "phi":
            d["r"] = self.r
        return d


def _labels(p: int, classes: list[str]) -> tuple[Label, ...]:
    return tuple(Label(c, i) for c in classes for i in range(p))


def _ladder(p: int, block: int, k: int, source, step: int = 1) -> list[tuple[int, int]]:
    # edges w_{source(i)} -- block_{i + step*j}, 0 <= j < k
    base = block * p
    return [(source(i), base + (i + step * j) % p) for i in range(p) for j in range(k)]


def build_gkp(k: int, p: int) -> Graph:
    """G_{k,p}: w_i adjacent to x_i, ..., x_{i+k-1} (indices mod p)."""
    ConstructionSpec("gkp", k, p)
    edges = _ladder(p, 1, k, lambda i: i)
    return from_edge_list(2 * p, edges, _labels(p, ["W", "X"]))


def build_gamma(k: int, p: int) -> Graph:
    """Three copies of G_{k,p} glued along W (classes X1, X2, X3)."""
    ConstructionSpec("gamma", k, p)
    edges = []
    for m in (1, 2, 3):
        edges += _ladder(p, m, k, lambda i: i)
    g = from_edge_list(4 * p, edges, _labels(p, ["W", "X1", "X2", "X3"]))
    _check_degrees(g, p, 3 * k, k)
    return g


def build_psi(k: int, p: int, allow_any_k: bool = False) -> Graph:
    """Psi_{k,p}: X-, Y- and Z-ladders of strides 1, k and k^2."""
    spec = ConstructionSpec("psi", k, p, allow_any_k=allow_any_k)
    edges = _ladder(p, 1, k, lambda i: i, 1)
    edges += _ladder(p, 2, k, lambda i: i, k)
    edges += _ladder(p, 3, k, lambda i: i, k * k)
    g = from_edge_list(4 * p, edges, _labels(p, ["W", "X", "Y", "Z"]))
    _check_degrees(g, p, 3 * k, k)
    for i in range(p):
        w = i
        if not (g.has_edge(w, 3 * p + i) and g.has_edge(w, 3 * p + (i + spec.s) % p)):
            raise ConstructionError(f"w_{i} misses z_{i} or z_{i}+s")
    return g


def build_phi(k: int, r: int) -> Graph:
    """Phi_{k,p}, p = r k^2 - 1: Y- and Z-ladders hang off w_{k i} and w_{k^2 i}.

    Every union runs over i = 0..p-1.
    """
    spec = ConstructionSpec.phi(k, r)
    p = spec.p
    for perm in (spec.pi1, spec.pi2):
        if len({perm(i) for i in range(p)}) != p:
            raise ConstructionError("multiplier map is not a permutation of Z_p")
    edges = _ladder(p, 1, k, lambda i: i)
    edges += _ladder(p, 2, k, spec.pi1)
    edges += _ladder(p, 3, k, spec.pi2)
    g = from_edge_list(4 * p, edges, _labels(p, ["W", "X", "Y", "Z"]))
    _check_degrees(g, p, 3 * k, k)
    return g


def build(spec: ConstructionSpec) -> Graph:
    if spec.family == "gkp":
        return build_gkp(spec.k, spec.p)
    if spec.family == "gamma":
        return build_gamma(spec.k, spec.p)
    if spec.family == "psi":
        return build_psi(spec.k, spec.p, spec.allow_any_k)
    return build_phi(spec.k, spec.r)


def _check_degrees(g: Graph, p: int, w_deg: int, other: int) -> None:
    for v in range(g.n):
        want = w_deg if v < p else other
        if g.degree(v) != want:
            raise ConstructionError(f"{g.label_of(v)} has degree {g.degree(v)}, expected {want}")


def label_table(g: Graph) -> dict[str, int]:
    return {str(lab): i for i, lab in enumerate(g.labels or ())}
