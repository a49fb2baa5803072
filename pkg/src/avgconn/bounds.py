"""Degree potential and the closed-form upper bounds for degree-partitioned
minimally k-(edge-)connected graphs. Everything is exact."""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .graph import Graph, GraphError


def potential(seq: Sequence[int]) -> int:
    """Sum over unordered pairs of min(d_i, d_j)."""
    if any(d < 1 for d in seq):
        raise ValueError("potential is defined for positive integers only")
    srt = sorted(seq)
    n = len(srt)
    # the i-th smallest entry is the minimum of its pairs with the n-1-i larger ones
    return sum(d * (n - 1 - i) for i, d in enumerate(srt))


def balance_sequence(total: int, n: int) -> list[int]:
    """n - r copies of d and r copies of d + 1, where total = d n + r."""
    if n < 1 or total < n:
        raise ValueError(f"need total >= n >= 1 (got total={total}, n={n})")
    d, r = divmod(total, n)
    return [d] * (n - r) + [d + 1] * r


def potential_of_graph(g: Graph) -> int:
    if g.n < 2:
        raise GraphError("potential needs n >= 2")
    if g.min_degree() < 1:
        return sum(min(a, b) for i, a in enumerate(g.degrees) for b in g.degrees[i + 1:])
    return potential(g.degrees)


def check_total_le_potential(g: Graph, mode: str = "vertex") -> tuple[bool, int, int]:
    """(K(G) <= P(G), K(G), P(G))."""
    from .connectivity import total_connectivity

    total = total_connectivity(g, mode)
    pot = potential_of_graph(g)
    return total <= pot, total, pot


def kappa_bar_upper(k: int, n: int) -> Fraction:
    """k + k (n-2)^2 / (8 n (n-1)); the same value bounds the edge version."""
    if k < 2 or n < 2 * k + 1:
        raise ValueError(f"bound needs k >= 2 and n >= 2k+1 (got k={k}, n={n})")
    return k + Fraction(k * (n - 2) ** 2, 8 * n * (n - 1))


lambda_bar_upper = kappa_bar_upper


def limit_bound(k: int) -> Fraction:
    return Fraction(9 * k, 8)


def asymptotic_average(k: int, p: int) -> Fraction:
    """Average connectivity (9p - 3) k / (8p - 2) of the W-heavy constructions."""
    if not 3 <= k <= p:
        raise ValueError(f"need 3 <= k <= p (got k={k}, p={p})")
    return Fraction((9 * p - 3) * k, 8 * p - 2)


def construction_total(k: int, p: int) -> Fraction:
    """3k C(p,2) + k (C(4p,2) - C(p,2)) over C(4p,2), evaluated directly."""
    n = 4 * p
    return Fraction(3 * k * comb(p, 2) + k * (comb(n, 2) - comb(p, 2)), comb(n, 2))


def bound_margin(value: Fraction, k: int, n: int) -> dict:
    bound = kappa_bar_upper(k, n)
    return {
        "value": value,
        "bound": bound,
        "margin": bound - value,
        "limit": limit_bound(k),
        "holds": value <= bound < limit_bound(k),
    }
