from __future__ import annotations

import json
from itertools import combinations

import pytest

from avgconn.connectivity import local_vertex_connectivity
from avgconn.constructions import ConstructionSpec, build_gkp
from avgconn.graph import GraphError, from_edge_list
from avgconn.separators import (
    NEIGHBOURHOOD,
    OTHER,
    TWO_RUN,
    VerificationFailure,
    certificates_json,
    classify,
    enumerate_minimal_separators,
    is_minimal_separator,
    make_certificate,
    minimal_separators_naive,
    minimum_separator,
    separates,
    verify_gkp_separators,
)

from conftest import complete_bipartite, cycle, path


def test_minimum_separator_p3():
    cert = minimum_separator(path(3), 0, 2)
    assert cert.separator == (1,) and cert.minimal


def test_minimum_separator_g37():
    g = build_gkp(3, 7)
    cert = minimum_separator(g, g.vertex("w_0"), g.vertex("w_3"))
    assert cert.size == 3
    assert separates(g, cert.separator, *cert.pair)


def test_minimum_separator_k23(k23):
    cert = minimum_separator(k23, 0, 1)
    assert cert.separator == (2, 3, 4)


def test_minimum_separator_adjacent_rejected():
    with pytest.raises(GraphError):
        minimum_separator(path(3), 0, 1)


def test_minimum_separator_matches_flow(small_corpus):
    for g in small_corpus:
        if g.n > 6:
            continue
        for u, v in combinations(range(g.n), 2):
            if not g.has_edge(u, v):
                assert minimum_separator(g, u, v).size == local_vertex_connectivity(g, u, v)


def test_enumerate_p4():
    assert [c.separator for c in enumerate_minimal_separators(path(4), 0, 3)] == [(1,), (2,)]


def test_enumerate_c5():
    got = [c.separator for c in enumerate_minimal_separators(cycle(5), 0, 2)]
    assert got == [(1, 3), (1, 4)]


def test_enumerate_limit():
    g = build_gkp(3, 9)
    with pytest.raises(GraphError):
        enumerate_minimal_separators(g, 0, 1, max_n=16)


def test_minimality_criterion_matches_naive(small_corpus):
    """Both-sides criterion versus subset re-checks."""
    count = 0
    for g in small_corpus:
        for u, v in combinations(range(g.n), 2):
            if g.has_edge(u, v):
                continue
            fast = [c.separator for c in enumerate_minimal_separators(g, u, v)]
            assert sorted(fast) == sorted(minimal_separators_naive(g, u, v))
            count += 1
    assert count > 1000


def test_minimality_criterion_matches_naive_n10():
    for g in (build_gkp(3, 5), complete_bipartite(4, 6), cycle(10)):
        for u, v in [(0, g.n - 1), (0, 2), (1, 3)]:
            if g.has_edge(u, v):
                continue
            fast = [c.separator for c in enumerate_minimal_separators(g, u, v)]
            assert sorted(fast) == sorted(minimal_separators_naive(g, u, v))


def test_g36_sizes_and_shapes():
    spec = ConstructionSpec("gkp", 3, 6)
    g = build_gkp(3, 6)
    kinds = set()
    for u, v in combinations(range(g.n), 2):
        if g.has_edge(u, v):
            continue
        for cert in enumerate_minimal_separators(g, u, v):
            assert cert.size in (3, 4)
            c = classify(cert, g, spec, strict=True)
            kinds.add(c.classification)
            if c.size == 3:
                assert c.classification == NEIGHBOURHOOD
            else:
                r = c.runs
                assert c.classification == TWO_RUN
                lw = r["L_W"][1] if r["L_W"] else 0
                lx = r["L_X"][1] if r["L_X"] else 0
                rw = r["R_W"][1] if r["R_W"] else 0
                rx = r["R_X"][1] if r["R_X"] else 0
                assert lw + lx == 2 and rw + rx == 2
    assert kinds == {NEIGHBOURHOOD, TWO_RUN}


def test_neighbourhood_of_x0():
    spec = ConstructionSpec("gkp", 3, 6)
    g = build_gkp(3, 6)
    x0 = g.vertex("x_0")
    assert sorted(g.label_of(v) for v in g.adjacency[x0]) == ["w_0", "w_4", "w_5"]
    other = g.vertex("x_3")
    cert = make_certificate(g, g.adjacency[x0], x0, other)
    assert classify(cert, g, spec).classification == NEIGHBOURHOOD


def test_size_five_is_other():
    spec = ConstructionSpec("gkp", 3, 6)
    g = build_gkp(3, 6)
    x0, x3 = g.vertex("x_0"), g.vertex("x_3")
    s = list(g.adjacency[x0]) + [g.vertex("x_1"), g.vertex("x_2")]
    cert = make_certificate(g, s, x0, x3)
    assert cert.size == 5 and not cert.minimal
    assert classify(cert, g, spec).classification == OTHER
    with pytest.raises(VerificationFailure):
        classify(cert, g, spec, strict=True)


def test_certificate_invariants_and_json():
    g = build_gkp(3, 6)
    u, v = g.vertex("w_0"), g.vertex("w_3")
    certs = enumerate_minimal_separators(g, u, v)
    for c in certs:
        assert u not in c.separator and v not in c.separator
        assert u in c.sides[0] and v in c.sides[1]
        assert not set(c.sides[0]) & set(c.sides[1])
        for x in c.separator:
            smaller = [y for y in c.separator if y != x]
            assert not separates(g, smaller, u, v)
    data = json.loads(certificates_json(certs, g))
    assert data[0]["pair"] == ["w_0", "w_3"]


def test_make_certificate_rejects_non_separator():
    with pytest.raises(VerificationFailure):
        make_certificate(cycle(5), [1], 0, 2)
    assert not is_minimal_separator(cycle(5), [1], 0, 2)


def test_classify_needs_labels():
    spec = ConstructionSpec("gkp", 3, 3)
    g = from_edge_list(3, [(0, 1), (1, 2)])
    cert = make_certificate(g, [1], 0, 2)
    with pytest.raises(GraphError):
        classify(cert, g, spec)


@pytest.mark.parametrize("k, p", [(3, 3), (3, 4), (3, 5), (3, 6), (4, 4), (4, 5), (5, 5)])
def test_verify_gkp_separators_small(k, p):
    rows, ok = verify_gkp_separators(k, p)
    assert ok and rows
    assert all(r.touching == 0 for r in rows)
