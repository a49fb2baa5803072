from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from avgconn.connectivity import (
    PairConnectivityReport,
    all_pairs_report,
    global_connectivity,
    is_degree_partitioned,
    is_minimally_k_connected,
    local_connectivity,
    local_edge_connectivity,
    local_vertex_connectivity,
)
from avgconn.constructions import build_gamma, build_gkp, build_phi
from avgconn.graph import GraphError, add_edge, from_edge_list

from conftest import complete, cycle, path
from oracles import (
    brute_global_vertex_connectivity,
    brute_local_vertex_connectivity,
    min_edge_cut_size,
)
from test_graph import graphs


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_k4_pairs():
    k4 = complete(4)
    assert all(local_vertex_connectivity(k4, u, v) == 3 for u, v in combinations(range(4), 2))


def test_c6_antipodal_edge():
    assert local_edge_connectivity(cycle(6), 0, 3) == 2


def test_gamma34_edge_values():
    g = build_gamma(3, 4)
    assert local_edge_connectivity(g, g.vertex("w_0"), g.vertex("w_1")) == 9
    assert local_edge_connectivity(g, g.vertex("x1_0"), g.vertex("w_2")) == 3


def test_gamma38_w0_w3_at_most_four():
    g = build_gamma(3, 8)
    assert local_vertex_connectivity(g, g.vertex("w_0"), g.vertex("w_3")) <= 4


def test_phi_w_pair_value():
    g = build_phi(6, 7)
    assert local_vertex_connectivity(g, g.vertex("w_0"), g.vertex("w_1")) == 18


def test_pair_errors_and_disconnected():
    g = from_edge_list(4, [(0, 1), (2, 3)])
    assert local_vertex_connectivity(g, 0, 2) == 0
    assert local_edge_connectivity(g, 0, 3) == 0
    with pytest.raises(GraphError):
        local_vertex_connectivity(g, 1, 1)
    with pytest.raises(GraphError):
        local_edge_connectivity(g, 0, 4)
    with pytest.raises(ValueError):
        local_connectivity(g, 0, 1, "arc")


def test_global_examples():
    assert global_connectivity(path(6)) == 1
    g = build_gkp(4, 7)
    assert global_connectivity(g, "vertex") == global_connectivity(g, "edge") == 4
    assert global_connectivity(from_edge_list(3, [(0, 1)])) == 0
    with pytest.raises(GraphError):
        global_connectivity(from_edge_list(1, []))
    assert global_connectivity(complete(5)) == 4


def test_report_examples(k23):
    assert all_pairs_report(path(4)).average == 1
    assert all_pairs_report(build_gamma(3, 4), "edge").average == Fraction(33, 10)
    rep = all_pairs_report(k23)
    assert rep.average == Fraction(21, 10)
    assert sorted(rep.values.values()) == [2] * 9 + [3]


def test_report_serialisation(k23):
    rep = all_pairs_report(k23, "vertex")
    d = json.loads(rep.to_json())
    assert d["average"] == {"num": 21, "den": 10}
    assert d["total"] == {"num": 21, "den": 1}
    assert d["pairs"][0] == [0, 1, 3]
    assert PairConnectivityReport.from_dict(d).values == rep.values
    csv = rep.to_csv().splitlines()
    assert csv[0] == "u,v,value" and len(csv) == 11
    d["average"]["num"] = 22
    with pytest.raises(ValueError):
        PairConnectivityReport.from_dict(d)


def test_report_deterministic_across_workers():
    g = build_gamma(3, 5)
    base = all_pairs_report(g, "vertex", workers=1).to_json()
    for w in (2, 4, 7):
        assert all_pairs_report(g, "vertex", workers=w).to_json() == base


def test_shortcut_matches_full():
    g = build_gamma(3, 6)
    for mode in ("vertex", "edge"):
        assert all_pairs_report(g, mode, shortcut=True).values == all_pairs_report(g, mode).values


def test_minimality_examples():
    assert is_minimally_k_connected(cycle(7), 2)
    g = build_gkp(3, 20)
    assert is_minimally_k_connected(g, 3, "vertex") and is_minimally_k_connected(g, 3, "edge")
    chorded = add_edge(cycle(5), 0, 2)
    res = is_minimally_k_connected(chorded, 2)
    assert not res and res.edge == (0, 2)
    res = is_minimally_k_connected(cycle(5), 3)
    assert not res and res.global_value == 2
    with pytest.raises(ValueError):
        is_minimally_k_connected(cycle(5), 2, method="guess")


def test_degree_partitioned_examples(k23):
    assert is_degree_partitioned(build_gamma(3, 4), 3)
    assert not is_degree_partitioned(build_gkp(3, 20), 3)
    assert is_degree_partitioned(k23, 2)
    with pytest.raises(GraphError):
        is_degree_partitioned(path(3), 2)


# corpus-wide oracle checks ---------------------------------------------------

def test_menger_vertex_oracle_n6(small_corpus):
    for g in small_corpus:
        if g.n > 6:
            continue
        for u, v in combinations(range(g.n), 2):
            assert local_vertex_connectivity(g, u, v) == brute_local_vertex_connectivity(g, u, v)


def test_menger_edge_oracle(small_corpus):
    checked = 0
    for g in small_corpus:
        if g.m > 8 or g.n > 6:
            continue
        for u, v in combinations(range(g.n), 2):
            assert local_edge_connectivity(g, u, v) == min_edge_cut_size(g, u, v)
            checked += 1
    assert checked > 100


def test_global_against_brute_and_networkx(small_corpus):
    for g in small_corpus:
        if g.n <= 6:
            assert global_connectivity(g) == brute_global_vertex_connectivity(g)
        h = _nx(g)
        assert global_connectivity(g, "vertex") == nx.node_connectivity(h)
        assert global_connectivity(g, "edge") == nx.edge_connectivity(h)


def test_endpoint_and_degree_methods_agree_with_safe(small_corpus):
    """Precondition for using the faster minimality paths."""
    for g in small_corpus:
        for mode in ("vertex", "edge"):
            k = global_connectivity(g, mode)
            safe = is_minimally_k_connected(g, k, mode).minimal
            assert is_minimally_k_connected(g, k, mode, method="endpoint").minimal == safe
            assert is_minimally_k_connected(g, k, mode, method="degree").minimal == safe


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_pair_chain(g):
    if g.n < 2:
        return
    for u, v in combinations(range(g.n), 2):
        kv = local_vertex_connectivity(g, u, v)
        ke = local_edge_connectivity(g, u, v)
        assert kv <= ke <= min(g.degree(u), g.degree(v))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_report_invariants(g):
    if g.n < 2:
        return
    for mode in ("vertex", "edge"):
        rep = all_pairs_report(g, mode)
        assert rep.average * (g.n * (g.n - 1) // 2) == rep.total
        assert rep.minimum == global_connectivity(g, mode)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 6), st.integers(0, 4))
def test_regular_k_connected_average_is_k(k, extra):
    g = build_gkp(k, k + extra)
    rep = all_pairs_report(g)
    assert rep.average == k and set(rep.values.values()) == {k}
