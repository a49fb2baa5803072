from __future__ import annotations

import json

import pytest

from avgconn.constructions import ConstructionSpec, build_psi
from avgconn.graph import GraphError, from_edge_list
from avgconn.paths import (
    PathSystem,
    Window,
    assemble_full_witness,
    build_Q_segment,
    default_t_samples,
    find_P_collection,
    find_R_collection,
    max_disjoint_paths,
    small_t_witness,
    validate_path_system,
    verify_psi_paths,
)
from avgconn.separators import VerificationFailure

from conftest import complete, complete_bipartite


@pytest.fixture(scope="module")
def psi72():
    return ConstructionSpec("psi", 3, 72), build_psi(3, 72)


def test_k4_three_paths():
    sys_ = max_disjoint_paths(complete(4), 0, [3], 3)
    assert len(sys_) == 3
    assert sorted(len(p) for p in sys_.paths) == [2, 3, 3]


def test_star_leaf_absent():
    star = complete_bipartite(1, 3)
    assert max_disjoint_paths(star, 0, [1], 2) is None


def test_bad_arguments():
    g = complete(4)
    with pytest.raises(GraphError):
        max_disjoint_paths(g, 0, [1], 0)
    with pytest.raises(GraphError):
        max_disjoint_paths(g, 0, [0], 1)
    with pytest.raises(GraphError):
        max_disjoint_paths(g, 0, [1, 2], 3)
    with pytest.raises(GraphError):
        Window(5, 2, 10)
    with pytest.raises(GraphError):
        Window(0, 10, 10)


def test_window_wraps_negative_indices(psi72):
    _, g = psi72
    win = Window(-9, 19, 72)
    assert win.contains(g, g.vertex("z_63")) and win.contains(g, g.vertex("w_19"))
    assert not win.contains(g, g.vertex("x_20")) and not win.contains(g, g.vertex("y_62"))
    assert len(win.vertices(g)) == 4 * 29


def test_psi72_w0_w1(psi72):
    _, g = psi72
    w0, w1 = g.vertex("w_0"), g.vertex("w_1")
    sys_ = max_disjoint_paths(g, w0, [w1], 9, Window(-9, 19, 72))
    assert sys_ is not None and len(sys_) == 9


def test_P_collection_r0(psi72):
    spec, g = psi72
    sys_ = find_P_collection(g, spec, 0)
    assert [g.label_of(p[-1]) for p in sys_.paths] == [f"w_{j}" for j in range(1, 10)]
    assert all(p[0] == g.vertex("w_0") for p in sys_.paths)
    with pytest.raises(GraphError):
        find_P_collection(g, spec, spec.s)


def test_R_collection(psi72):
    spec, g = psi72
    sys_ = find_R_collection(g, spec, 36)
    assert [g.label_of(p[0]) for p in sys_.paths] == [f"z_{18 + j}" for j in range(1, 10)]
    assert all(g.label_of(p[-1]) == "w_36" for p in sys_.paths)


def test_Q_segment_expansion(psi72):
    spec, g = psi72
    q = build_Q_segment(g, spec, 36)
    assert [g.label_of(v) for v in q.paths[0]] == ["w_1", "z_19"]
    q = build_Q_segment(g, ConstructionSpec("psi", 3, 72), 36 + 5)
    assert [g.label_of(v) for v in q.paths[0]] == ["w_6", "z_24"]
    with pytest.raises(GraphError):
        build_Q_segment(g, spec, 20)


def test_Q_segment_long_ladder():
    spec = ConstructionSpec("psi", 3, 288)
    g = build_psi(3, 288)
    q = build_Q_segment(g, spec, 100)
    # r = 10: w_11 z_29 w_29 z_47 ... w_65 z_83
    labels = [g.label_of(v) for v in q.paths[0]]
    assert labels[:4] == ["w_11", "z_29", "w_29", "z_47"]
    assert labels[-1] == "z_83"


def test_full_witness(psi72):
    spec, g = psi72
    sys_ = assemble_full_witness(g, spec, 36)
    assert len(sys_) == 9
    assert sys_.window == Window(-9, 54, 72)
    small = assemble_full_witness(g, spec, 5)
    assert len(small) == 9 and small.window == Window(-9, 23, 72)


def test_full_witness_window_violation(psi72):
    spec, g = psi72
    with pytest.raises(VerificationFailure):
        assemble_full_witness(g, spec, 36, window=Window(0, 40, 72))


def test_full_witness_t40_long_cycle():
    spec = ConstructionSpec("psi", 3, 288)
    g = build_psi(3, 288)
    assert len(assemble_full_witness(g, spec, 40)) == 9
    with pytest.raises(VerificationFailure):
        assemble_full_witness(g, spec, 40, window=Window(-9, 50, 288))
    with pytest.raises(GraphError):
        assemble_full_witness(g, spec, 145)


def test_validator_rejections():
    g = complete(5)
    good = PathSystem(((0, 1, 4), (0, 2, 4)), shared_source=True, shared_sink=True)
    validate_path_system(g, good)
    cases = [
        PathSystem(((0, 1, 4), (0, 1, 4)), True, True),  # shared internal
        PathSystem(((0, 1, 4), (0, 4)), True, False),  # sink not distinct
        PathSystem(((0, 1, 0, 4),), True, True),  # repeated vertex
        PathSystem(((0, 1, 4), (0, 4, 2)), True, False),  # runs through an endpoint
        PathSystem(((0,),), True, True),
        PathSystem((), True, True),
    ]
    for bad in cases[:-1]:
        with pytest.raises(VerificationFailure):
            validate_path_system(g, bad)
    with pytest.raises(VerificationFailure):
        validate_path_system(g, cases[-1])
    p3 = from_edge_list(3, [(0, 1)])
    with pytest.raises(VerificationFailure):
        validate_path_system(p3, PathSystem(((0, 2),)))


def test_path_system_json(psi72):
    spec, g = psi72
    sys_ = small_t_witness(g, spec, 3)
    d = json.loads(sys_.to_json(g))
    assert d["window"] == [-9, 21]
    assert all(p[0] == "w_0" and p[-1] == "w_3" for p in d["paths"])


def test_default_samples():
    assert default_t_samples(18) == [36, 50, 100]


def test_verify_psi_paths_subset():
    checks = verify_psi_paths(3, t_range=range(1, 6), r_range=range(3), t_samples=[36])
    assert len(checks) == 5 + 3 + 3
    assert all(c.passed for c in checks)
