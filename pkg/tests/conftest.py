from __future__ import annotations

import os

import pytest

from avgconn.graph import from_edge_list
from avgconn.search import enumerate_connected_graphs


def cycle(n):
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a, b):
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


@pytest.fixture(scope="session")
def small_corpus():
    """Every connected graph on 2..7 vertices, one per isomorphism class."""
    return [g for n in range(2, 8) for g in enumerate_connected_graphs(n)]


@pytest.fixture(scope="session")
def k23():
    return complete_bipartite(2, 3)


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_addoption(parser):
    parser.addoption(
        "--tier",
        choices=["default", "long"],
        default=os.environ.get("AVGCONN_TIER", "default"),
        help="'long' also runs the suites marked long",
    )


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


def pytest_collection_modifyitems(config, items):
    if config.getoption("--tier") == "long":
        return
    skip = pytest.mark.skip(reason="long tier; run with --tier long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash[ACCEPTANCE_KEY]
    if lines:
        terminalreporter.section("acceptance")
        for line in lines:
            terminalreporter.write_line(line)
