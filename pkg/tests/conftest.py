import itertools
import sys
import math

import pytest

from orient5.graph import ParentTree
from orient5.generators import double_spider, path

INF = math.inf

# Labelled like the worked example: centre v1 has branches x1 (two deep leaves)
# and x2 (one); centre v2 has a leaf branch y1 and branch y2 with three leaves.
FIG1_EDGES = [
    ("v1", "v2"),
    ("v1", "x1"), ("v1", "x2"), ("x1", "x11"), ("x1", "x12"), ("x2", "x21"),
    ("v2", "y1"), ("v2", "y2"), ("y2", "y21"), ("y2", "y22"), ("y2", "y23"),
]


@pytest.fixture
def fig1():
    return ParentTree(FIG1_EDGES)


@pytest.fixture
def p6():
    return path(6)


@pytest.fixture
def spider():
    return double_spider(2, 1, 2, 1)


def twos(t):
    return {v: 2 for v in t.vertices}


def floyd(vertices, arcs):
    """All-pairs distances by Floyd-Warshall: independent of the BFS code."""
    idx = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for a, b in arcs:
        d[idx[a]][idx[b]] = 1
    for k, i, j in itertools.product(range(n), repeat=3):
        if d[i][k] + d[k][j] < d[i][j]:
            d[i][j] = d[i][k] + d[k][j]
    return {(u, v): d[idx[u]][idx[v]] for u in vertices for v in vertices}


def undirected_arcs(g):
    return [(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges]


def brute_diameter(o):
    d = floyd(o.base.vertices, o.arcs())
    return max(d.values())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
