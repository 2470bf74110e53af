import pytest

from conftest import INF, floyd, twos, undirected_arcs
from orient5.errors import InputError, PreconditionError
from orient5.generators import path
from orient5.graph import (
    Graph,
    ParentTree,
    a_set,
    bfs_distances,
    center,
    diameter,
    dump_tree,
    is_bridgeless,
    load_tree,
    profile_diam5,
    radius,
)
from orient5.multiplication import multiply


def test_path_end_to_end_distance(p6):
    assert bfs_distances(p6, "p1")["p6"] == 5
    for v in p6.vertices:
        assert bfs_distances(p6, v)[v] == 0


def test_fig1_far_pair(fig1):
    assert bfs_distances(fig1, "x11")["y21"] == 5


def test_bfs_matches_floyd(fig1):
    d = floyd(fig1.vertices, undirected_arcs(fig1))
    for u in fig1.vertices:
        dist = bfs_distances(fig1, u)
        assert all(dist[v] == d[u, v] for v in fig1.vertices)


def test_unreachable_is_inf():
    g = Graph(["a", "b", "c"], [("a", "b")])
    assert bfs_distances(g, "a")["c"] == INF


def test_unknown_source():
    with pytest.raises(KeyError):
        bfs_distances(path(3), "zz")


def test_path_metrics(p6):
    assert diameter(p6) == 5
    assert radius(p6) == 3
    assert center(p6) == {"p3", "p4"}


def test_fig1_metrics(fig1):
    assert diameter(fig1) == 5
    assert center(fig1) == {"v1", "v2"}


def test_single_edge():
    t = ParentTree([("a", "b")])
    assert diameter(t) == 1
    assert center(t) == {"a", "b"}


def test_disconnected_rejected():
    with pytest.raises(PreconditionError):
        diameter(Graph(["a", "b", "c"], [("a", "b")]))


@pytest.mark.parametrize("n", [2, 3, 6, 9])
def test_trees_have_bridges(n):
    assert not is_bridgeless(path(n))


def test_c4_bridgeless():
    assert is_bridgeless(Graph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]))


def test_p6_doubled_bridgeless(p6):
    assert is_bridgeless(multiply(p6, twos(p6)))


def test_bridges_brute_force():
    # two triangles joined by one edge: exactly that edge is a bridge
    g = Graph("abcdef", [("a", "b"), ("b", "c"), ("c", "a"), ("c", "d"), ("d", "e"), ("e", "f"), ("f", "d")])
    from orient5.graph import bridges, is_connected

    found = bridges(g)
    brute = [e for e in g.edges if not is_connected(Graph(g.vertices, [f for f in g.edges if f != e]))]
    assert found == brute == [("c", "d")]


def test_profile_fig1(fig1):
    prof = profile_diam5(fig1, twos(fig1))
    assert (prof.c1, prof.c2) == ("v1", "v2")
    assert prof.nl[1] == ("x1", "x2")
    assert prof.nl[2] == ("y2",)
    assert prof.m == {1: 2, 2: 2}
    assert prof.branches[2] == ("y1", "y2")
    assert prof.deep["y2"] == ("y21", "y22", "y23")


def test_profile_path(p6):
    prof = profile_diam5(p6)
    assert len(prof.nl[1]) == len(prof.nl[2]) == 1
    assert len(prof.branches[1]) == len(prof.branches[2]) == 1


def test_profile_partition(fig1):
    prof = profile_diam5(fig1)
    parts = [prof.c1, prof.c2, *prof.branches[1], *prof.branches[2]]
    parts += [d for b in (*prof.branches[1], *prof.branches[2]) for d in prof.deep[b]]
    assert sorted(parts) == sorted(fig1.vertices)


def test_profile_wrong_diameter():
    with pytest.raises(PreconditionError, match="diameter 4"):
        profile_diam5(path(5))


def test_a_set_values(p6, spider, fig1):
    assert a_set(p6) == frozenset()
    assert len(a_set(spider)) == 4
    assert a_set(fig1) == {"x11", "x12", "x21", "y21", "y22", "y23"}


def test_a_set_against_floyd(fig1):
    d = floyd(fig1.vertices, undirected_arcs(fig1))
    brute = {x for x in fig1.vertices if sum(d[x, v] == 5 for v in fig1.vertices) >= 2}
    ecc5 = {x for x in fig1.vertices if max(d[x, v] for v in fig1.vertices) == 5}
    assert a_set(fig1) == brute
    assert a_set(fig1) <= ecc5


def test_tree_file_roundtrip(fig1):
    s = twos(fig1)
    s["v1"] = 3
    t2, s2 = load_tree(dump_tree(fig1, s))
    assert t2 == fig1 and s2 == s


def test_tree_file_defaults_to_two():
    t, s = load_tree('{"edges": [["a", "b"], ["b", "c"]], "multiplicities": {"a": 4}}')
    assert s == {"a": 4, "b": 2, "c": 2}


@pytest.mark.parametrize(
    "text, needle",
    [
        ('{"edges": [["a", "b"], ["b", "a"]]}', "duplicate edge"),
        ('{"edges": [["a", "a"]]}', "self-loop"),
        ('{"edges": [["a", "b"], ["c", "d"]]}', "tree"),
        ("not json", "invalid JSON"),
        ('{"edges": [["a", "b"]], "multiplicities": {"a": 0}}', ">= 1"),
    ],
)
def test_tree_file_errors(text, needle):
    with pytest.raises(InputError, match=needle):
        load_tree(text)
