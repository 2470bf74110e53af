"""Undirected graphs and trees: BFS distances, eccentricity, bridges, and the
labelling of diameter-5 trees around their two central vertices."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

from .errors import InputError, PreconditionError

INF = math.inf


class Graph:
    """Simple undirected graph over sortable vertices.

    Vertices are kept sorted, each edge is stored once as ``(u, v)`` with
    ``u < v``, and the edge list is sorted, so every iteration order is
    reproducible.
    """

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[tuple]):
        verts = sorted(set(vertices))
        index = {v: i for i, v in enumerate(verts)}
        seen = set()
        canon = []
        for a, b in edges:
            if a == b:
                raise InputError(f"self-loop at {a!r}")
            if a not in index or b not in index:
                raise InputError(f"edge ({a!r}, {b!r}) uses an unknown vertex")
            key = (a, b) if index[a] < index[b] else (b, a)
            if key in seen:
                raise InputError(f"duplicate edge ({a!r}, {b!r})")
            seen.add(key)
            canon.append(key)
        canon.sort(key=lambda e: (index[e[0]], index[e[1]]))
        self.vertices: tuple = tuple(verts)
        self.edges: tuple = tuple(canon)
        self.index: dict = index
        adj: dict = {v: [] for v in verts}
        for u, v in canon:
            adj[u].append(v)
            adj[v].append(u)
        self.adjacency: dict = {v: tuple(sorted(ns, key=index.__getitem__)) for v, ns in adj.items()}

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def degree(self, v) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v) -> tuple:
        return self.adjacency[v]


class ParentTree(Graph):
    """A labelled tree with string vertex names."""

    def __init__(self, edges: Iterable[tuple[str, str]]):
        edges = [tuple(e) for e in edges]
        if not edges:
            raise InputError("a tree needs at least one edge")
        vertices = {x for e in edges for x in e}
        super().__init__(vertices, edges)
        if len(self.edges) != len(self.vertices) - 1 or not is_connected(self):
            raise InputError("edge list does not form a tree")


def bfs_distances(g: Graph, source) -> dict:
    """Shortest-path distances from ``source``; unreachable vertices map to INF."""
    if source not in g.index:
        raise KeyError(f"unknown vertex {source!r}")
    dist = {v: INF for v in g.vertices}
    dist[source] = 0
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in g.adjacency[u]:
                if dist[w] == INF:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def is_connected(g: Graph) -> bool:
    if not g.vertices:
        return True
    return INF not in bfs_distances(g, g.vertices[0]).values()


def eccentricity(g: Graph, v) -> float:
    return max(bfs_distances(g, v).values())


def eccentricities(g: Graph) -> dict:
    if not is_connected(g):
        raise PreconditionError("graph is disconnected")
    return {v: eccentricity(g, v) for v in g.vertices}


def diameter(g: Graph) -> int:
    return max(eccentricities(g).values())


def radius(g: Graph) -> int:
    return min(eccentricities(g).values())


def center(g: Graph) -> frozenset:
    ecc = eccentricities(g)
    r = min(ecc.values())
    return frozenset(v for v, e in ecc.items() if e == r)


def bridges(g: Graph) -> list[tuple]:
    """All bridges, found with an iterative low-link DFS."""
    index = g.index
    disc = [-1] * len(g.vertices)
    low = [0] * len(g.vertices)
    found = []
    timer = 0
    for root in range(len(g.vertices)):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # (vertex, parent, neighbour iterator)
        stack = [(root, -1, iter(g.adjacency[g.vertices[root]]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w_name in it:
                w = index[w_name]
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(g.adjacency[w_name])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    a, b = g.vertices[parent], g.vertices[v]
                    found.append((a, b) if parent < v else (b, a))
    return sorted(found, key=lambda e: (index[e[0]], index[e[1]]))


def is_bridgeless(g: Graph) -> bool:
    return not bridges(g)


@dataclass(frozen=True)
class Diam5Profile:
    """Labelling of a diameter-5 tree around its central edge ``c1 c2``.

    ``branches[k]`` are the neighbours of centre k other than the opposite
    centre, ``deep[b]`` the neighbours of branch ``b`` other than its centre,
    ``nl[k]`` the non-leaf branches of side k and ``m[k]`` the smallest
    multiplicity over ``nl[k]`` (``None`` when no multiplicities were given).
    """

    c1: str
    c2: str
    branches: Mapping[int, tuple[str, ...]]
    deep: Mapping[str, tuple[str, ...]]
    nl: Mapping[int, tuple[str, ...]]
    m: Mapping[int, int | None]

    def centre(self, k: int) -> str:
        return self.c1 if k == 1 else self.c2

    def side(self, v: str) -> int:
        """Side (1 or 2) a vertex hangs off; the centres belong to their own side."""
        if v == self.c1:
            return 1
        if v == self.c2:
            return 2
        for k in (1, 2):
            for b in self.branches[k]:
                if v == b or v in self.deep[b]:
                    return k
        raise KeyError(v)


def profile_diam5(t: ParentTree, s: Mapping[str, int] | None = None) -> Diam5Profile:
    d = diameter(t)
    if d != 5:
        raise PreconditionError(f"tree has diameter {d}, expected 5")
    c1, c2 = sorted(center(t))
    branches = {}
    deep = {}
    for k, (c, other) in enumerate(((c1, c2), (c2, c1)), start=1):
        branches[k] = tuple(b for b in t.adjacency[c] if b != other)
        for b in branches[k]:
            deep[b] = tuple(x for x in t.adjacency[b] if x != c)
    nl = {k: tuple(b for b in branches[k] if deep[b]) for k in (1, 2)}
    m = {k: (min(s[b] for b in nl[k]) if s is not None else None) for k in (1, 2)}
    return Diam5Profile(c1, c2, branches, deep, nl, m)


def a_set(t: ParentTree) -> frozenset:
    """Vertices with at least two distinct vertices at distance exactly 5."""
    out = set()
    for x in t.vertices:
        dist = bfs_distances(t, x)
        if sum(1 for d in dist.values() if d == 5) >= 2:
            out.add(x)
    return frozenset(out)


def check_multiplicities(g: Graph, s: Mapping, minimum: int = 1) -> dict:
    missing = [v for v in g.vertices if v not in s]
    if missing:
        raise InputError(f"missing multiplicity for {missing[0]!r}")
    for v in g.vertices:
        value = s[v]
        if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
            raise InputError(f"multiplicity of {v!r} must be an integer >= {minimum}, got {value!r}")
    return {v: s[v] for v in g.vertices}


def load_tree(text: str) -> tuple[ParentTree, dict[str, int]]:
    """Parse the tree JSON format; multiplicities default to 2."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("edges"), list):
        raise InputError("tree file must be an object with an 'edges' list")
    edges = []
    for e in data["edges"]:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise InputError(f"bad edge entry {e!r}")
        edges.append((e[0], e[1]))
    tree = ParentTree(edges)
    given = data.get("multiplicities") or {}
    unknown = sorted(set(given) - set(tree.vertices))
    if unknown:
        raise InputError(f"multiplicity given for unknown vertex {unknown[0]!r}")
    s = {v: given.get(v, 2) for v in tree.vertices}
    return tree, check_multiplicities(tree, s)


def dump_tree(t: ParentTree, s: Mapping[str, int] | None = None, **extra) -> str:
    data = {"edges": [list(e) for e in t.edges]}
    if s is not None:
        data["multiplicities"] = {v: s[v] for v in t.vertices}
    data.update(extra)
    return json.dumps(data, indent=2, sort_keys=False) + "\n"
