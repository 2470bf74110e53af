"""Tree generators for the ``gen`` command and the test suites."""

from __future__ import annotations

import heapq
import itertools
import random

from .errors import InputError, PreconditionError
from .graph import ParentTree, center, diameter


def path(n: int) -> ParentTree:
    if n < 2:
        raise InputError("a path needs at least 2 vertices")
    width = len(str(n))
    names = [f"p{i:0{width}d}" for i in range(1, n + 1)]
    return ParentTree(list(zip(names, names[1:])))


def double_spider(a: int, b: int, c: int, d: int) -> ParentTree:
    """Two adjacent centres ``c1``/``c2``; centre 1 carries ``a`` branches with
    ``b`` leaves each, centre 2 carries ``c`` branches with ``d`` leaves each."""
    if min(a, b, c, d) < 1:
        raise InputError("doublespider needs every count >= 1")
    edges = [("c1", "c2")]
    for centre, nb, nl in (("c1", a, b), ("c2", c, d)):
        for i in range(1, nb + 1):
            br = f"{centre}b{i}"
            edges.append((centre, br))
            edges.extend((br, f"{br}l{j}") for j in range(1, nl + 1))
    return ParentTree(edges)


def prufer_tree(seq: list[int], n: int, names=None) -> ParentTree:
    names = names or [f"t{i}" for i in range(n)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((names[leaf], names[x]))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((names[u], names[v]))
    return ParentTree(edges)


MAX_REJECTIONS = 100_000


def random_d5(n: int, seed: int) -> ParentTree:
    """Uniform random labelled tree on ``n`` vertices, resampled until its
    diameter is exactly 5."""
    if n < 6:
        raise PreconditionError(f"no diameter-5 tree has {n} vertices")
    rng = random.Random(seed)
    for _ in range(MAX_REJECTIONS):
        t = prufer_tree([rng.randrange(n) for _ in range(n - 2)], n)
        if diameter(t) == 5:
            return t
    raise PreconditionError(f"no diameter-5 tree on {n} vertices after {MAX_REJECTIONS} draws")


def _encode(t: ParentTree, root: str) -> str:
    def enc(v, parent):
        return "(" + "".join(sorted(enc(w, v) for w in t.adjacency[v] if w != parent)) + ")"

    return enc(root, None)


def canonical_form(t: ParentTree) -> str:
    # root at the centre; for two centres take the smaller encoding
    return min(_encode(t, c) for c in center(t))


def nonisomorphic_trees(n: int) -> list[ParentTree]:
    """One representative per isomorphism class, found through all Prufer codes."""
    if n == 2:
        return [ParentTree([("t0", "t1")])]
    reps: dict[str, ParentTree] = {}
    for seq in itertools.product(range(n), repeat=n - 2):
        t = prufer_tree(list(seq), n)
        reps.setdefault(canonical_form(t), t)
    return [reps[k] for k in sorted(reps)]


def diameter5_trees(max_order: int) -> list[ParentTree]:
    return [t for n in range(6, max_order + 1) for t in nonisomorphic_trees(n) if diameter(t) == 5]
