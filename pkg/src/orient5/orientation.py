"""Orientations as edge-id bitvectors, plus the directed-distance queries the
rest of the package needs.

Bit ``i`` of an orientation refers to edge ``g.edges[i] == (u, v)`` with
``u < v``: a set bit means the arc ``u -> v``, a clear bit means ``v -> u``.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import InputError, PreconditionError
from .graph import INF, Graph, profile_diam5
from .multiplication import CloneVertex, MultiGraph


def graph_fingerprint(g: Graph) -> str:
    payload = json.dumps([[str(v) for v in g.vertices], [[str(u), str(v)] for u, v in g.edges]])
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


class Orientation:
    def __init__(self, base: Graph, bits: int):
        if not 0 <= bits < (1 << len(base.edges)):
            raise ValueError(f"bitvector out of range for {len(base.edges)} edges")
        self.base = base
        self.bits = bits

    @classmethod
    def from_arcs(cls, base: Graph, arcs: Iterable[tuple]) -> "Orientation":
        """Build from (tail, head) pairs; every edge must be given exactly once."""
        index = base.index
        ids = getattr(base, "_edge_ids", None) or {e: i for i, e in enumerate(base.edges)}
        assigned: dict[int, int] = {}
        for tail, head in arcs:
            forward = index[tail] < index[head]
            key = (tail, head) if forward else (head, tail)
            if key not in ids:
                raise InputError(f"{tail} -> {head} is not an edge of the base graph")
            i = ids[key]
            if i in assigned:
                raise InputError(f"edge {key[0]} - {key[1]} oriented twice")
            assigned[i] = int(forward)
        if len(assigned) != len(base.edges):
            missing = next(e for i, e in enumerate(base.edges) if i not in assigned)
            raise InputError(f"edge {missing[0]} - {missing[1]} left unoriented")
        return cls(base, sum(b << i for i, b in assigned.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Orientation):
            return NotImplemented
        return self.bits == other.bits and self.base == other.base

    def __hash__(self) -> int:
        return hash((self.base, self.bits))

    def __repr__(self) -> str:
        return f"Orientation({self.base!r}, bits=0x{self.bits:x})"

    def arcs(self) -> list[tuple]:
        out = []
        for i, (u, v) in enumerate(self.base.edges):
            out.append((u, v) if (self.bits >> i) & 1 else (v, u))
        return out

    def has_arc(self, tail, head) -> bool:
        index = self.base.index
        if index[tail] < index[head]:
            i = self._edge_index(tail, head)
            return bool((self.bits >> i) & 1)
        i = self._edge_index(head, tail)
        return not (self.bits >> i) & 1

    def _edge_index(self, u, v) -> int:
        ids = getattr(self.base, "_edge_ids", None)
        if ids is None:
            ids = self.__dict__.setdefault("_ids", {e: i for i, e in enumerate(self.base.edges)})
        try:
            return ids[(u, v)]
        except KeyError:
            raise KeyError(f"{u} - {v} is not an edge") from None

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        index = self.base.index
        out = [0] * len(self.base.vertices)
        bits = self.bits
        for i, (u, v) in enumerate(self.base.edges):
            a, b = index[u], index[v]
            if (bits >> i) & 1:
                out[a] |= 1 << b
            else:
                out[b] |= 1 << a
        return tuple(out)

    def out_neighbors(self, v) -> list:
        return _members(self.base, self.out_masks[self.base.index[v]])

    def in_neighbors(self, v) -> list:
        i = self.base.index[v]
        return [w for w in self.base.adjacency[v] if not (self.out_masks[i] >> self.base.index[w]) & 1]

    def distances_from(self, v) -> dict:
        levels = _bfs_levels(self.out_masks, self.base.index[v])
        return {w: levels[i] for i, w in enumerate(self.base.vertices)}

    def to_hex(self) -> str:
        width = max(1, (len(self.base.edges) + 3) // 4)
        return f"{self.bits:0{width}x}"

    @classmethod
    def from_hex(cls, base: Graph, text: str) -> "Orientation":
        return cls(base, int(text, 16))


def _members(g: Graph, mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(g.vertices[low.bit_length() - 1])
        mask ^= low
    return out


def _bfs_levels(out: tuple[int, ...] | list[int], source: int) -> list:
    levels: list = [INF] * len(out)
    levels[source] = 0
    seen = frontier = 1 << source
    d = 0
    while frontier:
        d += 1
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= out[low.bit_length() - 1]
            f ^= low
        nxt &= ~seen
        seen |= nxt
        frontier = nxt
        f = nxt
        while f:
            low = f & -f
            levels[low.bit_length() - 1] = d
            f ^= low
    return levels


@dataclass(frozen=True)
class DistanceReport:
    diameter: float  # int, or INF when not strong
    witness_pair: tuple
    strong: bool


def digraph_diameter(d: Orientation) -> DistanceReport:
    verts = d.base.vertices
    best = -1
    pair = None
    for s in range(len(verts)):
        levels = _bfs_levels(d.out_masks, s)
        for t, lv in enumerate(levels):
            if lv > best:
                best, pair = lv, (verts[s], verts[t])
                if lv == INF:
                    return DistanceReport(INF, pair, False)
    return DistanceReport(best, pair, True)


def directed_diameter(d: Orientation) -> float:
    return digraph_diameter(d).diameter


def is_strong(d: Orientation) -> bool:
    return digraph_diameter(d).strong


def reverse(d: Orientation) -> Orientation:
    return Orientation(d.base, d.bits ^ ((1 << len(d.base.edges)) - 1))


def shortest_cycle_through(d: Orientation, v) -> float:
    i = d.base.index[v]
    out = d.out_masks
    best = INF
    levels = None
    # shortest cycle = 1 + min over out-neighbours w of dist(w, v)
    for w in _members(d.base, out[i]):
        if levels is None:
            levels = _reverse_levels(out, i)
        lv = levels[d.base.index[w]]
        if lv + 1 < best:
            best = lv + 1
    return best


def _reverse_levels(out, target: int) -> list:
    # distances *to* target: BFS on the transposed adjacency
    n = len(out)
    inn = [0] * n
    for a in range(n):
        m = out[a]
        while m:
            low = m & -m
            inn[low.bit_length() - 1] |= 1 << a
            m ^= low
    return _bfs_levels(inn, target)


def max_shortest_cycle(d: Orientation) -> float:
    return max(shortest_cycle_through(d, v) for v in d.base.vertices)


def _check_toward(d: Orientation, x: CloneVertex, q: str) -> MultiGraph:
    g = d.base
    if not isinstance(g, MultiGraph):
        raise PreconditionError("directional sets need a vertex-multiplication base")
    if q not in g.parent.adjacency.get(x.parent, ()):
        raise PreconditionError(f"{q!r} is not adjacent to {x.parent!r} in the parent graph")
    return g


def out_set_toward(d: Orientation, x: CloneVertex, q: str) -> frozenset:
    """Clones of parent vertex ``q`` that ``x`` points to."""
    g = _check_toward(d, x, q)
    return frozenset(c for c in g.clones(q) if d.has_arc(x, c))


def in_set_toward(d: Orientation, x: CloneVertex, q: str) -> frozenset:
    """Clones of parent vertex ``q`` that point to ``x``."""
    g = _check_toward(d, x, q)
    return frozenset(c for c in g.clones(q) if d.has_arc(c, x))


@dataclass(frozen=True)
class SplitViolation:
    clone: CloneVertex
    centre: str
    empty: str  # "out" or "in"


def branch_split_profile(g: Graph):
    if not isinstance(g, MultiGraph):
        raise PreconditionError("base is not a vertex-multiplication")
    try:
        prof = profile_diam5(g.parent)
    except (PreconditionError, ValueError) as exc:
        raise PreconditionError(f"parent is not a diameter-5 tree: {exc}") from None
    if len(g.parent.edges) != len(g.parent.vertices) - 1:
        raise PreconditionError("parent is not a tree")
    if g.s[prof.c1] != 2 or g.s[prof.c2] != 2:
        raise PreconditionError("both centre multiplicities must be 2")
    return prof


def check_branch_splits(d: Orientation) -> list[SplitViolation]:
    """Every branch clone must send at least one arc to, and receive at least
    one arc from, the clones of its own centre."""
    g = d.base
    prof = branch_split_profile(g)
    violations = []
    for k in (1, 2):
        c = prof.centre(k)
        for b in prof.branches[k]:
            for x in g.clones(b):
                if not out_set_toward(d, x, c):
                    violations.append(SplitViolation(x, c, "out"))
                if not in_set_toward(d, x, c):
                    violations.append(SplitViolation(x, c, "in"))
    return violations


def orientation_to_dot(d: Orientation, name: str = "D") -> str:
    lines = [f"digraph {name} {{"]
    for v in d.base.vertices:
        lines.append(f'  "{v}";')
    for tail, head in d.arcs():
        lines.append(f'  "{tail}" -> "{head}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


_ARC_RE = re.compile(r'^\s*"([^"]+)"\s*->\s*"([^"]+)"\s*;?\s*$')
_NODE_RE = re.compile(r'^\s*"([^"]+)"\s*;?\s*$')


def parse_dot(text: str) -> Orientation:
    """Read back a DOT file written by :func:`orientation_to_dot`.

    The base graph is rebuilt from the arcs, with vertex names kept as plain
    strings (clone vertices appear as ``name#x``).
    """
    vertices = []
    arcs = []
    for line in text.splitlines():
        if m := _ARC_RE.match(line):
            arcs.append((m.group(1), m.group(2)))
        elif m := _NODE_RE.match(line):
            vertices.append(m.group(1))
    if not vertices and not arcs:
        raise InputError("no vertices or arcs found in DOT text")
    vertices = [_clone_or_name(v) for v in vertices]
    arcs = [(_clone_or_name(a), _clone_or_name(b)) for a, b in arcs]
    base = Graph(vertices + [x for a in arcs for x in a], arcs)
    return Orientation.from_arcs(base, arcs)


def _clone_or_name(label: str):
    name, sep, idx = label.rpartition("#")
    if sep and idx.isdigit():
        return CloneVertex(name, int(idx))
    return label

