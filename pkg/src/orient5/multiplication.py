"""Vertex-multiplication graphs: every parent vertex v becomes an independent
set of ``s[v]`` clones, and clones of adjacent parents are completely joined."""

from __future__ import annotations

from typing import Mapping, NamedTuple

from .graph import Graph, check_multiplicities


class CloneVertex(NamedTuple):
    parent: str
    index: int  # 1-based

    def __str__(self) -> str:
        return f"{self.parent}#{self.index}"


class MultiGraph(Graph):
    def __init__(self, parent: Graph, s: Mapping[str, int]):
        s = check_multiplicities(parent, s)
        vertices = [CloneVertex(v, x) for v in parent.vertices for x in range(1, s[v] + 1)]
        edges = [
            (CloneVertex(a, x), CloneVertex(b, y))
            for a, b in parent.edges
            for x in range(1, s[a] + 1)
            for y in range(1, s[b] + 1)
        ]
        super().__init__(vertices, edges)
        self.parent = parent
        self.s = s
        self._edge_ids = {e: i for i, e in enumerate(self.edges)}

    def __repr__(self) -> str:
        return f"MultiGraph({len(self.parent.vertices)} parents, |V|={len(self.vertices)}, |E|={len(self.edges)})"

    def clones(self, v: str) -> tuple[CloneVertex, ...]:
        return tuple(CloneVertex(v, x) for x in range(1, self.s[v] + 1))

    def edge_id(self, u: CloneVertex, v: CloneVertex) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._edge_ids[key]
        except KeyError:
            raise KeyError(f"{u} - {v} is not an edge") from None

    def edge(self, i: int) -> tuple[CloneVertex, CloneVertex]:
        return self.edges[i]


def multiply(parent: Graph, s: Mapping[str, int]) -> MultiGraph:
    return MultiGraph(parent, s)


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for u, v in g.edges:
        lines.append(f'  "{u}" -- "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
