"""Explicit diameter-5 orientations for the three C0 rows, the clone-copy lift
to larger multiplicities, and the certificate pipeline built from both."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .classifier import ROW1, ROW2, ROW3_C0, Classification, classify
from .errors import PreconditionError, VerificationError
from .graph import INF, Diam5Profile, ParentTree, check_multiplicities
from .multiplication import CloneVertex, MultiGraph, multiply
from .orientation import Orientation, digraph_diameter, max_shortest_cycle

# Arc rules, one row per arc: (tail role, tail clone, head role, head clone).
# Roles: v1/v2 are the centres, bK a branch of centre K, dK a deep vertex of
# that branch. Rules are instantiated for every branch and every deep vertex;
# a rule naming a clone index beyond the multiplicity used in H is skipped.
CENTRE_THREE_RULES = (
    ("b1", 2, "d1", 1), ("b1", 2, "d1", 2), ("d1", 1, "b1", 1), ("d1", 2, "b1", 1),
    ("v1", 2, "b1", 1), ("b1", 1, "v1", 1), ("b1", 1, "v1", 3),
    ("v1", 1, "b1", 2), ("v1", 2, "b1", 2), ("b1", 2, "v1", 3),
    ("b2", 2, "d2", 1), ("b2", 2, "d2", 2), ("d2", 1, "b2", 1), ("d2", 2, "b2", 1),
    ("b2", 2, "v2", 1), ("v2", 1, "b2", 1), ("b2", 1, "v2", 2), ("v2", 2, "b2", 2),
    ("v1", 1, "v2", 1), ("v1", 3, "v2", 1), ("v2", 1, "v1", 2),
    ("v1", 3, "v2", 2), ("v2", 2, "v1", 1), ("v2", 2, "v1", 2),
)

SINGLE_NONLEAF_RULES = (
    ("d1", 1, "b1", 1), ("b1", 1, "d1", 2), ("d1", 2, "b1", 2), ("b1", 2, "d1", 1),
    ("b1", 1, "v1", 1), ("b1", 2, "v1", 1), ("v1", 2, "b1", 1), ("v1", 2, "b1", 2),
    ("v1", 1, "v2", 1), ("v1", 1, "v2", 2), ("v2", 1, "v1", 2), ("v2", 2, "v1", 2),
    ("b2", 2, "d2", 1), ("b2", 2, "d2", 2), ("d2", 1, "b2", 1), ("d2", 2, "b2", 1),
    ("b2", 1, "v2", 1), ("v2", 1, "b2", 2), ("b2", 2, "v2", 2), ("v2", 2, "b2", 1),
)


def _quad_side(k: int) -> tuple:
    v, b, d = f"v{k}", f"b{k}", f"d{k}"
    return (
        (b, 3, d, 1), (b, 3, d, 2), (b, 4, d, 1), (b, 4, d, 2),
        (d, 1, b, 1), (d, 1, b, 2), (d, 2, b, 1), (d, 2, b, 2),
        (v, 2, b, 1), (v, 2, b, 3), (b, 1, v, 1), (b, 3, v, 1),
        (v, 1, b, 2), (v, 1, b, 4), (b, 2, v, 2), (b, 4, v, 2),
    )


BRANCH_FOUR_RULES = _quad_side(1) + _quad_side(2) + (
    ("v1", 1, "v2", 1), ("v2", 1, "v1", 2), ("v1", 2, "v2", 2), ("v2", 2, "v1", 1),
)


@dataclass(frozen=True)
class SchemeResult:
    scheme: str
    orientation: Orientation
    h_multiplicities: dict[str, int]
    diameter: int
    max_cycle: int
    role_swap: bool


def _instantiate(h: MultiGraph, prof: Diam5Profile, role1_side: int, rules) -> list[tuple]:
    side_of_role = {"1": role1_side, "2": 3 - role1_side}

    def clone(v: str, x: int):
        return CloneVertex(v, x) if x <= h.s[v] else None

    arcs = []
    for ra, ia, rb, ib in rules:
        kinds = ra[0] + rb[0]
        k = side_of_role[ra[1]]
        if kinds in ("vv",):
            bindings = [{ra: prof.centre(k), rb: prof.centre(side_of_role[rb[1]])}]
        elif set(kinds) == {"v", "b"}:
            bindings = [{f"v{ra[1]}": prof.centre(k), f"b{ra[1]}": b} for b in prof.branches[k]]
        else:
            bindings = [
                {f"b{ra[1]}": b, f"d{ra[1]}": d}
                for b in prof.branches[k]
                for d in prof.deep[b]
            ]
        for bind in bindings:
            tail, head = clone(bind[ra], ia), clone(bind[rb], ib)
            if tail is not None and head is not None:
                arcs.append((tail, head))
    return arcs


def _build(name: str, t: ParentTree, prof: Diam5Profile, h_s: dict, role1_side: int, rules) -> SchemeResult:
    h = multiply(t, h_s)
    d = Orientation.from_arcs(h, _instantiate(h, prof, role1_side, rules))
    rep = digraph_diameter(d)
    cyc = max_shortest_cycle(d)
    if rep.diameter != 5 or cyc > 4:
        raise VerificationError(
            f"{name}: constructed orientation has diameter {rep.diameter} "
            f"(pair {rep.witness_pair}) and longest shortest-cycle {cyc}; expected 5 and <= 4"
        )
    return SchemeResult(name, d, h_s, rep.diameter, cyc, role1_side == 2)


def orient_centre_three(t: ParentTree, prof: Diam5Profile, s: Mapping[str, int]) -> SchemeResult:
    """Scheme for a centre of multiplicity >= 3 (that centre gets 3 clones in H)."""
    if s[prof.c1] >= 3:
        side = 1
    elif s[prof.c2] >= 3:
        side = 2
    else:
        raise PreconditionError("needs a centre with multiplicity >= 3")
    h_s = {v: 2 for v in t.vertices}
    h_s[prof.centre(side)] = 3
    return _build("centre-three", t, prof, h_s, side, CENTRE_THREE_RULES)


def orient_single_nonleaf(t: ParentTree, prof: Diam5Profile) -> SchemeResult:
    """Scheme for a side with exactly one non-leaf branch; everything doubled."""
    if len(prof.nl[1]) == 1:
        side = 1
    elif len(prof.nl[2]) == 1:
        side = 2
    else:
        raise PreconditionError("both sides have at least two non-leaf branches")
    h_s = {v: 2 for v in t.vertices}
    return _build("single-nonleaf", t, prof, h_s, side, SINGLE_NONLEAF_RULES)


def orient_branch_four(t: ParentTree, prof: Diam5Profile, s: Mapping[str, int]) -> SchemeResult:
    """Scheme for every non-leaf branch of multiplicity >= 4 (4 clones in H)."""
    if min(s[b] for k in (1, 2) for b in prof.nl[k]) < 4:
        raise PreconditionError("needs every non-leaf branch multiplicity >= 4")
    h_s = {v: 2 for v in t.vertices}
    for k in (1, 2):
        for b in prof.nl[k]:
            h_s[b] = 4
    return _build("branch-four", t, prof, h_s, 1, BRANCH_FOUR_RULES)


def representative(x: int, mu: int) -> int:
    return (x - 1) % mu + 1


def lift(f: Orientation, lam: Mapping[str, int]) -> Orientation:
    """Extend ``f`` to larger multiplicities by copying clone arc patterns.

    Clone ``(x, v)`` with ``x > mu[v]`` behaves exactly like clone
    ``representative(x, mu[v])``. The diameter of the result is re-checked
    against ``max(longest shortest cycle of f, diameter of f)``.
    """
    g = f.base
    if not isinstance(g, MultiGraph):
        raise PreconditionError("lift needs an orientation of a vertex-multiplication")
    mu = g.s
    lam = check_multiplicities(g.parent, lam)
    short = [v for v in g.parent.vertices if lam[v] < mu[v]]
    if short:
        raise PreconditionError(f"target multiplicity of {short[0]!r} is below the source's")
    rep = digraph_diameter(f)
    if not rep.strong:
        raise PreconditionError("lift needs a strong orientation")
    if lam == mu:
        return f
    m = max_shortest_cycle(f)
    big = multiply(g.parent, lam)
    bits = 0
    for i, (u, v) in enumerate(big.edges):
        ru = CloneVertex(u.parent, representative(u.index, mu[u.parent]))
        rv = CloneVertex(v.parent, representative(v.index, mu[v.parent]))
        if f.has_arc(ru, rv):
            bits |= 1 << i
    out = Orientation(big, bits)
    bound = max(m, rep.diameter)
    got = digraph_diameter(out)
    if got.diameter > bound:
        raise VerificationError(
            f"lift defect: diameter {got.diameter} exceeds bound {bound} "
            f"(source diameter {rep.diameter}, cycle bound {m}, pair {got.witness_pair})"
        )
    return out


@dataclass(frozen=True)
class Certificate:
    orientation: Orientation
    classification: Classification
    scheme: SchemeResult
    diameter: int
    representatives: dict = field(default_factory=dict)

    def report(self) -> dict:
        return {
            "class": self.classification.klass,
            "rule": self.classification.rule,
            "scheme": self.scheme.scheme,
            "role_swap": self.scheme.role_swap,
            "h_multiplicities": self.scheme.h_multiplicities,
            "h_diameter": self.scheme.diameter,
            "cycle_cover_max": self.scheme.max_cycle,
            "diameter": self.diameter,
            "lift_representatives": self.representatives,
        }


def certify_c0(t: ParentTree, s: Mapping[str, int]) -> Certificate:
    c = classify(t, s)
    if c.klass != "C0":
        raise PreconditionError(f"instance is {c.klass} ({c.rule}); no diameter-5 orientation exists")
    prof = c.profile
    if c.rule == ROW1:
        scheme = orient_centre_three(t, prof, s)
    elif c.rule == ROW2:
        scheme = orient_branch_four(t, prof, s)
    else:
        assert c.rule == ROW3_C0
        scheme = orient_single_nonleaf(t, prof)
    d = lift(scheme.orientation, s)
    got = digraph_diameter(d).diameter
    if got != 5:
        raise VerificationError(f"certificate for {c.rule} has diameter {got}, expected 5")
    mu = scheme.h_multiplicities
    reps = {
        v: [representative(x, mu[v]) for x in range(1, s[v] + 1)]
        for v in t.vertices
        if s[v] > mu[v]
    }
    return Certificate(d, c, scheme, got, reps)


def _reach_deficit(out: list[int], full: int, depth: int) -> int:
    """Number of ordered pairs (a, b) with b not reachable from a within ``depth`` arcs."""
    total = 0
    for s in range(len(out)):
        seen = frontier = 1 << s
        for _ in range(depth):
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= out[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            if not frontier:
                break
            seen |= frontier
        total += (full & ~seen).bit_count()
    return total


DEFAULT_SEARCH_BUDGET = 200_000


def search_c1_witness(
    t: ParentTree,
    s: Mapping[str, int],
    budget: int = DEFAULT_SEARCH_BUDGET,
    seed: int = 0,
    target: int = 6,
) -> Orientation | None:
    """Randomised first-improvement arc flipping towards diameter <= ``target``.

    ``budget`` caps the number of candidate flips evaluated over all restarts;
    restart ``r`` draws from ``random.Random(seed + r)``. Returns ``None`` when
    the budget runs out first.
    """
    c = classify(t, s)
    if c.klass != "C1":
        raise PreconditionError("instance is C0; use certify_c0 for a diameter-5 orientation")
    g = multiply(t, s)
    n, ne = len(g.vertices), len(g.edges)
    ends = [(g.index[u], g.index[v]) for u, v in g.edges]
    full = (1 << n) - 1
    used = 0
    restart = 0
    while used < budget:
        rng = random.Random(seed + restart)
        bits = rng.getrandbits(ne)
        out = [0] * n
        for i, (a, b) in enumerate(ends):
            if (bits >> i) & 1:
                out[a] |= 1 << b
            else:
                out[b] |= 1 << a
        score = _reach_deficit(out, full, target)
        while score and used < budget:
            order = list(range(ne))
            rng.shuffle(order)
            improved = False
            for i in order:
                if used >= budget:
                    break
                used += 1
                a, b = ends[i]
                out[a] ^= 1 << b
                out[b] ^= 1 << a
                sc = _reach_deficit(out, full, target)
                if sc < score:
                    score = sc
                    bits ^= 1 << i
                    improved = True
                else:
                    out[a] ^= 1 << b
                    out[b] ^= 1 << a
            if not improved:
                break
        if score == 0:
            d = Orientation(g, bits)
            got = digraph_diameter(d).diameter
            if got > target:
                raise VerificationError(f"search returned diameter {got} > {target}")
            return d
        restart += 1
    return None
