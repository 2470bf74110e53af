"""Exact orientation numbers of small graphs by enumerating orientations.

The enumeration walks the vertices in a fixed order and, at each vertex,
chooses the direction of every edge to a later vertex at once (its "split").
Necessary conditions are expressed as edge groups around a pivot vertex that
must contain both an outgoing and an incoming arc:

* ``strong``: every vertex needs an in-arc and an out-arc;
* ``lemma22``: additionally, on a doubled-centre multiplication of a
  diameter-5 tree, every branch clone needs an in-arc and an out-arc towards
  the clones of its own centre (necessary for diameter 5).

A group is checked as soon as its last edge is assigned, so whole subtrees
are pruned. Candidates are scored with bitmask BFS that aborts as soon as a
source cannot reach everything within the current bound.
"""

from __future__ import annotations

import enum
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .errors import BudgetExhausted, PreconditionError
from .graph import INF, Graph, diameter, is_bridgeless, is_connected
from .multiplication import MultiGraph
from .orientation import Orientation, branch_split_profile, digraph_diameter, graph_fingerprint, reverse

log = logging.getLogger(__name__)


class Filter(str, enum.Enum):
    NONE = "none"
    STRONG = "strong"
    LEMMA22 = "lemma22"


DEFAULT_MAX_EDGES = {Filter.NONE: 24, Filter.STRONG: 48, Filter.LEMMA22: 48}
MIN_UNITS = 64


def default_threads() -> int:
    return int(os.environ.get("ORIENT5_THREADS", "1"))


@dataclass(frozen=True)
class SearchConfig:
    filter: Filter = Filter.STRONG
    target: int | None = None
    max_edges: int | None = None
    threads: int = field(default_factory=default_threads)
    report_every: int = 16  # work units between progress log lines
    checkpoint: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "filter", Filter(self.filter))
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @property
    def edge_cap(self) -> int:
        return self.max_edges if self.max_edges is not None else DEFAULT_MAX_EDGES[self.filter]


@dataclass
class OracleResult:
    d_bar: float
    witness: Orientation | None
    explored: int
    filtered_space: int | None

    def to_json(self) -> dict:
        return {
            "d_bar": "inf" if self.d_bar == INF else self.d_bar,
            "witness": self.witness.to_hex() if self.witness is not None else None,
            "explored": self.explored,
            "filtered_space": self.filtered_space,
        }


# ---------------------------------------------------------------- planning


@dataclass
class _Plan:
    n: int
    full: int
    # per step: list of (split bits, ((vertex, out-mask delta), ...))
    splits: list
    # per step: groups (edge mask, pivot sign mask) whose last edge is assigned here
    checks: list


def _groups(g: Graph, flt: Filter) -> list[tuple[int, int]]:
    index = g.index
    incident = [[] for _ in g.vertices]
    for i, (u, v) in enumerate(g.edges):
        incident[index[u]].append((i, True))
        incident[index[v]].append((i, False))
    groups = []
    if flt in (Filter.STRONG, Filter.LEMMA22):
        for inc in incident:
            mask = sign = 0
            for i, is_tail in inc:
                mask |= 1 << i
                if is_tail:
                    sign |= 1 << i
            groups.append((mask, sign))
    if flt is Filter.LEMMA22:
        prof = branch_split_profile(g)
        if not prof.nl[1] or not prof.nl[2]:
            raise PreconditionError("branch-split filter needs a non-leaf branch on both sides")
        for k in (1, 2):
            centre = prof.centre(k)
            for b in prof.branches[k]:
                for x in g.clones(b):
                    mask = sign = 0
                    for c in g.clones(centre):
                        i = g.edge_id(x, c)
                        mask |= 1 << i
                        if x < c:
                            sign |= 1 << i
                    groups.append((mask, sign))
    return groups


def _plan(g: Graph, flt: Filter) -> _Plan:
    n = len(g.vertices)
    index = g.index
    ends = [(index[u], index[v]) for u, v in g.edges]
    deg = [0] * n
    for a, b in ends:
        deg[a] += 1
        deg[b] += 1
    order = sorted(range(n), key=lambda v: (deg[v], v))
    pos = [0] * n
    for k, v in enumerate(order):
        pos[v] = k
    step_of_edge = [min(pos[a], pos[b]) for a, b in ends]
    new_edges = [[] for _ in range(n)]
    for i, k in enumerate(step_of_edge):
        new_edges[k].append(i)

    checks = [[] for _ in range(n)]
    local = [[] for _ in range(n)]
    for mask, sign in _groups(g, flt):
        ids = [i for i in range(len(ends)) if (mask >> i) & 1]
        last = max(step_of_edge[i] for i in ids)
        if all(step_of_edge[i] == last for i in ids):
            local[last].append((mask, sign))
        else:
            checks[last].append((mask, sign))

    splits = []
    for k in range(n):
        opts = []
        for choice in range(1 << len(new_edges[k])):
            bits = 0
            delta: dict[int, int] = {}
            for j, i in enumerate(new_edges[k]):
                a, b = ends[i]
                if (choice >> j) & 1:
                    bits |= 1 << i
                    delta[a] = delta.get(a, 0) | (1 << b)
                else:
                    delta[b] = delta.get(b, 0) | (1 << a)
            if all((bits ^ sign) & mask not in (0, mask) for mask, sign in local[k]):
                opts.append((bits, tuple(delta.items())))
        splits.append(opts)
    return _Plan(n, (1 << n) - 1, splits, checks)


def _prefixes(plan: _Plan, depth: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Valid split-index prefixes of the given depth, in enumeration order."""
    splits, checks = plan.splits, plan.checks

    def rec(k, bits, idx):
        if k == depth:
            yield idx, bits
            return
        for j, (sb, _) in enumerate(splits[k]):
            b = bits | sb
            if any((b ^ sign) & mask in (0, mask) for mask, sign in checks[k]):
                continue
            yield from rec(k + 1, b, idx + (j,))

    yield from rec(0, 0, ())


def _unit_depth(plan: _Plan) -> int:
    depth = 0
    count = 1
    while depth < plan.n and count < MIN_UNITS:
        depth += 1
        count = sum(1 for _ in _prefixes(plan, depth))
    return depth


# ------------------------------------------------------------------ sweep

MODE_MIN, MODE_FIRST, MODE_ALL = "min", "first", "all"


def _sweep(plan: _Plan, prefix: tuple[int, ...], mode: str, bound: int) -> tuple:
    """Run one work unit.

    ``min``: returns (best diameter, best bits, explored) with the smallest
    (diameter, bits) pair among candidates of diameter <= bound.
    ``first``: returns (diameter, bits, explored) for the first candidate of
    diameter <= bound in enumeration order, or (None, None, explored).
    ``all``: returns (list of bits with diameter <= bound, explored).
    """
    n, full = plan.n, plan.full
    splits, checks = plan.splits, plan.checks
    out = [0] * n
    nsteps = n
    state = {"bound": bound, "best": None, "bits": None, "explored": 0, "done": False}
    found: list[int] = []
    killer = [0]

    def diameter_within(limit):
        worst = 0
        first = killer[0]
        for s in (first, *range(first), *range(first + 1, n)):
            seen = frontier = 1 << s
            d = 0
            while seen != full:
                if d == limit:
                    killer[0] = s
                    return -1
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= out[low.bit_length() - 1]
                    f ^= low
                frontier = nxt & ~seen
                if not frontier:
                    killer[0] = s
                    return -1
                seen |= frontier
                d += 1
            if d > worst:
                worst = d
        return worst

    def leaf(bits):
        state["explored"] += 1
        d = diameter_within(state["bound"])
        if d < 0:
            return
        if mode == MODE_MIN:
            if state["best"] is None or (d, bits) < (state["best"], state["bits"]):
                state["best"], state["bits"] = d, bits
                state["bound"] = d
        elif mode == MODE_FIRST:
            state["best"], state["bits"] = d, bits
            state["done"] = True
        else:
            found.append(bits)

    def rec(k, bits):
        if k == nsteps:
            leaf(bits)
            return
        chk = checks[k]
        for sb, delta in splits[k]:
            b = bits | sb
            if chk and any((b ^ sign) & mask in (0, mask) for mask, sign in chk):
                continue
            for v, m in delta:
                out[v] |= m
            rec(k + 1, b)
            for v, m in delta:
                out[v] ^= m
            if state["done"]:
                return

    bits = 0
    for k, j in enumerate(prefix):
        sb, delta = splits[k][j]
        bits |= sb
        for v, m in delta:
            out[v] |= m
    rec(len(prefix), bits)
    if mode == MODE_ALL:
        return found, state["explored"]
    return state["best"], state["bits"], state["explored"]


_WORKER_PLAN: _Plan | None = None


def _init_worker(plan: _Plan) -> None:
    global _WORKER_PLAN
    _WORKER_PLAN = plan


def _run_unit(args):
    prefix, mode, bound = args
    return _sweep(_WORKER_PLAN, prefix, mode, bound)


def _map_units(plan: _Plan, units: list, mode: str, bound: int, threads: int, done: dict | None = None,
               on_result=None, stop=None):
    """Evaluate units (possibly in worker processes), yielding (index, result) in unit order."""
    todo = [i for i in range(len(units)) if not done or i not in done]
    if threads <= 1:
        for i in todo:
            res = _sweep(plan, units[i], mode, bound)
            if on_result:
                on_result(i, res)
            yield i, res
            if stop and stop(res):
                return
        return
    with ProcessPoolExecutor(max_workers=threads, initializer=_init_worker, initargs=(plan,)) as pool:
        # submit in windows so a "first" search can stop early without waiting on the tail
        window = threads * 4
        pos = 0
        while pos < len(todo):
            batch = todo[pos:pos + window]
            pos += window
            futures = [pool.submit(_run_unit, (units[i], mode, bound)) for i in batch]
            for i, fut in zip(batch, futures):
                res = fut.result()
                if on_result:
                    on_result(i, res)
                yield i, res
                if stop and stop(res):
                    for f in futures:
                        f.cancel()
                    return


# ---------------------------------------------------------------- public API


def _validate(g: Graph, cfg: SearchConfig) -> None:
    if not is_connected(g):
        raise PreconditionError("graph is disconnected")
    if not is_bridgeless(g):
        raise PreconditionError("graph has a bridge, so it has no strong orientation")
    if len(g.edges) > cfg.edge_cap:
        raise BudgetExhausted(
            f"{len(g.edges)} edges exceeds the cap of {cfg.edge_cap} for filter '{cfg.filter.value}'"
        )


def _prepare(g: Graph, cfg: SearchConfig) -> tuple[_Plan, list]:
    _validate(g, cfg)
    plan = _plan(g, cfg.filter)
    depth = _unit_depth(plan)
    units = [idx for idx, _ in _prefixes(plan, depth)]
    return plan, units


def enumerate_filtered(g: Graph, cfg: SearchConfig | None = None) -> Iterator[Orientation]:
    """Every orientation passing the configured filter, in enumeration order."""
    cfg = cfg or SearchConfig()
    _validate(g, cfg)
    plan = _plan(g, cfg.filter)
    for _, bits in _prefixes(plan, plan.n):
        yield Orientation(g, bits)


def count_filtered(g: Graph, cfg: SearchConfig | None = None) -> int:
    return sum(1 for _ in enumerate_filtered(g, cfg))


def _load_checkpoint(cfg: SearchConfig, key: dict) -> dict:
    if not cfg.checkpoint or not Path(cfg.checkpoint).exists():
        return {}
    data = json.loads(Path(cfg.checkpoint).read_text())
    if data.get("key") != key:
        log.warning("checkpoint %s belongs to a different run; ignoring it", cfg.checkpoint)
        return {}
    return {int(i): tuple(r) for i, r in data["units"].items()}


def _save_checkpoint(cfg: SearchConfig, key: dict, done: dict) -> None:
    path = Path(cfg.checkpoint)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps({"key": key, "units": {str(i): list(r) for i, r in sorted(done.items())}}))
    os.replace(tmp, path)


def orientation_number(g: Graph, cfg: SearchConfig | None = None) -> OracleResult:
    """Minimum diameter over the filtered orientation space.

    The witness is the numerically smallest bitvector attaining it, whatever
    the worker count. With ``cfg.target`` set, only diameters <= target are
    looked for (the result is INF when there are none).
    """
    cfg = cfg or SearchConfig()
    plan, units = _prepare(g, cfg)
    bound = cfg.target if cfg.target is not None else plan.n - 1
    key = {"graph": graph_fingerprint(g), "filter": cfg.filter.value, "mode": MODE_MIN, "bound": bound,
           "units": len(units)}
    done = _load_checkpoint(cfg, key)

    def record(i, res):
        done[i] = res
        if cfg.checkpoint:
            _save_checkpoint(cfg, key, done)
        if cfg.report_every and len(done) % cfg.report_every == 0:
            log.info("oracle: %d/%d units done", len(done), len(units))

    for _ in _map_units(plan, units, MODE_MIN, bound, cfg.threads, done, record):
        pass
    best = None
    explored = 0
    for d, bits, n_explored in done.values():
        explored += n_explored
        if d is not None and (best is None or (d, bits) < best):
            best = (d, bits)
    if best is None:
        return OracleResult(INF, None, explored, explored)
    witness = Orientation(g, best[1])
    _assert_consistent(witness, best[0])
    return OracleResult(best[0], witness, explored, explored)


def exists_diameter_at_most(g: Graph, t: int, cfg: SearchConfig | None = None) -> tuple[bool, Orientation | None, int]:
    """Decide whether some filtered orientation has diameter <= t.

    Returns ``(found, witness, explored)``; the witness is the first one in
    enumeration order, so it does not depend on the worker count.
    """
    cfg = cfg or SearchConfig()
    plan, units = _prepare(g, cfg)
    explored = 0
    for _, (d, bits, n_explored) in _map_units(plan, units, MODE_FIRST, t, cfg.threads,
                                                stop=lambda res: res[0] is not None):
        explored += n_explored
        if d is not None:
            witness = Orientation(g, bits)
            _assert_consistent(witness, d)
            return True, witness, explored
    return False, None, explored


def orientations_at_most(g: Graph, t: int, cfg: SearchConfig | None = None) -> tuple[list[int], int]:
    """All filtered orientations (as bitvectors) with diameter <= t, plus the space size."""
    cfg = cfg or SearchConfig()
    plan, units = _prepare(g, cfg)
    found: list[int] = []
    explored = 0
    for _, (bits, n_explored) in _map_units(plan, units, MODE_ALL, t, cfg.threads):
        found.extend(bits)
        explored += n_explored
    return sorted(found), explored


def _assert_consistent(witness: Orientation, d: int) -> None:
    rep = digraph_diameter(witness)
    back = digraph_diameter(reverse(witness))
    if rep.diameter != d or back.diameter != d:
        raise AssertionError(f"witness re-check failed: {rep.diameter}, reversed {back.diameter}, expected {d}")


def sandwich_bounds(g: Graph) -> tuple[int, int] | None:
    """(d(parent), d(parent) + 2) for multiplications the two-sided bound covers."""
    if not isinstance(g, MultiGraph):
        return None
    if len(g.parent.vertices) < 3 or min(g.s.values()) < 2:
        return None
    d = diameter(g.parent)
    return d, d + 2
