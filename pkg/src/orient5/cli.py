"""``orient5`` command line: gen, classify, certify, oracle, dual, lift."""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .classifier import classify, verdict
from .constructions import DEFAULT_SEARCH_BUDGET, certify_c0, lift, search_c1_witness
from .errors import BudgetExhausted, InputError, Orient5Error
from .generators import double_spider, path, random_d5
from .graph import INF, check_multiplicities, dump_tree, load_tree
from .multiplication import MultiGraph, multiply
from .oracle import SearchConfig, default_threads, exists_diameter_at_most, orientation_number, sandwich_bounds
from .orientation import Orientation, digraph_diameter, graph_fingerprint, orientation_to_dot, reverse


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None


def _hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def manifest(command: str, text: str | None, seed, config: dict, outcome: dict) -> dict:
    return {
        "command": command,
        "input_hash": _hash(text) if text is not None else None,
        "seed": seed,
        "config": config,
        "tool_version": __version__,
        "outcome": outcome,
    }


def _emit(payload: dict, out: str | None = None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def dump_orientation(d: Orientation, **extra) -> dict:
    g = d.base
    if not isinstance(g, MultiGraph):
        raise InputError("only orientations of vertex-multiplications can be saved")
    data = {
        "edges": [list(e) for e in g.parent.edges],
        "multiplicities": dict(g.s),
        "base_hash": graph_fingerprint(g),
        "bits": d.to_hex(),
    }
    data.update(extra)
    return data


def load_orientation(text: str) -> Orientation:
    t, s = load_tree(text)
    data = json.loads(text)
    g = multiply(t, s)
    if data.get("base_hash") != graph_fingerprint(g):
        raise InputError("base_hash does not match the edges and multiplicities in the file")
    try:
        return Orientation.from_hex(g, data["bits"])
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad orientation bits: {exc}") from None


# ----------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    if args.shape == "path":
        if len(args.params) != 1:
            raise InputError("usage: gen path N")
        t = path(int(args.params[0]))
        seed = None
    elif args.shape == "doublespider":
        if len(args.params) != 4:
            raise InputError("usage: gen doublespider A B C D")
        t = double_spider(*map(int, args.params))
        seed = None
    else:
        if len(args.params) != 2:
            raise InputError("usage: gen random-d5 N SEED")
        n, seed = map(int, args.params)
        t = random_d5(n, seed)
    s = {v: args.s for v in t.vertices}
    m = manifest("gen", None, seed, {"shape": args.shape, "params": args.params, "s": args.s},
                 {"vertices": len(t.vertices)})
    sys.stdout.write(dump_tree(t, s, manifest=m))
    return 0


def cmd_classify(args) -> int:
    text = _read(args.file)
    t, s = load_tree(text)
    v = verdict(t, s)
    v["manifest"] = manifest("classify", text, None, {}, {"class": v["class"], "rule": v["rule"]})
    _emit(v, args.out)
    return 0


def cmd_certify(args) -> int:
    text = _read(args.file)
    t, s = load_tree(text)
    c = classify(t, s)
    if c.klass == "C0":
        cert = certify_c0(t, s)
        d = cert.orientation
        report = cert.report()
        seed = None
    else:
        if args.seed is None:
            raise InputError("instance is C1: the witness search is randomised, pass --seed")
        d = search_c1_witness(t, s, budget=args.budget, seed=args.seed)
        if d is None:
            raise BudgetExhausted(f"no diameter-6 orientation found within budget {args.budget}")
        report = {"class": c.klass, "rule": c.rule, "scheme": "local-search",
                  "diameter": digraph_diameter(d).diameter, "budget": args.budget}
        seed = args.seed
    dot = orientation_to_dot(d)
    if args.dot:
        Path(args.dot).write_text(dot, encoding="utf-8")
        report["dot"] = args.dot
    else:
        report["dot"] = dot
    if args.orientation:
        _emit(dump_orientation(d), args.orientation)
        report["orientation"] = args.orientation
    report["bits"] = d.to_hex()
    report["manifest"] = manifest("certify", text, seed, {"budget": args.budget},
                                  {"class": c.klass, "diameter": report["diameter"]})
    _emit(report, args.out)
    return 0


def cmd_oracle(args) -> int:
    text = _read(args.file)
    t, s = load_tree(text)
    g = multiply(t, s)
    cfg = SearchConfig(filter=args.filter, target=args.target, max_edges=args.max_edges,
                       threads=args.threads, checkpoint=args.checkpoint)
    start = time.perf_counter()
    if args.target is not None:
        found, witness, explored = exists_diameter_at_most(g, args.target, cfg)
        result = {"target": args.target, "exists": found,
                  "witness": witness.to_hex() if witness else None, "explored": explored}
    else:
        res = orientation_number(g, cfg)
        result = res.to_json()
        bounds = sandwich_bounds(g)
        if bounds:
            result["sandwich"] = {"lower": bounds[0], "upper": bounds[1],
                                  "holds": bounds[0] <= res.d_bar <= bounds[1]}
    result["wall_time"] = round(time.perf_counter() - start, 3)
    config = {"filter": cfg.filter.value, "target": cfg.target, "max_edges": cfg.edge_cap,
              "threads": cfg.threads}
    result["manifest"] = manifest("oracle", text, None, config,
                                  {k: result.get(k) for k in ("d_bar", "exists")})
    _emit(result, args.out)
    return 0


def cmd_dual(args) -> int:
    text = _read(args.file)
    d = reverse(load_orientation(text))
    rep = digraph_diameter(d)
    payload = dump_orientation(d, diameter="inf" if rep.diameter == INF else rep.diameter)
    payload["manifest"] = manifest("dual", text, None, {}, {"diameter": payload["diameter"]})
    _emit(payload, args.out)
    return 0


def _parse_assignments(items: list[str]) -> dict[str, int]:
    out = {}
    for item in items:
        name, sep, value = item.rpartition("=")
        if not sep or not value.isdigit():
            raise InputError(f"expected NAME=INT, got {item!r}")
        out[name] = int(value)
    return out


def cmd_lift(args) -> int:
    text = _read(args.file)
    f = load_orientation(text)
    lam = dict(f.base.s)
    if args.multiplicities:
        lam.update(json.loads(_read(args.multiplicities)))
    lam.update(_parse_assignments(args.set or []))
    unknown = sorted(set(lam) - set(f.base.parent.vertices))
    if unknown:
        raise InputError(f"unknown vertex {unknown[0]!r}")
    lam = check_multiplicities(f.base.parent, lam)
    d = lift(f, lam)
    rep = digraph_diameter(d)
    payload = dump_orientation(d, diameter=rep.diameter)
    payload["manifest"] = manifest("lift", text, None, {"multiplicities": lam}, {"diameter": rep.diameter})
    _emit(payload, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orient5", description=__doc__)
    parser.add_argument("--version", action="version", version=f"orient5 {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a tree file")
    p.add_argument("shape", choices=["path", "doublespider", "random-d5"])
    p.add_argument("params", nargs="*")
    p.add_argument("--s", type=int, default=2, help="multiplicity written for every vertex")
    p.set_defaults(func=cmd_gen)

    def add_io(p):
        p.add_argument("file", nargs="?", default="-", help="input file, '-' for stdin")
        p.add_argument("-o", "--out", help="write the JSON result here instead of stdout")

    p = sub.add_parser("classify", help="C0/C1 verdict for a tree file")
    add_io(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("certify", help="explicit orientation with a verification report")
    add_io(p)
    p.add_argument("--dot", help="write the orientation as DOT here")
    p.add_argument("--orientation", help="write an orientation file here")
    p.add_argument("--seed", type=int, help="seed for the C1 witness search")
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("oracle", help="exhaustive orientation number")
    add_io(p)
    p.add_argument("--filter", choices=["none", "strong", "lemma22"], default="strong")
    p.add_argument("--target", type=int)
    p.add_argument("--max-edges", type=int)
    p.add_argument("--threads", type=int, default=default_threads())
    p.add_argument("--checkpoint")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("dual", help="reverse every arc of an orientation file")
    add_io(p)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("lift", help="lift an orientation file to larger multiplicities")
    add_io(p)
    p.add_argument("--set", action="append", metavar="NAME=INT")
    p.add_argument("--multiplicities", help="JSON object of new multiplicities")
    p.set_defaults(func=cmd_lift)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except Orient5Error as exc:
        print(f"orient5: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"orient5: InputError: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
