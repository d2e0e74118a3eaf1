"""Batch front door: generate, build, audit, stretch, sweep, export.

Every run prints a JSON report (manifest plus results) to stdout or
``--report``. Artifact files are byte-deterministic for fixed arguments
and seeds; the manifest's wall-clock field is the one documented
exception. Exit codes: 0 success, 1 operation error, 2 usage error,
3 audit failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .audit import (
    check_base_graph_properties,
    check_composed_properties,
    check_graph_distance_property,
    deletion_stretch_experiment,
    parity_filter_candidate,
    pigeonhole_adversary,
)
from .clustering import decompose, verify_decomposition
from .distortion import additive_distortion, multiplicative_spanner
from .emulator import EmulatorConfig
from .errors import SpanlabError
from .generators import gen_graph
from .graph import load_edge_list, save_edge_list, to_dot
from .hard_instances import (
    COMPOSED_PRESETS,
    INNER_PRESETS,
    base_graph_to_json,
    build_inner_graph,
    composed_from_json,
    composed_preset,
    composed_to_json,
    inner_preset,
)
from .preserver import build_preserver, check_consistency
from .report import AuditReport
from .schedule import exponent_schedule, run_recursive
from .spanner import SpannerConfig

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_AUDIT_FAILED = 3

_VERBOSE = os.environ.get("SPANLAB_VERBOSE", "") not in ("", "0")


def _log(msg: str) -> None:
    if _VERBOSE:
        print(msg, file=sys.stderr)


def _manifest(args, command: str, inputs: list[str], outputs: list[str],
              started: float) -> dict:
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "report") and v is not None}
    return {"command": command,
            "parameters": {k: str(v) for k, v in params.items()},
            "seed": getattr(args, "seed", None),
            "inputs": inputs, "outputs": outputs,
            "version": __version__,
            "wall_time_s": round(time.time() - started, 6)}


def _emit(args, report: dict) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in text.split(","):
        u, v = chunk.split(":")
        pairs.append((int(u), int(v)))
    return pairs


def _load_bundle(prefix: str):
    with open(prefix + ".json", encoding="utf-8") as fh:
        doc = json.load(fh)
    graph = load_edge_list(prefix + ".el")
    if doc["kind"] == "composed_instance":
        return composed_from_json(doc, graph)
    from .hard_instances import base_graph_from_json
    return base_graph_from_json(doc, graph)


def _audit_exit(report: AuditReport) -> int:
    return EXIT_OK if report.passed else EXIT_AUDIT_FAILED


# -- subcommand implementations ---------------------------------------------

def cmd_gen(args) -> int:
    t0 = time.time()
    g = gen_graph(args.kind, n=args.n, m=args.m, rows=args.rows,
                  cols=args.cols, seed=args.seed)
    save_edge_list(g, args.out)
    _emit(args, {"manifest": _manifest(args, "gen", [], [args.out], t0),
                 "result": {"n": g.n, "m": g.m}})
    return EXIT_OK


def cmd_build_mult(args) -> int:
    t0 = time.time()
    g = load_edge_list(args.graph)
    h = multiplicative_spanner(g, args.k)
    save_edge_list(h, args.out)
    _emit(args, {"manifest": _manifest(args, "build-mult", [args.graph],
                                       [args.out], t0),
                 "result": {"n": h.n, "m": h.m}})
    return EXIT_OK


def _emulator_config(args) -> EmulatorConfig:
    return EmulatorConfig(
        eps=Fraction(args.eps), r_override=args.r_override,
        sampling_constant=Fraction(args.sampling_constant),
        c_hat=Fraction(args.c_hat),
        greedy_stop_multiplier=args.stop_multiplier,
        prefix_err_multiplier=args.prefix_multiplier, seed=args.seed)


def _spanner_config(args) -> SpannerConfig:
    return SpannerConfig(
        eps=Fraction(args.eps), r_override=args.r_override,
        sampling_constant=Fraction(args.sampling_constant),
        c_hat=Fraction(args.c_hat),
        greedy_stop_multiplier=args.stop_multiplier,
        prefix_err_multiplier=args.prefix_multiplier, seed=args.seed)


def cmd_build_emulator(args) -> int:
    t0 = time.time()
    g = load_edge_list(args.graph)
    result = run_recursive(g, "emulator", args.depth, _emulator_config(args))
    save_edge_list(result.to_graph(), args.out)
    _emit(args, {"manifest": _manifest(args, "build-emulator", [args.graph],
                                       [args.out], t0),
                 "result": {"edges": result.m, "stats": result.stats}})
    return EXIT_OK


def cmd_build_spanner(args) -> int:
    t0 = time.time()
    g = load_edge_list(args.graph)
    result = run_recursive(g, "spanner", args.depth, _spanner_config(args))
    save_edge_list(result.subgraph, args.out)
    outputs = [args.out]
    if args.paths:
        with open(args.paths, "w", encoding="utf-8") as fh:
            json.dump(result.path_system.to_json(), fh, sort_keys=True)
            fh.write("\n")
        outputs.append(args.paths)
    _emit(args, {"manifest": _manifest(args, "build-spanner", [args.graph],
                                       outputs, t0),
                 "result": {"edges": result.subgraph.m, "stats": result.stats}})
    return EXIT_OK


def cmd_build_preserver(args) -> int:
    t0 = time.time()
    g = load_edge_list(args.graph)
    if args.pairs:
        pairs = _parse_pairs(args.pairs)
    else:
        import random
        rng = random.Random(args.seed)
        pairs = set()
        guard = 0
        while len(pairs) < args.random_pairs and guard < 100 * args.random_pairs:
            u = rng.randrange(g.n)
            v = rng.randrange(g.n)
            guard += 1
            if u != v:
                pairs.add((min(u, v), max(u, v)))
        pairs = sorted(pairs)
    sub, system = build_preserver(g, pairs)
    save_edge_list(sub, args.out)
    outputs = [args.out]
    if args.paths:
        with open(args.paths, "w", encoding="utf-8") as fh:
            json.dump(system.to_json(), fh, sort_keys=True)
            fh.write("\n")
        outputs.append(args.paths)
    consistency = check_consistency(system)
    _emit(args, {"manifest": _manifest(args, "build-preserver", [args.graph],
                                       outputs, t0),
                 "result": {"edges": sub.m, "stats": system.stats,
                            "consistency": consistency.to_json()}})
    return _audit_exit(consistency)


def cmd_lb_gen(args) -> int:
    t0 = time.time()
    if args.preset in COMPOSED_PRESETS:   # composed preset names work here too
        return cmd_lb_compose(args)
    if args.preset:
        bg = inner_preset(args.preset)
    else:
        if None in (args.c, args.r, args.x, args.y):
            raise SpanlabError("lb-gen needs --preset or all of --c/--r/--x/--y")
        bg = build_inner_graph(args.c, args.r, args.x, args.y)
    save_edge_list(bg.graph, args.out_prefix + ".el")
    doc = base_graph_to_json(bg)
    with open(args.out_prefix + ".json", "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")
    outputs = [args.out_prefix + ".el", args.out_prefix + ".json"]
    _emit(args, {"manifest": _manifest(args, "lb-gen", [], outputs, t0),
                 "result": {"n": bg.graph.n, "m": bg.graph.m,
                            "pairs": len(bg.pairs)}})
    return EXIT_OK


def cmd_lb_compose(args) -> int:
    t0 = time.time()
    inst = composed_preset(args.preset)
    save_edge_list(inst.graph, args.out_prefix + ".el")
    with open(args.out_prefix + ".json", "w", encoding="utf-8") as fh:
        json.dump(composed_to_json(inst), fh, sort_keys=True)
        fh.write("\n")
    outputs = [args.out_prefix + ".el", args.out_prefix + ".json"]
    _emit(args, {"manifest": _manifest(args, "lb-compose", [], outputs, t0),
                 "result": {"n": inst.graph.n, "m": inst.graph.m,
                            "z": inst.z, "pairs": len(inst.pairs),
                            "fingerprint": inst.fingerprint()}})
    return EXIT_OK


def cmd_audit(args) -> int:
    t0 = time.time()
    if args.mode == "distortion":
        g = load_edge_list(args.graph)
        h = load_edge_list(args.h)
        pairs = _parse_pairs(args.pairs) if args.pairs else None
        rep = additive_distortion(g, h, pairs=pairs,
                                  require_subgraph=args.require_subgraph,
                                  cap=args.cap)
        ok = args.max_additive is None or rep.max_additive <= args.max_additive
        _emit(args, {"manifest": _manifest(args, "audit", [args.graph, args.h], [], t0),
                     "result": {"max_additive": rep.max_additive,
                                "argmax_pair": rep.argmax_pair,
                                "pairs_checked": rep.pair_count_checked,
                                "histogram": {str(k): v for k, v in
                                              sorted(rep.histogram.items())},
                                "subgraph_ok": rep.subgraph_ok,
                                "within_bound": ok}})
        return EXIT_OK if ok else EXIT_AUDIT_FAILED
    if args.mode == "base":
        bundle = _load_bundle(args.bundle)
        rep = check_base_graph_properties(bundle)
    elif args.mode == "composed":
        bundle = _load_bundle(args.bundle)
        rep = check_composed_properties(bundle)
    elif args.mode == "graph-distance":
        bundle = _load_bundle(args.bundle)
        chk = check_graph_distance_property(bundle, args.star)
        _emit(args, {"manifest": _manifest(args, "audit", [args.bundle], [], t0),
                     "result": {"pairs_checked": chk.pair_count,
                                "failures": len(chk.failures),
                                "min_margin": str(chk.min_margin),
                                "i_star": chk.i_star,
                                "witnesses": chk.failures[:5]}})
        return EXIT_OK if chk.passed else EXIT_AUDIT_FAILED
    elif args.mode == "clustering":
        g = load_edge_list(args.graph)
        d = decompose(g, args.r, Fraction(args.eps))
        rep = verify_decomposition(g, d, args.r, Fraction(args.eps),
                                   max_overlap_constant=args.max_overlap)
        out = rep.to_json()
        out["decomposition"] = d.to_json()
        _emit(args, {"manifest": _manifest(args, "audit", [args.graph], [], t0),
                     "result": out})
        return _audit_exit(rep)
    else:  # pragma: no cover - argparse restricts choices
        raise SpanlabError(f"unknown audit mode {args.mode}")
    _emit(args, {"manifest": _manifest(args, "audit",
                                       [args.bundle or args.graph or ""], [], t0),
                 "result": rep.to_json()})
    return _audit_exit(rep)


def cmd_stretch(args) -> int:
    t0 = time.time()
    inst = _load_bundle(args.bundle)
    edges = _parse_pairs(args.edges) if args.edges else None
    record = deletion_stretch_experiment(inst, args.pair, args.policy, edges=edges)
    _emit(args, {"manifest": _manifest(args, "stretch", [args.bundle], [], t0),
                 "result": record})
    return EXIT_OK


def cmd_adversary(args) -> int:
    t0 = time.time()
    inst = _load_bundle(args.bundle)
    if args.candidate:
        candidate = load_edge_list(args.candidate)
    else:
        candidate = parity_filter_candidate(inst)
    record = pigeonhole_adversary(inst, candidate)
    _emit(args, {"manifest": _manifest(args, "adversary",
                                       [args.bundle, args.candidate or "(parity)"],
                                       [], t0),
                 "result": record})
    return EXIT_OK


def cmd_schedule(args) -> int:
    t0 = time.time()
    sch = exponent_schedule(args.kind, args.iters)
    rows = [{"i": i, "fraction": str(v), "decimal": float(v)}
            for i, v in enumerate(sch.values)]
    for row in rows:
        print(f"a_{row['i']} = {row['fraction']} = {row['decimal']:.9f}")
    print(f"fixed point = {sch.fixed_point:.9f}")
    _emit(args, {"manifest": _manifest(args, "schedule", [], [], t0),
                 "result": {"values": rows, "fixed_point": sch.fixed_point}})
    return EXIT_OK


SWEEP_COLUMNS = ["kind", "n", "m", "seed", "depth", "r", "r_hat",
                 "baseline_edges", "small_cluster_edges", "recursive_edges",
                 "greedy_edges", "total_edges", "max_distortion", "threshold",
                 "within_threshold", "runtime_s", "error"]


def sweep_entry(entry: dict) -> dict:
    """One sweep run; failures land in the row instead of aborting the sweep."""
    row = {c: "" for c in SWEEP_COLUMNS}
    row.update({k: entry.get(k, "") for k in ("kind", "n", "m", "seed", "depth")})
    t0 = time.time()
    try:
        kind = entry["kind"]
        g = gen_graph("gnm", n=entry["n"], m=entry["m"], seed=entry.get("seed", 0))
        depth = entry.get("depth", 1)
        if kind == "emulator":
            cfg = EmulatorConfig(eps=Fraction(str(entry.get("eps", "1/4"))),
                                 seed=entry.get("seed", 0))
            result = run_recursive(g, "emulator", depth, cfg)
            h = result.to_graph()
            stop = cfg.greedy_stop_multiplier
            rep = additive_distortion(g, h)
            total_edges = result.m
        elif kind == "spanner":
            cfg = SpannerConfig(eps=Fraction(str(entry.get("eps", "1/4"))),
                                seed=entry.get("seed", 0))
            result = run_recursive(g, "spanner", depth, cfg)
            h = result.subgraph
            stop = cfg.greedy_stop_multiplier
            rep = additive_distortion(g, h, require_subgraph=True)
            total_edges = h.m
        else:
            raise SpanlabError(f"unknown sweep kind {kind!r}")
        stats = result.stats
        threshold = stop * stats["r_hat"]
        row.update({
            "r": stats["r"], "r_hat": stats["r_hat"],
            "baseline_edges": stats["baseline_edges"],
            "small_cluster_edges": stats["small_cluster_edges"],
            "recursive_edges": stats["recursive_edges"],
            "greedy_edges": stats["greedy_edges"],
            "total_edges": total_edges,
            "max_distortion": rep.max_additive,
            "threshold": threshold,
            "within_threshold": rep.max_additive <= threshold,
        })
    except Exception as exc:  # noqa: BLE001 - recorded per row by contract
        row["error"] = f"{type(exc).__name__}: {exc}"
    row["runtime_s"] = round(time.time() - t0, 3)
    return row


def cmd_sweep(args) -> int:
    t0 = time.time()
    with open(args.config, encoding="utf-8") as fh:
        config = json.load(fh)
    runs = config.get("runs", [])
    if args.jobs > 1 and len(runs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(sweep_entry, runs))
    else:
        rows = [sweep_entry(e) for e in runs]
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    _emit(args, {"manifest": _manifest(args, "sweep", [args.config],
                                       [args.out], t0),
                 "result": {"rows": len(rows),
                            "errors": sum(1 for r in rows if r["error"])}})
    return EXIT_OK


def cmd_export_dot(args) -> int:
    t0 = time.time()
    g = load_edge_list(args.graph)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(to_dot(g))
    _emit(args, {"manifest": _manifest(args, "export-dot", [args.graph],
                                       [args.out], t0),
                 "result": {"n": g.n, "m": g.m}})
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spanlab",
        description="graph sparsification laboratory: builders, hard "
                    "instances, and exact audits")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph")
    p.add_argument("--kind", required=True,
                   choices=["gnm", "cycle", "path", "grid", "tree"])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build-mult", help="greedy multiplicative spanner")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_build_mult)

    for name, fn in (("build-emulator", cmd_build_emulator),
                     ("build-spanner", cmd_build_spanner)):
        p = sub.add_parser(name, help=f"{name.split('-')[1]} construction")
        p.add_argument("--graph", required=True)
        p.add_argument("--eps", default="1/4")
        p.add_argument("--depth", type=int, default=1)
        p.add_argument("--r-override", type=int, default=None)
        p.add_argument("--sampling-constant", default="4")
        p.add_argument("--c-hat", default="3")
        p.add_argument("--stop-multiplier", type=int,
                       default=16 if name == "build-emulator" else 32)
        p.add_argument("--prefix-multiplier", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", required=True)
        if name == "build-spanner":
            p.add_argument("--paths")
        p.add_argument("--report")
        p.set_defaults(func=fn)

    p = sub.add_parser("build-preserver", help="pairwise distance preserver")
    p.add_argument("--graph", required=True)
    p.add_argument("--pairs", help="comma-separated u:v list")
    p.add_argument("--random-pairs", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--paths")
    p.add_argument("--report")
    p.set_defaults(func=cmd_build_preserver)

    p = sub.add_parser("lb-gen", help="inner/base hard-instance graph")
    p.add_argument("--preset",
                   choices=sorted(INNER_PRESETS) + sorted(COMPOSED_PRESETS))
    p.add_argument("--c", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--y", type=int)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_lb_gen)

    p = sub.add_parser("lb-compose", help="composed obstacle-product instance")
    p.add_argument("--preset", required=True, choices=sorted(COMPOSED_PRESETS))
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_lb_compose)

    p = sub.add_parser("audit", help="exact audits")
    p.add_argument("--mode", required=True,
                   choices=["distortion", "base", "composed",
                            "graph-distance", "clustering"])
    p.add_argument("--graph")
    p.add_argument("--h")
    p.add_argument("--bundle")
    p.add_argument("--pairs")
    p.add_argument("--require-subgraph", action="store_true")
    p.add_argument("--max-additive", type=int, default=None)
    p.add_argument("--cap", type=int, default=5000)
    p.add_argument("--star", type=int, default=0)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--eps", default="1/4")
    p.add_argument("--max-overlap", type=float, default=None)
    p.add_argument("--report")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("stretch", help="deletion stretch experiment")
    p.add_argument("--bundle", required=True)
    p.add_argument("--pair", type=int, required=True)
    p.add_argument("--policy", required=True,
                   choices=["one_edge_per_inner_copy", "half_of_path",
                            "explicit"])
    p.add_argument("--edges", help="comma-separated u:v list for explicit policy")
    p.add_argument("--report")
    p.set_defaults(func=cmd_stretch)

    p = sub.add_parser("adversary", help="pigeonhole adversary probe")
    p.add_argument("--bundle", required=True)
    p.add_argument("--candidate", help="edge-list file; default parity filter")
    p.add_argument("--report")
    p.set_defaults(func=cmd_adversary)

    p = sub.add_parser("schedule", help="exponent recurrence table")
    p.add_argument("--kind", required=True, choices=["emulator", "spanner"])
    p.add_argument("--iters", type=int, default=3)
    p.add_argument("--report")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("sweep", help="batch runs from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export-dot", help="DOT rendering of an edge list")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _log(f"spanlab {__version__}: {args.command}")
    try:
        return args.func(args)
    except (SpanlabError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
