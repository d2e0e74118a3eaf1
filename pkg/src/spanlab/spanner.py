"""Recursive additive-spanner construction (subgraph variant).

Same skeleton as the emulator: baseline, sampling, clustering, small and
large cluster handling, then a greedy phase. The differences: small
clusters receive canonical shortest paths instead of weighted edges, the
small-cluster size threshold is r^(4/3) (divided by log^2 n in the default
variant), and each greedy round inserts a whole canonical shortest path.
Everything inserted is an edge of the input graph.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .clustering import decompose
from .distortion import multiplicative_spanner
from .errors import (
    CapExceededError,
    InvalidConfigError,
    NonterminationGuardError,
)
from .graph import APSP_CAP_DEFAULT, Graph, _norm_edge, bfs_raw, induced_subgraph
from .preserver import PathSystem, consistent_shortest_path, shortest_path_labels, edge_bits
from .ratmath import as_fraction, ceil_mul_pow
from .schedule import radius_for
from .emulator import sample_vertices, _prefix_limit, _max_unsampled_gap


@dataclass
class SpannerConfig:
    eps: Fraction = Fraction(1, 4)
    alpha: Fraction = Fraction(3, 7)
    r_override: int | None = None
    sampling_constant: Fraction = Fraction(4)
    c_hat: Fraction = Fraction(3)
    greedy_stop_multiplier: int = 32
    prefix_err_multiplier: int = 1
    seed: int = 0
    recursion_base: object = "exact"    # "exact" or callable Graph -> SpannerResult
    apsp_cap: int = APSP_CAP_DEFAULT
    small_threshold_variant: str = "with_log"   # "with_log" or "plain"

    def __post_init__(self):
        self.eps = as_fraction(self.eps)
        self.alpha = as_fraction(self.alpha)
        self.sampling_constant = as_fraction(self.sampling_constant)
        self.c_hat = as_fraction(self.c_hat)
        if not 0 < self.eps < 1:
            raise InvalidConfigError(f"eps must be in (0, 1), got {self.eps}")
        if not 0 < self.alpha < 1:
            raise InvalidConfigError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.greedy_stop_multiplier < 1 or self.prefix_err_multiplier < 1:
            raise InvalidConfigError("multipliers must be >= 1")
        if self.greedy_stop_multiplier < 2 * self.prefix_err_multiplier:
            raise InvalidConfigError(
                "greedy_stop_multiplier must be >= 2 * prefix_err_multiplier")
        if self.sampling_constant <= 0 or self.c_hat < 0:
            raise InvalidConfigError("sampling_constant must be > 0 and c_hat >= 0")
        if self.r_override is not None and self.r_override < 1:
            raise InvalidConfigError("r_override must be >= 1")
        if self.small_threshold_variant not in ("with_log", "plain"):
            raise InvalidConfigError("small_threshold_variant must be 'with_log' or 'plain'")


@dataclass
class SpannerResult:
    subgraph: Graph
    path_system: PathSystem
    stats: dict = field(default_factory=dict)


def small_cluster_threshold_holds(cluster_size: int, r: int, log_n: int,
                                  variant: str = "with_log") -> bool:
    """Spanner rule: |cluster| <= r^(4/3) / ceil(log2 n)^2, compared exactly.

    The "plain" variant drops the log factor; both sides are cubed so the
    comparison never touches irrational intermediate values.
    """
    if variant == "plain":
        log_n = 1
    return (cluster_size * log_n * log_n) ** 3 <= r ** 4


def build_spanner(g: Graph, cfg: SpannerConfig | None = None) -> SpannerResult:
    """Run the full spanner procedure on an unweighted graph."""
    cfg = cfg or SpannerConfig()
    n = g.n
    if n < 2:
        raise InvalidConfigError("need at least two vertices")
    if n > cfg.apsp_cap:
        raise CapExceededError(f"n={n} above audit cap {cfg.apsp_cap}")
    if g.weighted:
        raise InvalidConfigError("spanner construction expects an unweighted graph")

    h_edges: set[tuple[int, int]] = set()
    system = PathSystem()

    baseline = multiplicative_spanner(g)
    h_edges.update(baseline.edges)

    r = cfg.r_override or radius_for("spanner", n, cfg.alpha)
    sampled, p = sample_vertices(n, r, cfg.sampling_constant, cfg.seed)
    sampled_set = set(sampled)

    decomp = decompose(g, r, cfg.eps)
    r_hat = ceil_mul_pow(r, n, cfg.c_hat * cfg.eps)
    log_n = max(1, math.ceil(math.log2(max(n, 2))))

    small_edges = 0
    small_paths = 0
    recursive_edges = 0
    recursive_calls = []

    for idx in range(decomp.k):
        cluster = decomp.clusters[idx]
        core = decomp.cores[idx]
        if small_cluster_threshold_holds(len(cluster), r, log_n,
                                         cfg.small_threshold_variant):
            sub, mapping = induced_subgraph(g, cluster)
            rank = {old: new for new, old in enumerate(mapping)}
            sources = sorted(core & sampled_set)
            targets = sorted(cluster & sampled_set)
            bits = edge_bits(sub)
            done_pairs = set()
            for s in sources:
                labels = shortest_path_labels(sub, rank[s], bits)
                dist_sub = labels[0]
                for t in targets:
                    if t == s:
                        continue
                    pair = (min(s, t), max(s, t))
                    if pair in done_pairs:
                        continue
                    dt = dist_sub[rank[t]]
                    if dt < 0 or dt > r:
                        continue
                    done_pairs.add(pair)
                    sub_path = consistent_shortest_path(sub, rank[s], rank[t],
                                                        _labels=labels)
                    path = [mapping[v] for v in sub_path]
                    system.add(pair, path if path[0] == pair[0] else path[::-1])
                    small_paths += 1
                    for a, b in zip(path, path[1:]):
                        e = _norm_edge(a, b)
                        if e not in h_edges:
                            h_edges.add(e)
                            small_edges += 1
        else:
            sub, mapping = induced_subgraph(g, cluster)
            if cfg.recursion_base == "exact":
                child_edges = sub.edges
                recursive_calls.append({"cluster": idx, "n": sub.n,
                                        "edges": sub.m, "base": "exact"})
            else:
                child = cfg.recursion_base(sub)
                child_edges = child.subgraph.edges
                recursive_calls.append({"cluster": idx, "n": sub.n,
                                        "edges": len(child_edges),
                                        "base": "recursive",
                                        "child_stats": child.stats})
            for a, b in child_edges:
                e = _norm_edge(mapping[a], mapping[b])
                if e not in h_edges:
                    h_edges.add(e)
                    recursive_edges += 1

    stats = {
        "n": n, "r": r, "r_hat": r_hat,
        "eps": str(cfg.eps), "alpha": str(cfg.alpha),
        "baseline_edges": baseline.m,
        "small_cluster_edges": small_edges,
        "small_cluster_paths": small_paths,
        "recursive_edges": recursive_edges,
        "recursive_calls": recursive_calls,
        "clusters": decomp.k,
        "sample_prob": p, "sampled": len(sampled),
    }

    paths_added, edges_added, rounds = spanner_greedy_phase(
        g, h_edges, system, r_hat,
        cfg.greedy_stop_multiplier, cfg.prefix_err_multiplier,
        sampled=sampled_set, stats=stats)
    stats["greedy_paths"] = paths_added
    stats["greedy_edges"] = edges_added
    stats["greedy_rounds"] = rounds

    return SpannerResult(subgraph=Graph(n, h_edges), path_system=system,
                         stats=stats)


def spanner_greedy_phase(g: Graph, h_edges: set[tuple[int, int]],
                         system: PathSystem, r_hat: int,
                         stop_mult: int, prefix_mult: int,
                         sampled: set[int] | None = None,
                         stats: dict | None = None) -> tuple[int, int, int]:
    """Insert canonical shortest paths until no pair violates the threshold.

    Mutates ``h_edges`` and ``system``; returns (paths added, edges added,
    rounds). Sweep order and the per-round guarantee match the emulator
    greedy phase; the inserted (x, y)-path is the canonical one, which on a
    canonical violator path equals its subpath between x and y.
    """
    n = g.n
    stop = stop_mult * r_hat
    prefix_bound = prefix_mult * r_hat
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in h_edges:
        adj[u].append(v)
        adj[v].append(u)
    version = [len(h_edges)]

    dh_cache: dict[int, tuple[int, list[int]]] = {}

    def d_h(s: int) -> list[int]:
        entry = dh_cache.get(s)
        if entry is None or entry[0] != version[0]:
            entry = (version[0], bfs_raw(adj, n, s))
            dh_cache[s] = entry
        return entry[1]

    paths_added = 0
    edges_added = 0
    rounds = 0
    guard = n * n
    max_gap = 0

    for s in range(n):
        dg = bfs_raw(g.adj, n, s)
        t = s + 1
        while t < n:
            if dg[t] < 0:
                t += 1
                continue
            dh = d_h(s)
            if dh[t] >= 0 and dh[t] <= dg[t] + stop:
                t += 1
                continue
            rounds += 1
            if rounds > guard:
                raise NonterminationGuardError(
                    f"greedy exceeded {guard} rounds; config cannot terminate")
            path = consistent_shortest_path(g, s, t)
            if sampled is not None:
                max_gap = max(max_gap, _max_unsampled_gap(path, sampled))

            def d_along(i: int, j: int) -> int:
                return abs(j - i)

            jx = _prefix_limit(path, d_h, d_along, prefix_bound)
            rpath = path[::-1]
            jy_rev = _prefix_limit(rpath, d_h, d_along, prefix_bound)
            jy = len(path) - 1 - jy_rev
            x, y = path[jx], path[jy]
            assert x != t and y != s, "violating pair cannot have a full prefix"
            if x != y:
                lo, hi = (jx, jy) if jx < jy else (jy, jx)
                inserted = consistent_shortest_path(g, path[lo], path[hi])
                assert inserted == path[lo:hi + 1], \
                    "canonical subpath must agree with the canonical pair path"
                system.add((min(x, y), max(x, y)), inserted)
                paths_added += 1
                changed = False
                for a, b in zip(inserted, inserted[1:]):
                    e = _norm_edge(a, b)
                    if e not in h_edges:
                        h_edges.add(e)
                        adj[a].append(b)
                        adj[b].append(a)
                        edges_added += 1
                        changed = True
                if changed:
                    version[0] += 1
            dh = d_h(s)
            round_bound = dg[t] + 2 * prefix_bound
            if dh[t] > round_bound:
                raise AssertionError(
                    f"round guarantee broke for pair ({s}, {t}): "
                    f"{dh[t]} > {round_bound}")
    if stats is not None and sampled is not None:
        stats["max_sample_gap_observed"] = max_gap
    return paths_added, edges_added, rounds
