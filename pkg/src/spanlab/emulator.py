"""Recursive additive-emulator construction with a greedy path-buying phase.

Preprocessing: a logarithmic-stretch baseline subgraph, vertex sampling,
a ball-growing cluster decomposition, exact weighted edges between sampled
vertices inside small clusters, and a recursive call inside large ones.
The greedy phase then buys one weighted edge per round until every pair
sits within the stop threshold, which the final audit re-derives exactly.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .clustering import decompose
from .distortion import multiplicative_spanner
from .errors import (
    CapExceededError,
    InvalidConfigError,
    NonterminationGuardError,
)
from .graph import APSP_CAP_DEFAULT, Graph, _norm_edge, bfs_raw, dijkstra_raw, induced_subgraph
from .preserver import consistent_shortest_path
from .ratmath import as_fraction, ceil_mul_pow
from .schedule import radius_for


@dataclass
class EmulatorConfig:
    eps: Fraction = Fraction(1, 4)
    alpha: Fraction = Fraction(1, 4)
    r_override: int | None = None
    sampling_constant: Fraction = Fraction(4)
    c_hat: Fraction = Fraction(3)
    greedy_stop_multiplier: int = 16
    prefix_err_multiplier: int = 1
    seed: int = 0
    recursion_base: object = "exact"     # "exact" or callable Graph -> Emulator
    apsp_cap: int = APSP_CAP_DEFAULT

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
            # each round lands at d_G + 2*prefix*r_hat; termination needs
            # that to satisfy the stop threshold
            raise InvalidConfigError(
                "greedy_stop_multiplier must be >= 2 * prefix_err_multiplier")
        if self.sampling_constant <= 0 or self.c_hat < 0:
            raise InvalidConfigError("sampling_constant must be > 0 and c_hat >= 0")
        if self.r_override is not None and self.r_override < 1:
            raise InvalidConfigError("r_override must be >= 1")


@dataclass
class Emulator:
    """Weighted edge set over the host vertex set, plus per-phase counts."""

    host_n: int
    edges: dict[tuple[int, int], int] = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    def add_edge(self, u: int, v: int, w: int) -> bool:
        """Insert keeping the minimum weight; True if anything changed."""
        e = _norm_edge(u, v)
        old = self.edges.get(e)
        if old is None or w < old:
            self.edges[e] = w
            return True
        return False

    @property
    def m(self) -> int:
        return len(self.edges)

    def to_graph(self) -> Graph:
        return Graph(self.host_n, list(self.edges), dict(self.edges))

    def wadj(self) -> list[list[tuple[int, int]]]:
        out = [[] for _ in range(self.host_n)]
        for (u, v), w in self.edges.items():
            out[u].append((v, w))
            out[v].append((u, w))
        return out


def sample_vertices(n: int, r: int, constant: Fraction,
                    seed: int) -> tuple[list[int], float]:
    """Independent sampling with probability min(1, constant * ln(n) / r)."""
    p = min(1.0, float(constant) * math.log(max(n, 2)) / r)
    rng = random.Random(seed)
    return [v for v in range(n) if rng.random() < p], p


def small_cluster_threshold_holds(cluster_size: int, r: int, log_n: int) -> bool:
    """Emulator rule: |cluster| <= r^2 / ceil(log2 n)^2, exactly."""
    return cluster_size * log_n * log_n <= r * r


def build_emulator(g: Graph, cfg: EmulatorConfig | None = None) -> Emulator:
    """Run the full emulator procedure on an unweighted graph."""
    cfg = cfg or EmulatorConfig()
    n = g.n
    if n < 2:
        raise InvalidConfigError("need at least two vertices")
    if n > cfg.apsp_cap:
        raise CapExceededError(f"n={n} above audit cap {cfg.apsp_cap}")

    em = Emulator(host_n=n)
    baseline = multiplicative_spanner(g)
    for u, v in baseline.edges:
        em.add_edge(u, v, 1)

    r = cfg.r_override or radius_for("emulator", n, cfg.alpha)
    sampled, p = sample_vertices(n, r, cfg.sampling_constant, cfg.seed)
    sampled_set = set(sampled)

    decomp = decompose(g, r, cfg.eps)
    r_hat = ceil_mul_pow(r, n, cfg.c_hat * cfg.eps)
    log_n = max(1, math.ceil(math.log2(max(n, 2))))

    small_edges = 0
    recursive_edges = 0
    recursive_calls = []
    dist_cache: dict[int, list[int]] = {}

    def d_g(s: int) -> list[int]:
        if s not in dist_cache:
            dist_cache[s] = bfs_raw(g.adj, n, s)
        return dist_cache[s]

    for idx, cluster in enumerate(decomp.clusters):
        if small_cluster_threshold_holds(len(cluster), r, log_n):
            members = sorted(cluster & sampled_set)
            for i, s in enumerate(members):
                ds = d_g(s)
                for t in members[i + 1:]:
                    if em.add_edge(s, t, ds[t]):
                        small_edges += 1
        else:
            sub, mapping = induced_subgraph(g, cluster)
            if cfg.recursion_base == "exact":
                for (a, b) in sub.edges:
                    if em.add_edge(mapping[a], mapping[b], 1):
                        recursive_edges += 1
                recursive_calls.append({"cluster": idx, "n": sub.n,
                                        "edges": sub.m, "base": "exact"})
            else:
                child = cfg.recursion_base(sub)
                for (a, b), w in child.edges.items():
                    if em.add_edge(mapping[a], mapping[b], w):
                        recursive_edges += 1
                recursive_calls.append({"cluster": idx, "n": sub.n,
                                        "edges": child.m, "base": "recursive",
                                        "child_stats": child.stats})

    em.stats.update({
        "n": n, "r": r, "r_hat": r_hat,
        "eps": str(cfg.eps), "alpha": str(cfg.alpha),
        "baseline_edges": baseline.m,
        "small_cluster_edges": small_edges,
        "recursive_edges": recursive_edges,
        "recursive_calls": recursive_calls,
        "clusters": decomp.k,
        "sample_prob": p, "sampled": len(sampled),
    })

    added, rounds = emulator_greedy_phase(
        g, em, r_hat, cfg.greedy_stop_multiplier, cfg.prefix_err_multiplier,
        sampled=sampled_set)
    em.stats["greedy_edges"] = len(added)
    em.stats["greedy_rounds"] = rounds
    return em


def _prefix_limit(path, dists, d_along, bound) -> int:
    """Largest index j such that all pairs inside path[:j+1] stay within bound.

    ``dists(v)`` returns current distances from v in H; d_along(i, j) is the
    exact graph distance between path positions. The pairwise condition is
    monotone in j, so a forward scan is sound.
    """
    limit = 0
    for j in range(1, len(path)):
        dj = dists(path[j])
        ok = all(dj[path[i]] >= 0 and dj[path[i]] <= d_along(i, j) + bound
                 for i in range(j))
        if not ok:
            break
        limit = j
    return limit


def _max_unsampled_gap(path: list[int], sampled: set[int]) -> int:
    gap = 0
    best = 0
    for v in path:
        if v in sampled:
            gap = 0
        else:
            gap += 1
            best = max(best, gap)
    return best


def emulator_greedy_phase(g: Graph, h: Emulator, r_hat: int,
                          stop_mult: int, prefix_mult: int,
                          sampled: set[int] | None = None) -> tuple[list, int]:
    """Buy weighted edges until no pair violates d_H > d_G + stop_mult*r_hat.

    Pairs are processed in lexicographic order. Distances in H never
    increase, so a violation can never reappear once cleared and a single
    ordered sweep with per-pair re-checks visits every violating pair.
    Each round also records the post-round guarantee
    d_H(s, t) <= d_G(s, t) + 2 * prefix_mult * r_hat.
    """
    n = g.n
    stop = stop_mult * r_hat
    prefix_bound = prefix_mult * r_hat
    wadj = h.wadj()
    version = [h.m]

    dh_cache: dict[int, tuple[int, list[int]]] = {}

    def d_h(s: int) -> list[int]:
        entry = dh_cache.get(s)
        if entry is None or entry[0] != version[0]:
            entry = (version[0], dijkstra_raw(wadj, n, s))
            dh_cache[s] = entry
        return entry[1]

    def add_edge(u: int, v: int, w: int) -> bool:
        if h.add_edge(u, v, w):
            wadj[u].append((v, w))
            wadj[v].append((u, w))
            version[0] += 1
            return True
        return False

    added: list[tuple[int, int, int]] = []
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
            # round: fix the lexicographically least violating pair (s, t)
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
            if x != y and add_edge(x, y, abs(jy - jx)):
                added.append((min(x, y), max(x, y), abs(jy - jx)))
            dh = d_h(s)
            round_bound = dg[t] + 2 * prefix_bound
            if dh[t] > round_bound:
                raise AssertionError(
                    f"round guarantee broke for pair ({s}, {t}): "
                    f"{dh[t]} > {round_bound}")
            # re-check the same pair against the stop threshold next loop
    h.stats["greedy_post_round_bound"] = 2 * prefix_bound
    if sampled is not None:
        h.stats["max_sample_gap_observed"] = max_gap
    return added, rounds
