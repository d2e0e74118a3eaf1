"""Exact audits of structural guarantees, plus adversarial stretch probes.

Every check recomputes its claim from scratch (BFS distances, big-integer
path counting, edge-ownership maps) and every failure carries a concrete
witness. Audits are pure functions of their instance: run twice, same
report, same fingerprint.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotSubgraphError, VertexSetMismatchError
from .graph import Graph, _norm_edge, bfs_raw
from .hard_instances import BaseGraph, ComposedInstance
from .report import AuditReport, fingerprint_payload


def count_shortest_paths(adj: list[list[int]], n: int, src: int) -> tuple[list[int], list[int]]:
    """BFS distances and exact path counts (big integers) from one source."""
    dist = [-1] * n
    cnt = [0] * n
    dist[src] = 0
    cnt[src] = 1
    q = deque([src])
    while q:
        u = q.popleft()
        du1 = dist[u] + 1
        cu = cnt[u]
        for v in adj[u]:
            dv = dist[v]
            if dv < 0:
                dist[v] = du1
                cnt[v] = cu
                q.append(v)
            elif dv == du1:
                cnt[v] += cu
    return dist, cnt


def _path_edges(path: list[int]):
    for a, b in zip(path, path[1:]):
        yield (a, b) if a < b else (b, a)


def check_base_graph_properties(bg: BaseGraph) -> AuditReport:
    """Verify the five structural properties of a grid base graph."""
    report = AuditReport()
    g = bg.graph
    report.add("vertex_count", g.n == bg.x * bg.y,
               measured={"n": g.n, "expected": bg.x * bg.y})
    expected_pairs = len(bg.sources) * len(bg.vectors)
    report.add("pair_count", len(bg.pairs) == expected_pairs,
               measured={"pairs": len(bg.pairs), "expected": expected_pairs})

    owner: dict[tuple[int, int], int] = {}
    collision = None
    for i, p in enumerate(bg.pairs):
        for e in _path_edges(p.path):
            if e in owner:
                collision = {"edge": e, "paths": (owner[e], i)}
                break
            owner[e] = i
        if collision:
            break
    report.add("edge_disjoint_paths", collision is None, witness=collision)
    report.add("edges_exactly_on_paths",
               collision is None and set(owner) == g.edge_set,
               measured={"owned": len(owner), "edges": g.m})

    lengths = [len(p.path) - 1 for p in bg.pairs]
    report.add("path_lengths", True,
               measured={"min": min(lengths), "max": max(lengths),
                         "x_over_2r": bg.x / (2 * bg.r)})

    by_src: dict[int, list] = {}
    for p in bg.pairs:
        by_src.setdefault(p.s, []).append(p)
    bad = None
    for s, plist in by_src.items():
        dist, cnt = count_shortest_paths(g.adj, g.n, s)
        for p in plist:
            if dist[p.t] != len(p.path) - 1:
                bad = {"pair": (p.s, p.t), "why": "canonical path not shortest",
                       "d": dist[p.t], "path_len": len(p.path) - 1}
                break
            if cnt[p.t] != 1:
                bad = {"pair": (p.s, p.t), "why": "shortest path not unique",
                       "count": cnt[p.t]}
                break
        if bad:
            break
    report.add("unique_shortest_paths", bad is None, witness=bad,
               measured={"sources_checked": len(by_src)})
    report.fingerprint = fingerprint_payload(
        {"n": g.n, "edges": list(g.edges),
         "pairs": [[p.s, p.t, list(p.vector)] for p in bg.pairs]})
    return report


def check_composed_properties(inst: ComposedInstance) -> AuditReport:
    """Verify subdivision length, pair count, and the edge partition."""
    report = AuditReport()
    g = inst.graph
    n_inner = inst.inner.graph.n
    p_count = len(inst.phi)
    report.add("z_formula", inst.z * p_count == n_inner,
               measured={"z": inst.z, "n_inner": n_inner, "phi_pairs": p_count})
    report.add("pair_count_matches_outer",
               len(inst.pairs) == len(inst.outer.pairs),
               measured={"pairs": len(inst.pairs),
                         "outer_pairs": len(inst.outer.pairs)})

    owner: dict[tuple[int, int], int] = {}
    collision = None
    for i, p in enumerate(inst.pairs):
        for e in _path_edges(p.path):
            if e in owner:
                collision = {"edge": e, "paths": (owner[e], i)}
                break
            owner[e] = i
        if collision:
            break
    orphan = None
    if collision is None and set(owner) != g.edge_set:
        extra = g.edge_set - set(owner)
        missing = set(owner) - g.edge_set
        orphan = {"unowned_edges": sorted(extra)[:5],
                  "phantom_edges": sorted(missing)[:5]}
    report.add("canonical_paths_partition_edges",
               collision is None and orphan is None,
               witness=collision or orphan,
               measured={"owned": len(owner), "edges": g.m})

    origin = inst.origin
    bad_sub = None
    for eidx, (tail, vec, head) in enumerate(origin.edge_table):
        s_i, t_i = inst.phi.pair_of[vec]
        chain = [origin.inner_vertex(tail, t_i)]
        chain += [origin.subdivision_vertex(eidx, j) for j in range(1, inst.z)]
        chain.append(origin.inner_vertex(head, s_i))
        if len(chain) != inst.z + 1:
            bad_sub = {"edge": eidx, "why": "length"}
            break
        if any(e not in g.edge_set for e in _path_edges(chain)):
            bad_sub = {"edge": eidx, "why": "missing edge"}
            break
    report.add("subdivided_paths_length_z", bad_sub is None, witness=bad_sub,
               measured={"subdivided_paths": len(origin.edge_table), "z": inst.z})

    used: dict[int, set[tuple[int, int]]] = {}
    dup = None
    for p in inst.pairs:
        inner_pair = inst.phi.pair_of[p.vector]
        copies = {v // n_inner for v in p.path if v < origin.sub_base}
        for copy in copies:
            bucket = used.setdefault(copy, set())
            if inner_pair in bucket:
                dup = {"copy": copy, "inner_pair": inner_pair}
                break
            bucket.add(inner_pair)
        if dup:
            break
    report.add("distinct_inner_paths_per_copy", dup is None, witness=dup)
    report.fingerprint = inst.fingerprint()
    return report


@dataclass
class GraphDistanceCheck:
    """Exhaustive displacement-vs-distance inequality check on an inner graph."""

    star_pair_index: int
    i_star: int
    v_star: tuple[int, int]
    base_length: int
    pair_count: int = 0
    failures: list = field(default_factory=list)
    min_margin: Fraction | None = None
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_graph_distance_property(inner: BaseGraph, star_pair_index: int = 0,
                                  keep_records: bool = False) -> GraphDistanceCheck:
    """For every source and admissible sink: (dy/i* + dx)/(r - c + i*) <= d.

    d is the BFS distance minus the star pair's canonical length, and the
    sinks are restricted to the coordinate class whose first coordinate
    lies in [x - r/2 + 1, x] (the ports that can meet a subdivided path).
    """
    star = inner.pairs[star_pair_index]
    i_star = inner.vectors.index(star.vector) + 1
    c = inner.meta.get("c", len(inner.vectors))
    r = inner.r
    denom = r - c + i_star
    base_len = len(star.path) - 1
    sx, sy = inner.coord(star.s)
    tx, ty = inner.coord(star.t)
    star_disp = (tx - sx, ty - sy)

    x, y = inner.x, inner.y
    sinks = [inner.vid(col, row)
             for col in range(x - r // 2 + 1, x + 1)
             for row in range(1, y + 1)]

    check = GraphDistanceCheck(star_pair_index=star_pair_index, i_star=i_star,
                               v_star=star.vector, base_length=base_len)
    g = inner.graph
    for s in inner.sources:
        dist = bfs_raw(g.adj, g.n, s)
        scol, srow = inner.coord(s)
        for t in sinks:
            if dist[t] < 0:
                continue
            tcol, trow = inner.coord(t)
            dx = (tcol - scol) - star_disp[0]
            dy = (trow - srow) - star_disp[1]
            d = dist[t] - base_len
            lhs = (Fraction(dy, i_star) + dx) / denom
            ok = lhs <= d
            check.pair_count += 1
            if check.min_margin is None or d - lhs < check.min_margin:
                check.min_margin = d - lhs
            rec = {"s": s, "t": t, "delta_x": dx, "delta_y": dy, "d": d,
                   "lhs": lhs, "rhs": d, "pass": ok}
            if not ok:
                check.failures.append(rec)
            if keep_records:
                check.records.append(rec)
    return check


_DELETION_POLICIES = ("one_edge_per_inner_copy", "half_of_path", "explicit")


def pair_inner_subpath_edges(inst: ComposedInstance, pair_index: int) -> dict[int, list]:
    """Inner-graph edges of the pair's canonical path, grouped per copy."""
    p = inst.pairs[pair_index]
    sub_base = inst.origin.sub_base
    n_inner = inst.origin.n_inner
    out: dict[int, list] = {}
    for a, b in zip(p.path, p.path[1:]):
        if a < sub_base and b < sub_base and a // n_inner == b // n_inner:
            out.setdefault(a // n_inner, []).append(_norm_edge(a, b))
    return out


def _subdivided_sequence(inst: ComposedInstance, path: list[int]) -> list[int]:
    """Ordered subdivided-path indices traversed, via vertex origins."""
    seq = []
    for v in path:
        kind, idx, _ = inst.origin.origin(v)
        if kind == "subdivision" and (not seq or seq[-1] != idx):
            seq.append(idx)
    return seq


def deletion_stretch_experiment(inst: ComposedInstance, pair_index: int,
                                policy: str, edges=None) -> dict:
    """Delete canonical-path edges and measure the pair's exact new distance.

    The surviving route is classified by whether it keeps the canonical
    subdivided-path sequence; a disconnected pair reports infinite stretch.
    """
    if policy not in _DELETION_POLICIES:
        raise ValueError(f"policy must be one of {_DELETION_POLICIES}")
    pair = inst.pairs[pair_index]
    path_edges = set(_path_edges(pair.path))
    per_copy = pair_inner_subpath_edges(inst, pair_index)
    if policy == "one_edge_per_inner_copy":
        deleted = {per_copy[c][0] for c in sorted(per_copy)}
    elif policy == "half_of_path":
        deleted = set(list(_path_edges(pair.path))[::2])
    else:
        if edges is None:
            raise ValueError("explicit policy needs an edge set")
        deleted = {_norm_edge(u, v) for u, v in edges}
    foreign = deleted - path_edges
    if foreign:
        raise NotSubgraphError(
            f"deleted edges must lie on the pair's canonical path: {sorted(foreign)[:3]}")

    g = inst.graph
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        if (u, v) not in deleted:
            adj[u].append(v)
            adj[v].append(u)

    d_before = len(pair.path) - 1
    dist, parent = _bfs_with_parent(adj, g.n, pair.s)
    record = {
        "pair_index": pair_index, "policy": policy,
        "deleted_edges": sorted(deleted), "deleted_count": len(deleted),
        "inner_copies_on_path": len(per_copy),
        "d_before": d_before, "z": inst.z,
    }
    if dist[pair.t] < 0:
        record.update({"d_after": None, "stretch": math.inf,
                       "case": "disconnected"})
        return record
    d_after = dist[pair.t]
    new_path = _walk_back(parent, pair.s, pair.t)
    same_seq = (_subdivided_sequence(inst, new_path)
                == _subdivided_sequence(inst, pair.path))
    record.update({
        "d_after": d_after, "stretch": d_after - d_before,
        "case": "same_subdivided_sequence" if same_seq else "detour",
    })
    return record


def _bfs_with_parent(adj, n, src):
    dist = [-1] * n
    parent = [-1] * n
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                parent[v] = u
                q.append(v)
    return dist, parent


def _walk_back(parent, src, dst):
    path = [dst]
    while path[-1] != src:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def parity_filter_candidate(inst: ComposedInstance) -> Graph:
    """Every other edge in sorted order: a deterministic half-size subgraph."""
    return Graph(inst.graph.n, inst.graph.edges[::2])


def pigeonhole_adversary(inst, candidate: Graph) -> dict:
    """Find the canonical pair with the largest missing-edge fraction.

    Because the canonical paths partition the edge set, any candidate with
    at most half the edges leaves some pair at least half missing; that
    pair's exact distortion in the candidate is measured by BFS. Works on
    any instance whose canonical paths own every edge (composed instances
    and base graphs alike).
    """
    if candidate.n != inst.graph.n:
        raise VertexSetMismatchError(
            f"candidate has {candidate.n} vertices, instance {inst.graph.n}")
    if candidate.weighted:
        raise NotSubgraphError("candidate must be an unweighted subgraph")
    foreign = candidate.edge_set - inst.graph.edge_set
    if foreign:
        raise NotSubgraphError(f"candidate contains foreign edges: {sorted(foreign)[:3]}")
    budget_met = 2 * candidate.m <= inst.graph.m

    cand = candidate.edge_set
    worst_idx = -1
    worst_frac = Fraction(-1)
    for i, p in enumerate(inst.pairs):
        total = len(p.path) - 1
        missing = sum(1 for e in _path_edges(p.path) if e not in cand)
        frac = Fraction(missing, total)
        if frac > worst_frac:
            worst_frac = frac
            worst_idx = i
    if budget_met and worst_frac < Fraction(1, 2):
        raise AssertionError(
            "pigeonhole broke: candidate within budget but every canonical "
            f"path is more than half present (worst fraction {worst_frac})")

    pair = inst.pairs[worst_idx]
    dist = bfs_raw(candidate.adj, candidate.n, pair.s)
    d_before = len(pair.path) - 1
    distortion = math.inf if dist[pair.t] < 0 else dist[pair.t] - d_before
    return {
        "budget_met": budget_met,
        "candidate_edges": candidate.m,
        "instance_edges": inst.graph.m,
        "pair_index": worst_idx,
        "missing_fraction": worst_frac,
        "d_before": d_before,
        "d_after": None if dist[pair.t] < 0 else dist[pair.t],
        "distortion": distortion,
    }
