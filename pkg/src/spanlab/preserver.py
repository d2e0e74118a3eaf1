"""Consistent shortest paths and exact pairwise distance preservers.

Consistency (any two paths meet in one contiguous stretch) is obtained by
making the shortest path of every pair unique: among minimum-length paths
we take the one whose edge-id set is lexicographically smallest, encoded
as the integer sum of 2**edge_id. That key is orientation-free, so
path(s, t) is always the reverse of path(t, s), and it is closed under
subpaths, which is what makes the whole family consistent.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import isqrt

from .errors import UnreachableError
from .graph import Graph, _norm_edge
from .report import AuditReport


def edge_bits(g: Graph) -> dict[tuple[int, int], int]:
    """Bit position per edge, assigned in sorted (min, max) order."""
    return {e: i for i, e in enumerate(g.edges)}


def _labels_unweighted(g: Graph, src: int, bits) -> tuple[list[int], list[int], list[int]]:
    """BFS distances plus minimal edge-set mask and parent per vertex."""
    n = g.n
    adj = g.adj
    dist = [-1] * n
    mask = [0] * n
    parent = [-1] * n
    dist[src] = 0
    from collections import deque
    q = deque([src])
    order = []
    while q:
        u = q.popleft()
        order.append(u)
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    # masks finalize in BFS (distance) order
    for u in order:
        if u == src:
            continue
        best = -1
        best_mask = None
        du = dist[u]
        for v in adj[u]:
            if dist[v] == du - 1:
                cand = mask[v] | (1 << bits[_norm_edge(u, v)])
                if best_mask is None or cand < best_mask:
                    best_mask = cand
                    best = v
        mask[u] = best_mask
        parent[u] = best
    return dist, mask, parent


def _labels_weighted(g: Graph, src: int, bits) -> tuple[list[int], list[int], list[int]]:
    """Dijkstra over (total weight, edge-set mask) lexicographic labels."""
    n = g.n
    wadj = g.wadj
    dist: list[int] = [-1] * n
    mask = [0] * n
    parent = [-1] * n
    dist[src] = 0
    heap = [(0, 0, src)]
    while heap:
        d, m, u = heapq.heappop(heap)
        if d != dist[u] or m != mask[u]:
            continue
        for v, w in wadj[u]:
            nd = d + w
            nm = m | (1 << bits[_norm_edge(u, v)])
            if dist[v] < 0 or (nd, nm) < (dist[v], mask[v]):
                dist[v] = nd
                mask[v] = nm
                parent[v] = u
                heapq.heappush(heap, (nd, nm, v))
    return dist, mask, parent


def shortest_path_labels(g: Graph, src: int, bits=None):
    if bits is None:
        bits = edge_bits(g)
    if g.weighted:
        return _labels_weighted(g, src, bits)
    return _labels_unweighted(g, src, bits)


def consistent_shortest_path(g: Graph, s: int, t: int, _labels=None) -> list[int]:
    """The canonical shortest (s, t)-path; deterministic and consistent.

    path(s, t) and path(t, s) are exact reverses because the selection key
    depends only on the edge set.
    """
    labels = _labels if _labels is not None else shortest_path_labels(g, s)
    dist, _, parent = labels
    if s == t:
        return [s]
    if dist[t] < 0:
        raise UnreachableError(f"no path between {s} and {t}")
    path = [t]
    v = t
    while v != s:
        v = parent[v]
        path.append(v)
    path.reverse()
    return path


@dataclass
class PathSystem:
    """A family of canonical shortest paths with their demand pairs."""

    paths: list[list[int]] = field(default_factory=list)
    pair_of: list[tuple[int, int]] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def add(self, pair: tuple[int, int], path: list[int]) -> None:
        self.paths.append(list(path))
        self.pair_of.append((min(pair), max(pair)))

    def __len__(self) -> int:
        return len(self.paths)

    def to_json(self) -> dict:
        return {"paths": [list(p) for p in self.paths],
                "pairs": [list(p) for p in self.pair_of],
                "stats": dict(self.stats)}


def build_preserver(g: Graph, pairs) -> tuple[Graph, PathSystem]:
    """Union of canonical shortest paths over the demand pairs.

    The subgraph preserves every demand distance exactly; the edge count is
    reported against the informational n + sqrt(n) * p budget.
    """
    norm_pairs = sorted({(min(u, v), max(u, v)) for u, v in pairs if u != v})
    bits = edge_bits(g)
    system = PathSystem()
    edges: set[tuple[int, int]] = set()
    labels_cache: dict[int, object] = {}
    for s, t in norm_pairs:
        if s not in labels_cache:
            labels_cache[s] = shortest_path_labels(g, s, bits)
        path = consistent_shortest_path(g, s, t, _labels=labels_cache[s])
        assert len(path) - 1 == labels_cache[s][0][t], "path length != d_G"
        system.add((s, t), path)
        for a, b in zip(path, path[1:]):
            edges.add(_norm_edge(a, b))
    subgraph = Graph(g.n, edges)
    budget = g.n + isqrt(g.n) * len(norm_pairs)
    system.stats = {"demand_pairs": len(norm_pairs),
                    "edges": len(edges),
                    "informational_budget": budget}
    return subgraph, system


def check_consistency(ps: PathSystem) -> AuditReport:
    """Verify every two paths share a single contiguous (or empty) stretch."""
    report = AuditReport()
    violations = []
    paths = ps.paths
    pos_maps = [{v: i for i, v in enumerate(p)} for p in paths]
    vsets = [set(p) for p in paths]
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            common = vsets[i] & vsets[j]
            if not common:
                continue
            for which, pos in ((i, pos_maps[i]), (j, pos_maps[j])):
                idx = sorted(pos[v] for v in common)
                if idx[-1] - idx[0] + 1 != len(idx):
                    violations.append(
                        {"paths": (i, j), "noncontiguous_in": which,
                         "common": sorted(common)[:8]})
                    break
    report.add("pairwise_contiguous_intersections", not violations,
               witness=violations[:5] if violations else None,
               measured={"path_count": len(paths), "violations": len(violations)})
    return report
