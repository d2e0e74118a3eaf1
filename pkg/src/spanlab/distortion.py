"""Exact distortion auditing and the greedy multiplicative baseline."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, log2

from .errors import (
    CapExceededError,
    DisconnectedPairError,
    InvalidParamsError,
    NotSubgraphError,
    UndershootError,
    VertexSetMismatchError,
)
from .graph import APSP_CAP_DEFAULT, Graph, bfs_raw, dijkstra_raw


@dataclass
class DistortionReport:
    """Result of an exact additive-distortion audit.

    ``max_additive`` is the maximum of d_H - d_G over the checked pairs;
    ``argmax_pair`` attains it. ``subgraph_ok`` is meaningful in spanner
    mode only (``require_subgraph=True``).
    """

    max_additive: int
    argmax_pair: tuple[int, int] | None
    pair_count_checked: int
    histogram: dict[int, int] = field(default_factory=dict)
    subgraph_ok: bool | None = None


def additive_distortion(g: Graph, h: Graph,
                        pairs=None,
                        require_subgraph: bool = False,
                        cap: int = APSP_CAP_DEFAULT) -> DistortionReport:
    """Exact max over pairs of d_H - d_G (all pairs when ``pairs`` is None).

    ``h`` may carry weights (emulator mode). Raises ``UndershootError`` if
    any d_H < d_G, and ``DisconnectedPairError`` if a pair reachable in
    ``g`` is unreachable in ``h``: an audit never maps infinity to a number.
    """
    if h.n != g.n:
        raise VertexSetMismatchError(f"g has {g.n} vertices, h has {h.n}")
    subgraph_ok = None
    if require_subgraph:
        if h.weighted:
            raise NotSubgraphError("subgraph mode requires an unweighted h")
        foreign = h.edge_set - g.edge_set
        if foreign:
            raise NotSubgraphError(f"h contains non-g edges, e.g. {sorted(foreign)[0]}")
        subgraph_ok = True

    if pairs is None:
        if g.n > cap:
            raise CapExceededError(f"all-pairs audit above cap {cap}")
        sources = range(g.n)
    else:
        pairs = [(min(u, v), max(u, v)) for u, v in pairs]
        sources = sorted({u for u, _ in pairs})
        by_source: dict[int, list[int]] = {}
        for u, v in pairs:
            by_source.setdefault(u, []).append(v)

    max_add = 0
    argmax = None
    count = 0
    hist: dict[int, int] = {}
    for s in sources:
        dg = dijkstra_raw(g.wadj, g.n, s) if g.weighted else bfs_raw(g.adj, g.n, s)
        dh = dijkstra_raw(h.wadj, h.n, s) if h.weighted else bfs_raw(h.adj, h.n, s)
        targets = range(s + 1, g.n) if pairs is None else by_source[s]
        for t in targets:
            if dg[t] < 0:
                continue
            if dh[t] < 0:
                raise DisconnectedPairError(f"pair ({s}, {t}) unreachable in h")
            add = dh[t] - dg[t]
            if add < 0:
                raise UndershootError(f"pair ({s}, {t}): d_H={dh[t]} < d_G={dg[t]}")
            count += 1
            hist[add] = hist.get(add, 0) + 1
            if argmax is None or add > max_add:
                max_add, argmax = add, (s, t)
    return DistortionReport(max_additive=max_add, argmax_pair=argmax,
                            pair_count_checked=count, histogram=hist,
                            subgraph_ok=subgraph_ok)


def default_stretch_parameter(n: int) -> int:
    return max(1, ceil(log2(max(n, 2))))


def multiplicative_spanner(g: Graph, k: int | None = None) -> Graph:
    """Greedy multiplicative spanner: keep (u, v) iff current d_H(u, v) > 2k-1.

    Edges are scanned in sorted (min, max) order, so output is deterministic.
    The result satisfies d_H(s, t) <= (2k-1) d_G(s, t) for all pairs.
    """
    if g.weighted:
        raise InvalidParamsError("multiplicative spanner expects an unweighted graph")
    if k is None:
        k = default_stretch_parameter(g.n)
    if k < 1:
        raise InvalidParamsError("k must be a positive integer")
    threshold = 2 * k - 1
    adj: list[list[int]] = [[] for _ in range(g.n)]
    kept = []
    for u, v in g.edges:
        if _bounded_dist_exceeds(adj, u, v, threshold):
            adj[u].append(v)
            adj[v].append(u)
            kept.append((u, v))
    return Graph(g.n, kept)


def _bounded_dist_exceeds(adj: list[list[int]], src: int, dst: int,
                          limit: int) -> bool:
    """True iff d(src, dst) > limit in the partial graph; early-exit BFS."""
    if src == dst:
        return False
    seen = {src: 0}
    frontier = [src]
    depth = 0
    while frontier and depth < limit:
        depth += 1
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in seen:
                    if v == dst:
                        return False
                    seen[v] = depth
                    nxt.append(v)
        frontier = nxt
    return True
