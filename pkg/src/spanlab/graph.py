"""Undirected graph type, exact shortest-path engines, and edge-list IO.

Vertices are integers ``0..n-1``. Edges are unordered pairs stored as
``(min, max)`` tuples. Weights, when present, are positive integers; all
distance computations stay in exact integer arithmetic. ``UNREACHABLE``
(``None``) is the only way an infinite distance is ever represented.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from .errors import CapExceededError, InvalidParamsError

UNREACHABLE = None

APSP_CAP_DEFAULT = 5000


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable-by-convention undirected graph.

    Invariants checked on construction: no self-loops, no parallel edges,
    endpoints in range, weights (if any) integers >= 1.
    """

    __slots__ = ("n", "edges", "weights", "_adj", "_wadj", "_edge_set")

    def __init__(self, vertex_count: int,
                 edges,
                 weights: dict[tuple[int, int], int] | None = None):
        if vertex_count < 0:
            raise InvalidParamsError("vertex_count must be non-negative")
        norm = sorted({_norm_edge(u, v) for u, v in edges})
        for u, v in norm:
            if u == v:
                raise InvalidParamsError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InvalidParamsError(f"edge ({u}, {v}) out of range")
        self.n = vertex_count
        self.edges: tuple[tuple[int, int], ...] = tuple(norm)
        if weights is not None:
            wnorm = {_norm_edge(u, v): w for (u, v), w in weights.items()}
            for e in self.edges:
                w = wnorm.get(e)
                if w is None:
                    raise InvalidParamsError(f"edge {e} has no weight")
                if not isinstance(w, int) or w < 1:
                    raise InvalidParamsError(f"edge {e} weight {w!r} is not a positive integer")
            if len(wnorm) != len(self.edges):
                raise InvalidParamsError("weights given for unknown edges")
            self.weights: dict[tuple[int, int], int] | None = wnorm
        else:
            self.weights = None
        self._adj = None
        self._wadj = None
        self._edge_set = None

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    @property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        if self._edge_set is None:
            self._edge_set = frozenset(self.edges)
        return self._edge_set

    @property
    def adj(self) -> list[list[int]]:
        if self._adj is None:
            adj = [[] for _ in range(self.n)]
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            self._adj = adj
        return self._adj

    @property
    def wadj(self) -> list[list[tuple[int, int]]]:
        """Adjacency with weights; weight 1 everywhere on unweighted graphs."""
        if self._wadj is None:
            wadj = [[] for _ in range(self.n)]
            for u, v in self.edges:
                w = 1 if self.weights is None else self.weights[(u, v)]
                wadj[u].append((v, w))
                wadj[v].append((u, w))
            self._wadj = wadj
        return self._wadj

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edge_set

    def weight(self, u: int, v: int) -> int:
        e = _norm_edge(u, v)
        if e not in self.edge_set:
            raise InvalidParamsError(f"no edge {e}")
        return 1 if self.weights is None else self.weights[e]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.edges == other.edges
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        kind = "weighted" if self.weighted else "unweighted"
        return f"Graph(n={self.n}, m={self.m}, {kind})"


@dataclass(frozen=True)
class DistanceVector:
    """Exact single-source distances; ``None`` marks unreachable vertices."""

    source: int
    dist: tuple[int | None, ...]


# -- raw engines (internal; -1 sentinel for speed) -----------------------

def bfs_raw(adj: list[list[int]], n: int, src: int,
            cutoff: int | None = None) -> list[int]:
    """Breadth-first distances as a list with ``-1`` for unreachable."""
    dist = [-1] * n
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        du = dist[u]
        if cutoff is not None and du >= cutoff:
            continue
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du + 1
                q.append(v)
    return dist


def dijkstra_raw(wadj: list[list[tuple[int, int]]], n: int, src: int) -> list[int]:
    """Non-negative integer Dijkstra; ``-1`` for unreachable."""
    dist = [-1] * n
    dist[src] = 0
    heap = [(0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in wadj[u]:
            nd = d + w
            if dist[v] < 0 or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def _to_sentinel(raw: list[int]) -> tuple[int | None, ...]:
    return tuple(d if d >= 0 else UNREACHABLE for d in raw)


# -- public operations ---------------------------------------------------

def sssp(g: Graph, s: int) -> DistanceVector:
    """Exact single-source distances from ``s`` (BFS or Dijkstra)."""
    if not 0 <= s < g.n:
        raise InvalidParamsError(f"source {s} out of range")
    raw = dijkstra_raw(g.wadj, g.n, s) if g.weighted else bfs_raw(g.adj, g.n, s)
    return DistanceVector(source=s, dist=_to_sentinel(raw))


def apsp(g: Graph, cap: int = APSP_CAP_DEFAULT) -> list[list[int | None]]:
    """All-pairs distances, row ``v`` equal to ``sssp(g, v)``. Audit use only."""
    if g.n > cap:
        raise CapExceededError(f"n={g.n} exceeds audit cap {cap}")
    if g.weighted:
        return [list(_to_sentinel(dijkstra_raw(g.wadj, g.n, s))) for s in range(g.n)]
    return [list(_to_sentinel(bfs_raw(g.adj, g.n, s))) for s in range(g.n)]


def ball(g: Graph, v: int, r: int) -> set[int]:
    """The set of vertices at distance at most ``r`` from ``v``."""
    if not 0 <= v < g.n:
        raise InvalidParamsError(f"vertex {v} out of range")
    if g.weighted:
        raw = dijkstra_raw(g.wadj, g.n, v)
        return {u for u, d in enumerate(raw) if 0 <= d <= r}
    raw = bfs_raw(g.adj, g.n, v, cutoff=r)
    return {u for u, d in enumerate(raw) if d >= 0}


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, list[int]]:
    """Induced subgraph with vertices relabeled ``0..|S|-1``.

    The relabel mapping (new id -> old id) is sorted, so it preserves the
    relative order of vertex ids and of ``(min, max)`` edge keys.
    """
    old_ids = sorted(set(vertices))
    for v in old_ids:
        if not 0 <= v < g.n:
            raise InvalidParamsError(f"vertex {v} out of range")
    rank = {v: i for i, v in enumerate(old_ids)}
    keep = set(old_ids)
    edges = []
    weights = {} if g.weighted else None
    for u, v in g.edges:
        if u in keep and v in keep:
            e = (rank[u], rank[v])
            edges.append(e)
            if weights is not None:
                weights[e] = g.weights[(u, v)]
    return Graph(len(old_ids), edges, weights), old_ids


# -- edge-list format ----------------------------------------------------

def dumps_edge_list(g: Graph) -> str:
    """Canonical text form: ``n m [weighted]`` then one sorted edge per line."""
    header = f"{g.n} {g.m} weighted" if g.weighted else f"{g.n} {g.m}"
    lines = [header]
    for u, v in g.edges:
        if g.weighted:
            lines.append(f"{u} {v} {g.weights[(u, v)]}")
        else:
            lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def loads_edge_list(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidParamsError("empty edge-list document")
    head = lines[0].split()
    if len(head) not in (2, 3) or (len(head) == 3 and head[2] != "weighted"):
        raise InvalidParamsError(f"bad header {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    weighted = len(head) == 3
    if len(lines) - 1 != m:
        raise InvalidParamsError(f"expected {m} edges, found {len(lines) - 1}")
    edges = []
    weights: dict[tuple[int, int], int] | None = {} if weighted else None
    for ln in lines[1:]:
        parts = ln.split()
        if weighted:
            u, v, w = int(parts[0]), int(parts[1]), int(parts[2])
            weights[_norm_edge(u, v)] = w
        else:
            u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
    return Graph(n, edges, weights)


def save_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_edge_list(g))


def load_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return loads_edge_list(fh.read())


def to_dot(g: Graph, name: str = "G",
           highlight: set[tuple[int, int]] | None = None) -> str:
    """DOT rendering for small instances; highlighted edges drawn bold."""
    out = [f"graph {name} {{"]
    highlight = {_norm_edge(u, v) for u, v in (highlight or set())}
    for u, v in g.edges:
        attrs = []
        if g.weighted:
            attrs.append(f'label="{g.weights[(u, v)]}"')
        if (u, v) in highlight:
            attrs.append("style=bold color=red")
        suffix = f" [{' '.join(attrs)}]" if attrs else ""
        out.append(f"  {u} -- {v}{suffix};")
    out.append("}")
    return "\n".join(out) + "\n"
