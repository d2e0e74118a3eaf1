"""Deterministic seeded graph generators for desk-scale experiments."""
from __future__ import annotations

import random
from math import isqrt

from .errors import InvalidParamsError
from .graph import Graph

KINDS = ("gnm", "cycle", "path", "grid", "tree")


def _pair_from_index(n: int, i: int) -> tuple[int, int]:
    # inverse of the (u, v), u < v enumeration ordered by u then v
    def offset(u: int) -> int:
        return u * (2 * n - u - 1) // 2

    u = (2 * n - 1 - isqrt((2 * n - 1) ** 2 - 8 * i)) // 2
    while u + 1 < n and offset(u + 1) <= i:
        u += 1
    while u > 0 and offset(u) > i:
        u -= 1
    v = i - offset(u) + u + 1
    return u, v


def gen_graph(kind: str, *, n: int | None = None, m: int | None = None,
              rows: int | None = None, cols: int | None = None,
              seed: int = 0) -> Graph:
    """Generate a named graph family member, deterministic for a fixed seed."""
    if kind == "gnm":
        if n is None or m is None or n < 0 or m < 0:
            raise InvalidParamsError("gnm requires n >= 0 and m >= 0")
        total = n * (n - 1) // 2
        if m > total:
            raise InvalidParamsError(f"m={m} exceeds max {total} for n={n}")
        rng = random.Random(seed)
        idx = rng.sample(range(total), m)
        return Graph(n, [_pair_from_index(n, i) for i in idx])
    if kind == "cycle":
        if n is None or n < 3:
            raise InvalidParamsError("cycle requires n >= 3")
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "path":
        if n is None or n < 1:
            raise InvalidParamsError("path requires n >= 1")
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "grid":
        if rows is None or cols is None or rows < 1 or cols < 1:
            raise InvalidParamsError("grid requires rows >= 1 and cols >= 1")
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        return Graph(rows * cols, edges)
    if kind == "tree":
        if n is None or n < 1:
            raise InvalidParamsError("tree requires n >= 1")
        if n == 1:
            return Graph(1, [])
        if n == 2:
            return Graph(2, [(0, 1)])
        rng = random.Random(seed)
        prufer = [rng.randrange(n) for _ in range(n - 2)]
        degree = [1] * n
        for v in prufer:
            degree[v] += 1
        edges = []
        leaves = [v for v in range(n) if degree[v] == 1]
        import heapq
        heapq.heapify(leaves)
        for v in prufer:
            leaf = heapq.heappop(leaves)
            edges.append((leaf, v))
            degree[v] -= 1
            if degree[v] == 1:
                heapq.heappush(leaves, v)
        u = heapq.heappop(leaves)
        v = heapq.heappop(leaves)
        edges.append((u, v))
        return Graph(n, edges)
    raise InvalidParamsError(f"unknown kind {kind!r}; expected one of {KINDS}")
