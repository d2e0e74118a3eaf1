"""Canonical shortest paths, preservers, and the consistency checker."""
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import spanlab as sl
from spanlab.errors import UnreachableError
from spanlab.graph import bfs_raw
from spanlab.preserver import PathSystem


def test_unique_path_on_path_graph():
    g = sl.gen_graph("path", n=4)
    assert sl.consistent_shortest_path(g, 0, 3) == [0, 1, 2, 3]


def test_c4_tie_breaks_through_low_vertex():
    g = sl.gen_graph("cycle", n=4)
    assert sl.consistent_shortest_path(g, 0, 2) == [0, 1, 2]


def test_k4_direct_edge():
    k4 = sl.Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert sl.consistent_shortest_path(k4, 0, 1) == [0, 1]


def test_unreachable_raises():
    g = sl.Graph(3, [(0, 1)])
    with pytest.raises(UnreachableError):
        sl.consistent_shortest_path(g, 0, 2)


def test_weighted_paths_supported():
    g = sl.Graph(3, [(0, 1), (1, 2), (0, 2)],
                 {(0, 1): 1, (1, 2): 1, (0, 2): 3})
    # two routes of weight 2 vs 3: min weight wins outright
    assert sl.consistent_shortest_path(g, 0, 2) == [0, 1, 2]


@given(st.integers(6, 28), st.integers(0, 6))
@settings(max_examples=30, deadline=None)
def test_reversal_and_determinism(n, seed):
    g = sl.gen_graph("gnm", n=n, m=min(2 * n, n * (n - 1) // 2), seed=seed)
    dist = bfs_raw(g.adj, g.n, 0)
    targets = [v for v in range(1, n) if dist[v] > 0]
    for t in targets[:5]:
        p1 = sl.consistent_shortest_path(g, 0, t)
        p2 = sl.consistent_shortest_path(g, t, 0)
        assert p1 == p2[::-1]
        assert p1 == sl.consistent_shortest_path(g, 0, t)
        assert len(p1) - 1 == dist[t]


@given(st.integers(8, 24), st.integers(0, 5))
@settings(max_examples=20, deadline=None)
def test_subpath_closure(n, seed):
    """Subpaths of canonical paths are canonical: the consistency engine."""
    g = sl.gen_graph("gnm", n=n, m=min(3 * n, n * (n - 1) // 2), seed=seed)
    dist = bfs_raw(g.adj, g.n, 0)
    targets = [v for v in range(1, n) if dist[v] > 1]
    for t in targets[:3]:
        path = sl.consistent_shortest_path(g, 0, t)
        for i in range(len(path)):
            for j in range(i + 1, len(path)):
                sub = sl.consistent_shortest_path(g, path[i], path[j])
                assert sub == path[i:j + 1]


def test_build_preserver_empty():
    g = sl.gen_graph("cycle", n=5)
    sub, system = sl.build_preserver(g, [])
    assert sub.m == 0 and len(system) == 0


def test_build_preserver_tree_exactness():
    tree = sl.gen_graph("tree", n=30, seed=7)
    pairs = [(0, 29), (3, 17), (11, 23)]
    sub, system = sl.build_preserver(tree, pairs)
    for (s, t), path in zip(system.pair_of, system.paths):
        assert len(path) - 1 == bfs_raw(tree.adj, tree.n, s)[t]
    assert sub.edge_set <= tree.edge_set


def test_build_preserver_gnm_exact():
    g = sl.gen_graph("gnm", n=200, m=800, seed=3)
    rng = random.Random(3)
    pairs = set()
    while len(pairs) < 14:
        u, v = rng.randrange(200), rng.randrange(200)
        if u != v:
            pairs.add((min(u, v), max(u, v)))
    sub, system = sl.build_preserver(g, sorted(pairs))
    for s, t in system.pair_of:
        assert bfs_raw(sub.adj, sub.n, s)[t] == bfs_raw(g.adj, g.n, s)[t]
    assert system.stats["edges"] <= system.stats["informational_budget"]
    report = sl.check_consistency(system)
    assert report.passed


def test_check_consistency_trivial_cases():
    single = PathSystem()
    single.add((0, 3), [0, 1, 2, 3])
    assert sl.check_consistency(single).passed

    disjoint = PathSystem()
    disjoint.add((0, 1), [0, 1])
    disjoint.add((2, 3), [2, 3])
    assert sl.check_consistency(disjoint).passed


def test_check_consistency_flags_violation():
    # two paths share {0, 2} but not the middle vertex
    bad = PathSystem()
    bad.add((0, 2), [0, 1, 2])
    bad.add((0, 2), [0, 3, 2])
    rep = sl.check_consistency(bad)
    assert not rep.passed
    assert rep.checks[0].measured["violations"] >= 1


def test_check_consistency_five_vertex_counterexample():
    # paths meet at a and c without the between vertex b
    ps = PathSystem()
    ps.add((0, 4), [0, 1, 2, 3, 4])   # a=1, b=2, c=3 inside
    ps.add((1, 3), [1, 5, 3])
    rep = sl.check_consistency(ps)
    assert not rep.passed
