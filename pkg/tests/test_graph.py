"""Graph type, exact engines, generators, and edge-list IO."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import spanlab as sl
from spanlab.errors import CapExceededError, InvalidParamsError


def test_graph_rejects_self_loops_and_range():
    with pytest.raises(InvalidParamsError):
        sl.Graph(3, [(0, 0)])
    with pytest.raises(InvalidParamsError):
        sl.Graph(3, [(0, 3)])
    with pytest.raises(InvalidParamsError):
        sl.Graph(3, [(0, 1)], {(0, 1): 0})


def test_graph_dedupes_parallel_edges():
    g = sl.Graph(3, [(0, 1), (1, 0), (1, 2)])
    assert g.m == 2


def test_sssp_path_graph():
    g = sl.gen_graph("path", n=3)
    assert sl.sssp(g, 0).dist == (0, 1, 2)


def test_sssp_disconnected_sentinel():
    g = sl.Graph(2, [])
    assert sl.sssp(g, 0).dist == (0, sl.UNREACHABLE)


def test_sssp_weighted_triangle():
    g = sl.Graph(3, [(0, 1), (1, 2), (0, 2)],
                 {(0, 1): 5, (1, 2): 1, (0, 2): 3})
    assert sl.sssp(g, 0).dist == (0, 4, 3)


def test_apsp_examples():
    k3 = sl.Graph(3, [(0, 1), (1, 2), (0, 2)])
    mat = sl.apsp(k3)
    assert all(mat[i][j] == 1 for i in range(3) for j in range(3) if i != j)

    empty = sl.Graph(2, [])
    assert sl.apsp(empty)[0][1] is sl.UNREACHABLE

    c6 = sl.gen_graph("cycle", n=6)
    assert sl.apsp(c6)[0][3] == 3


def test_apsp_cap():
    g = sl.gen_graph("path", n=10)
    with pytest.raises(CapExceededError):
        sl.apsp(g, cap=5)


def test_ball_examples():
    g = sl.gen_graph("path", n=4)
    assert sl.ball(g, 2, 0) == {2}
    assert sl.ball(g, 1, 1) == {0, 1, 2}
    c6 = sl.gen_graph("cycle", n=6)
    assert sl.ball(c6, 0, 2) == {0, 1, 2, 4, 5}


def test_induced_subgraph_examples():
    c6 = sl.gen_graph("cycle", n=6)
    full, mapping = sl.induced_subgraph(c6, range(6))
    assert full == c6 and mapping == list(range(6))

    k4 = sl.Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    sub, mapping = sl.induced_subgraph(k4, {0, 1})
    assert sub.edges == ((0, 1),) and mapping == [0, 1]

    sub2, _ = sl.induced_subgraph(c6, {0, 1, 2})
    assert sub2.edges == ((0, 1), (1, 2))


def test_induced_subgraph_keeps_weights():
    g = sl.Graph(3, [(0, 1), (1, 2)], {(0, 1): 2, (1, 2): 5})
    sub, mapping = sl.induced_subgraph(g, {1, 2})
    assert mapping == [1, 2]
    assert sub.weights == {(0, 1): 5}


# -- generators ------------------------------------------------------------

def test_gen_cycle_degrees():
    g = sl.gen_graph("cycle", n=6)
    assert g.m == 6 and all(g.degree(v) == 2 for v in range(6))


def test_gen_gnm_edgeless():
    g = sl.gen_graph("gnm", n=10, m=0)
    assert g.m == 0


def test_gen_gnm_deterministic():
    a = sl.gen_graph("gnm", n=50, m=100, seed=7)
    b = sl.gen_graph("gnm", n=50, m=100, seed=7)
    assert a.edges == b.edges
    c = sl.gen_graph("gnm", n=50, m=100, seed=8)
    assert a.edges != c.edges


def test_gen_gnm_params_checked():
    with pytest.raises(InvalidParamsError):
        sl.gen_graph("gnm", n=4, m=7)
    with pytest.raises(InvalidParamsError):
        sl.gen_graph("nonsense", n=4)


def test_gen_grid_and_tree():
    grid = sl.gen_graph("grid", rows=3, cols=4)
    assert grid.n == 12 and grid.m == 3 * 3 + 2 * 4
    tree = sl.gen_graph("tree", n=20, seed=1)
    assert tree.m == 19
    assert all(d is not None for d in sl.sssp(tree, 0).dist)


@given(st.integers(2, 40), st.data())
@settings(max_examples=40, deadline=None)
def test_gnm_pairs_distinct_and_in_range(n, data):
    max_m = n * (n - 1) // 2
    m = data.draw(st.integers(0, min(max_m, 60)))
    seed = data.draw(st.integers(0, 10))
    g = sl.gen_graph("gnm", n=n, m=m, seed=seed)
    assert g.m == m
    assert all(0 <= u < v < n for u, v in g.edges)


# -- spec invariant: triangle inequality with tightness ----------------------

@given(st.integers(2, 25), st.integers(0, 60), st.integers(0, 5))
@settings(max_examples=30, deadline=None)
def test_sssp_triangle_inequality_and_tightness(n, m, seed):
    m = min(m, n * (n - 1) // 2)
    g = sl.gen_graph("gnm", n=n, m=m, seed=seed)
    dist = sl.sssp(g, 0).dist
    for u, v in g.edges:
        if dist[u] is not None and dist[v] is not None:
            assert abs(dist[u] - dist[v]) <= 1
    for v in range(1, n):
        if dist[v] is not None:
            assert any(dist[u] is not None and dist[u] == dist[v] - 1
                       for u in g.adj[v])


# -- edge-list IO -----------------------------------------------------------

def test_edge_list_roundtrip_unweighted(tmp_path):
    g = sl.gen_graph("gnm", n=20, m=40, seed=3)
    p = tmp_path / "g.el"
    sl.save_edge_list(g, p)
    text1 = p.read_text()
    g2 = sl.load_edge_list(p)
    assert g2 == g
    sl.save_edge_list(g2, p)
    assert p.read_text() == text1


def test_edge_list_roundtrip_weighted(tmp_path):
    g = sl.Graph(4, [(0, 1), (2, 3)], {(0, 1): 7, (2, 3): 2})
    p = tmp_path / "w.el"
    sl.save_edge_list(g, p)
    assert sl.load_edge_list(p) == g
    assert "weighted" in p.read_text().splitlines()[0]


def test_edge_list_rejects_malformed():
    with pytest.raises(InvalidParamsError):
        sl.loads_edge_list("")
    with pytest.raises(InvalidParamsError):
        sl.loads_edge_list("2 1 banana\n0 1\n")
    with pytest.raises(InvalidParamsError):
        sl.loads_edge_list("2 2\n0 1\n")


def test_to_dot_mentions_edges():
    g = sl.Graph(3, [(0, 1), (1, 2)])
    dot = sl.to_dot(g, highlight={(1, 2)})
    assert "0 -- 1" in dot and "1 -- 2" in dot and "bold" in dot
