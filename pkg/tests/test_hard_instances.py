"""Base graphs, inner/outer instantiation, the port bijection, composition."""
import pytest

import spanlab as sl
from spanlab.convex import ConvexVectorSet
from spanlab.errors import (
    CardinalityMismatchError,
    DivisibilityViolationError,
    NonIntegralZError,
    SpecViolationError,
)
from spanlab.hard_instances import (
    base_graph_from_json,
    base_graph_to_json,
    build_outer_graph,
    composed_from_json,
    composed_to_json,
    default_outer_shape,
    outer_preset_vectors,
    asymptotic_inner_parameters,
)


def test_base_graph_8x8_example():
    spec = sl.BaseGraphSpec(x=8, y=8, r=2, vectors=((1, 0), (2, 1)))
    bg = sl.build_base_graph(spec)
    assert len(bg.pairs) == len(bg.sources) * 2 == 8
    by_key = {(bg.coord(p.s), p.vector): p for p in bg.pairs}
    horizontal = by_key[((1, 1), (1, 0))]
    assert bg.coord(horizontal.t) == (8, 1)
    assert len(horizontal.path) - 1 == 7
    diagonal = by_key[((1, 1), (2, 1))]
    assert bg.coord(diagonal.t) == (7, 4)
    assert len(diagonal.path) - 1 == 3


def test_base_graph_spec_violations():
    with pytest.raises(SpecViolationError):   # r > x/4
        sl.build_base_graph(sl.BaseGraphSpec(x=7, y=8, r=2, vectors=((1, 0),)))
    with pytest.raises(SpecViolationError):   # vector steeper than 45 degrees
        sl.build_base_graph(sl.BaseGraphSpec(x=8, y=20, r=2, vectors=((1, 2),)))
    with pytest.raises(SpecViolationError):   # first coordinate below r/2
        sl.build_base_graph(sl.BaseGraphSpec(x=16, y=8, r=4, vectors=((1, 0),)))
    with pytest.raises(SpecViolationError):   # angle bound tan <= y/(2x)
        sl.build_base_graph(sl.BaseGraphSpec(x=8, y=8, r=2, vectors=((2, 2),)))
    with pytest.raises(SpecViolationError):   # not strongly convex
        sl.build_base_graph(sl.BaseGraphSpec(x=16, y=8, r=2,
                                             vectors=((1, 0), (2, 0))))


def test_inner_vector_set_formula():
    assert sl.inner_vector_set(2, 4) == [(3, 3), (4, 2)]
    assert sl.inner_vector_set(1, 2) == [(2, 1)]
    assert sl.inner_vector_set(3, 8) == [(6, 6), (7, 5), (8, 3)]


def test_inner_graph_c2_preset():
    bg = sl.build_inner_graph(2, 4, 26, 52)
    assert bg.graph.n == 1352
    assert len(bg.pairs) == 104
    shift = 26 - 2
    for p in bg.pairs:
        assert bg.coord(p.t)[0] - bg.coord(p.s)[0] == shift


def test_inner_graph_divisibility_violation():
    with pytest.raises(DivisibilityViolationError):
        sl.build_inner_graph(2, 4, 27, 52)
    with pytest.raises(SpecViolationError):
        sl.build_inner_graph(2, 3, 26, 52)   # odd r


def test_asymptotic_scale_parameters_admissible():
    params = asymptotic_inner_parameters(2)
    assert params["r_i"] == 2 ** 102
    lam = params["lambda"]
    assert (params["x_i"] - params["r_i"] // 2) % lam == 0
    assert params["x_i"] >= 4 * params["r_i"]
    # steepest inner vector fits the grid: tan psi <= y / (2x)
    v1, v2 = params["steepest_vector"]
    assert 2 * params["x_i"] * v2 <= params["y_i"] * v1


def test_outer_default_shape():
    for n_o in (8, 50, 128, 1000):
        x, y = default_outer_shape(n_o)
        assert y == 2 * x and x * y >= n_o


def test_outer_tiny_example():
    striped = outer_preset_vectors("tiny")
    bg = build_outer_graph(8, 16, striped)
    assert len(bg.pairs) == 2 * (2 // 2) * (16 // 2) == 16
    with pytest.raises(SpecViolationError):
        build_outer_graph(7, 16, striped)   # r_O > x_O/4


def test_default_phi_stripe_alignment(inner_c2):
    W = sl.build_striped_set(200, 2, psi1=0.5, psi2=0.02)
    phi, trimmed = sl.default_phi(W, inner_c2)
    assert len(phi.vectors) == 2 * phi.stripes[0].__len__()
    # exhaustive stripe/inner-vector agreement over all ordered pairs
    inner_vec = {v: inner_c2.vectors.index(
        next(p for p in inner_c2.pairs if (p.s, p.t) == phi.pair_of[v]).vector)
        for v in phi.vectors}
    stripe_of = {}
    for i, stripe in enumerate(phi.stripes):
        for j in stripe:
            stripe_of[phi.vectors[j]] = i
    for u in phi.vectors:
        for v in phi.vectors:
            assert (stripe_of[u] == stripe_of[v]) == (inner_vec[u] == inner_vec[v])


def test_default_phi_cardinality_errors(inner_c2):
    W = sl.build_striped_set(200, 3, psi1=0.5, psi2=0.02)
    with pytest.raises(CardinalityMismatchError):   # 3 stripes vs c=2
        sl.default_phi(W, inner_c2)
    W2 = sl.build_striped_set(200, 2, psi1=0.5, psi2=0.02)
    unequal = ConvexVectorSet(r=200, vectors=W2.vectors,
                              stripes=[W2.stripes[0][:-1], W2.stripes[1]],
                              psi2=W2.psi2, beta=W2.beta)
    with pytest.raises(CardinalityMismatchError):   # unequal stripe sizes
        sl.default_phi(unequal, inner_c2)


def test_compose_rejects_non_integral_z():
    inner = sl.build_inner_graph(1, 2, 9, 11)   # 99 vertices, 2 matched pairs
    striped = ConvexVectorSet(r=2, vectors=[(2, 0), (1, 1)],
                              stripes=[[0, 1]], psi2=0.0, beta=2)
    phi, trimmed = sl.default_phi(striped, inner)
    outer = build_outer_graph(8, 16, trimmed)
    with pytest.raises(NonIntegralZError):
        sl.compose(outer, inner, phi)


def test_tiny_composed_shape(tiny_instance):
    inst = tiny_instance
    assert inst.graph.n == 227056
    assert inst.graph.m == 54608
    assert inst.z == 676
    assert len(inst.pairs) == len(inst.outer.pairs) == 16
    lengths = sorted({len(p.path) - 1 for p in inst.pairs})
    # h * (inner path + z) for outer hop counts h = 3 and 7
    assert lengths == [3 * (8 + 676), 7 * (6 + 676)]


def test_tiny_composed_vertex_origin(tiny_instance):
    inst = tiny_instance
    origin = inst.origin
    seen = set()
    p = inst.pairs[0]
    for v in p.path:
        kind, a, b = origin.origin(v)
        seen.add(kind)
        if kind == "inner":
            assert origin.inner_vertex(a, b) == v
        else:
            assert origin.subdivision_vertex(a, b) == v
    assert seen == {"inner", "subdivision"}


def test_small_composed_preset_valid():
    inst = sl.composed_preset("small")
    assert inst.graph.n == 454176 and inst.z == 676
    assert len(inst.pairs) == len(inst.outer.pairs) == 24
    rep = sl.check_composed_properties(inst)
    assert rep.passed


def test_z_formula_arithmetic_example():
    bg = sl.inner_preset("c2-wide")
    assert bg.graph.n == 3120
    assert len(bg.pairs) == 208
    assert bg.graph.n // len(bg.pairs) == 15


def test_base_graph_json_roundtrip():
    bg = sl.inner_preset("c1")
    doc = base_graph_to_json(bg)
    back = base_graph_from_json(doc, bg.graph)
    assert back.pairs[0].path == bg.pairs[0].path
    assert back.vectors == bg.vectors


def test_composed_to_dot_clusters():
    # small c1-based instance keeps the rendering readable
    inner = sl.build_inner_graph(1, 2, 9, 10)
    striped = ConvexVectorSet(r=2, vectors=[(2, 0), (1, 1)],
                              stripes=[[0, 1]], psi2=0.0, beta=2)
    phi, trimmed = sl.default_phi(striped, inner)
    outer = build_outer_graph(8, 16, trimmed)
    inst = sl.compose(outer, inner, phi)
    from spanlab.hard_instances import composed_to_dot
    dot = composed_to_dot(inst)
    assert "subgraph cluster_0" in dot
    # one cluster per copy that kept at least one inner edge after pruning
    n_inner, sub_base = inst.origin.n_inner, inst.origin.sub_base
    copies_with_edges = {
        a // n_inner
        for p in inst.pairs for a, b in zip(p.path, p.path[1:])
        if a < sub_base and b < sub_base and a // n_inner == b // n_inner}
    assert dot.count("subgraph") == len(copies_with_edges)


def test_composed_bundle_roundtrip(tiny_instance):
    doc = composed_to_json(tiny_instance)
    back = composed_from_json(doc, tiny_instance.graph)
    assert back.z == tiny_instance.z
    assert back.fingerprint() == tiny_instance.fingerprint()
    # tampered sidecar is rejected via the fingerprint
    doc_bad = composed_to_json(tiny_instance)
    doc_bad["z"] = tiny_instance.z + 1
    with pytest.raises(SpecViolationError):
        composed_from_json(doc_bad, tiny_instance.graph)
