"""Hard-instance generators: grid base graphs and the obstacle product.

A base graph lives on the grid [1, x] x [1, y]. Each source in the box
S = [1, r/2] x [1, y/2] shoots one canonical path per vector of a strongly
convex set W; the graph's edges are exactly the union of those paths, which
makes every canonical path the unique shortest path between its endpoints.
The composed instance replaces each outer-graph vertex with an inner-graph
copy, wires outer edges into per-vector input/output ports via a bijection
phi, subdivides every outer edge into a length-z path, and prunes inner
edges that no composed canonical path uses, so the canonical paths
partition the final edge set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .convex import ConvexVectorSet, Vec, check_strong_convexity, verify_stripes
from .errors import (
    CardinalityMismatchError,
    DivisibilityViolationError,
    NonIntegralZError,
    PortCollisionError,
    SpecViolationError,
)
from .graph import Graph
from .report import fingerprint_payload


@dataclass(frozen=True)
class BaseGraphSpec:
    x: int
    y: int
    r: int
    vectors: tuple[Vec, ...]

    def validate(self) -> None:
        if self.x < 1 or self.y < 1 or self.r < 1:
            raise SpecViolationError("x, y, r must be positive")
        if 4 * self.r > self.x:
            raise SpecViolationError(f"need r <= x/4, got r={self.r}, x={self.x}")
        if not self.vectors:
            raise SpecViolationError("vector set is empty")
        for v1, v2 in self.vectors:
            if v1 <= 0 or v2 < 0:
                raise SpecViolationError(f"vector ({v1}, {v2}) outside the first quadrant")
            if v2 > v1:
                raise SpecViolationError(f"vector ({v1}, {v2}) exceeds 45 degrees")
            if not (2 * v1 >= self.r and v1 <= self.r):
                raise SpecViolationError(
                    f"vector ({v1}, {v2}) first coordinate outside [r/2, r]")
            # tan(psi) <= y / (2x), cross-multiplied
            if 2 * self.x * v2 > self.y * v1:
                raise SpecViolationError(
                    f"vector ({v1}, {v2}) too steep for grid {self.x} x {self.y}")
        ok, witness = check_strong_convexity(list(self.vectors))
        if not ok:
            raise SpecViolationError(f"vector set not strongly convex at {witness}")


@dataclass
class CriticalPair:
    s: int
    t: int
    vector: Vec
    path: list[int]


@dataclass
class BaseGraph:
    graph: Graph
    x: int
    y: int
    r: int
    vectors: list[Vec]
    sources: list[int]              # the S box, by vertex id
    sinks: list[int]                # the T box, by vertex id
    pairs: list[CriticalPair]
    meta: dict = field(default_factory=dict)

    def vid(self, col: int, row: int) -> int:
        return (col - 1) * self.y + (row - 1)

    def coord(self, v: int) -> tuple[int, int]:
        col, row = divmod(v, self.y)
        return col + 1, row + 1

    def pairs_by_vector(self) -> dict[Vec, list[CriticalPair]]:
        out: dict[Vec, list[CriticalPair]] = {v: [] for v in self.vectors}
        for p in self.pairs:
            out[p.vector].append(p)
        return out


def build_base_graph(spec: BaseGraphSpec) -> BaseGraph:
    """Instantiate the grid template; parameter violations are errors."""
    spec.validate()
    x, y, r = spec.x, spec.y, spec.r

    def vid(col, row):
        return (col - 1) * y + (row - 1)

    sources = [vid(sx, sy) for sx in range(1, r // 2 + 1)
               for sy in range(1, y // 2 + 1)]
    sinks = [vid(tx, ty) for tx in range(x - r, x + 1) for ty in range(1, y + 1)]
    pairs: list[CriticalPair] = []
    edges: set[tuple[int, int]] = set()
    for sx in range(1, r // 2 + 1):
        for sy in range(1, y // 2 + 1):
            for w in spec.vectors:
                k = (x - sx) // w[0]
                if k < 1:
                    raise SpecViolationError(
                        f"no room for vector {w} from source ({sx}, {sy})")
                pts = [(sx + i * w[0], sy + i * w[1]) for i in range(k + 1)]
                tx, ty = pts[-1]
                if not (x - r <= tx <= x and 1 <= ty <= y):
                    raise SpecViolationError(
                        f"endpoint ({tx}, {ty}) escaped the sink box for vector {w}")
                path = [vid(px, py) for px, py in pts]
                for a, b in zip(path, path[1:]):
                    edges.add((a, b) if a < b else (b, a))
                pairs.append(CriticalPair(s=path[0], t=path[-1], vector=w,
                                          path=path))
    graph = Graph(x * y, edges)
    return BaseGraph(graph=graph, x=x, y=y, r=r, vectors=list(spec.vectors),
                     sources=sources, sinks=sinks, pairs=pairs)


# -- inner instantiation ---------------------------------------------------

def inner_vector_set(c: int, r: int) -> list[Vec]:
    """The c inner vectors (r - c + i, i + ... + c) for i = 1..c."""
    return [(r - c + i, sum(range(i, c + 1))) for i in range(1, c + 1)]


def build_inner_graph(c: int, r_i: int, x_i: int, y_i: int) -> BaseGraph:
    """Inner base graph; all critical pairs share horizontal displacement.

    Requires r_i even and every vector's first coordinate to divide
    x_i - r_i/2 (equivalently x_i = r_i/2 mod lcm of the first coordinates),
    which pins t1 - s1 = x_i - r_i/2 for every critical pair.
    """
    if c < 1:
        raise SpecViolationError("c must be >= 1")
    if r_i % 2 != 0:
        raise SpecViolationError(f"r_i must be even, got {r_i}")
    vectors = inner_vector_set(c, r_i)
    lam = 1
    for v1, _ in vectors:
        lam = lam * v1 // math.gcd(lam, v1)
    shift = x_i - r_i // 2
    if shift % lam != 0:
        raise DivisibilityViolationError(
            f"x_i - r_i/2 = {shift} not divisible by lambda = {lam} "
            f"(x_i mod {lam} must be {r_i // 2 % lam})")
    spec = BaseGraphSpec(x=x_i, y=y_i, r=r_i, vectors=tuple(vectors))
    bg = build_base_graph(spec)
    for p in bg.pairs:
        s1 = bg.coord(p.s)[0]
        t1 = bg.coord(p.t)[0]
        if t1 - s1 != shift:
            raise AssertionError(
                f"pair displacement {t1 - s1} != {shift} for pair ({p.s}, {p.t})")
    bg.meta.update({"kind": "inner", "c": c, "lambda": lam, "shift": shift})
    return bg


def asymptotic_inner_parameters(c: int) -> dict:
    """Inner parameters at asymptotic scale: r_i = c**102.

    The width is pinned by the divisibility constraint. These values are
    astronomically large; they document the asymptotic instantiation
    exactly (all admissibility checks hold as integers), but only the
    desk presets are actually buildable.
    """
    if c < 1:
        raise SpecViolationError("c must be >= 1")
    r_i = c ** 102
    vectors = inner_vector_set(c, r_i)
    lam = 1
    for v1, _ in vectors:
        lam = lam * v1 // math.gcd(lam, v1)
    base = r_i // 2 % lam
    if base >= 4 * r_i:
        x_i = base
    else:
        x_i = base + ((4 * r_i - base + lam - 1) // lam) * lam
    steepest = max(vectors, key=lambda v: Fraction(v[1], v[0]))
    v1, v2 = steepest
    y_i = -(-2 * x_i * v2 // v1)
    return {"c": c, "r_i": r_i, "lambda": lam, "x_i": x_i, "y_i": y_i,
            "steepest_vector": steepest}


def default_outer_shape(n_o: int) -> tuple[int, int]:
    """Default aspect: x = ceil(sqrt(n/2)), y = 2x."""
    x = math.isqrt((n_o + 1) // 2)
    if 2 * x * x < n_o:
        x += 1
    return x, 2 * x


def build_outer_graph(x_o: int, y_o: int, striped: ConvexVectorSet) -> BaseGraph:
    """Outer base graph over a striped strongly convex vector set."""
    if striped.stripes is None:
        raise SpecViolationError("outer graph needs a striped vector set")
    spec = BaseGraphSpec(x=x_o, y=y_o, r=striped.r,
                         vectors=tuple(striped.vectors))
    bg = build_base_graph(spec)
    bg.meta.update({"kind": "outer", "stripes": striped.stripes,
                    "psi2": striped.psi2})
    return bg


# -- the bijection phi and composition --------------------------------------

@dataclass
class Phi:
    """Stripe-aligned bijection from outer vectors to inner critical pairs."""

    vectors: list[Vec]                     # trimmed outer vectors, stripe-major
    stripes: list[list[int]]               # index lists into `vectors`
    inner_vectors: list[Vec]
    pair_of: dict[Vec, tuple[int, int]]    # outer vector -> (s_I, t_I)
    inner_pair_index: dict[Vec, int]       # outer vector -> index into inner.pairs

    def __len__(self) -> int:
        return len(self.vectors)

    def stripe_of(self, vec: Vec) -> int:
        for i, stripe in enumerate(self.stripes):
            if any(self.vectors[j] == vec for j in stripe):
                return i
        raise KeyError(vec)

    def to_json(self) -> dict:
        return {"vectors": [list(v) for v in self.vectors],
                "stripes": self.stripes,
                "inner_vectors": [list(v) for v in self.inner_vectors],
                "pairs": {f"{v[0]},{v[1]}": list(p)
                          for v, p in self.pair_of.items()}}


def default_phi(striped: ConvexVectorSet, inner: BaseGraph) -> tuple[Phi, ConvexVectorSet]:
    """Match stripe i onto the inner pairs whose canonical vector is v_i.

    Both sides are trimmed uniformly (highest-angle outer vectors, highest
    source-id inner pairs) until each stripe and each vector class hold the
    same count; within a class the assignment follows sorted order.
    """
    if striped.stripes is None:
        raise CardinalityMismatchError("outer vector set is not striped")
    c = len(striped.stripes)
    if c != len(inner.vectors):
        raise CardinalityMismatchError(
            f"{c} stripes cannot align with {len(inner.vectors)} inner vectors")
    sizes = {len(s) for s in striped.stripes}
    if len(sizes) > 1:
        raise CardinalityMismatchError(f"stripe sizes unequal: {sorted(sizes)}")
    by_vec = inner.pairs_by_vector()
    class_size = min(len(v) for v in by_vec.values())
    m = min(sizes.pop(), class_size)
    if m == 0:
        raise CardinalityMismatchError("empty stripe or inner pair class")

    trimmed_vectors: list[Vec] = []
    trimmed_stripes: list[list[int]] = []
    pair_of: dict[Vec, tuple[int, int]] = {}
    pair_idx: dict[Vec, int] = {}
    index_of_pair = {id(p): i for i, p in enumerate(inner.pairs)}
    for i, stripe in enumerate(striped.stripes):
        kept = stripe[:m]                        # lowest angles in the stripe
        cls = by_vec[inner.vectors[i]][:m]       # lowest source ids
        start = len(trimmed_vectors)
        for j, vec_idx in enumerate(kept):
            vec = striped.vectors[vec_idx]
            trimmed_vectors.append(vec)
            pair_of[vec] = (cls[j].s, cls[j].t)
            pair_idx[vec] = index_of_pair[id(cls[j])]
        trimmed_stripes.append(list(range(start, start + m)))

    trimmed = ConvexVectorSet(r=striped.r, vectors=trimmed_vectors,
                              stripes=trimmed_stripes, psi2=striped.psi2,
                              beta=m, annulus=striped.annulus, tau=striped.tau)
    phi = Phi(vectors=trimmed_vectors, stripes=trimmed_stripes,
              inner_vectors=list(inner.vectors), pair_of=pair_of,
              inner_pair_index=pair_idx)
    return phi, trimmed


@dataclass
class VertexOrigin:
    """Arithmetic decoding of composed vertex ids."""

    n_outer: int
    n_inner: int
    z: int
    edge_table: list[tuple[int, Vec, int]]   # (tail outer vid, vector, head outer vid)

    @property
    def sub_base(self) -> int:
        return self.n_outer * self.n_inner

    def origin(self, v: int):
        if v < self.sub_base:
            copy, inner_v = divmod(v, self.n_inner)
            return ("inner", copy, inner_v)
        off = v - self.sub_base
        eidx, pos = divmod(off, self.z - 1)
        return ("subdivision", eidx, pos + 1)

    def inner_vertex(self, copy: int, inner_v: int) -> int:
        return copy * self.n_inner + inner_v

    def subdivision_vertex(self, eidx: int, pos: int) -> int:
        return self.sub_base + eidx * (self.z - 1) + (pos - 1)


@dataclass
class ComposedPair:
    s: int
    t: int
    vector: Vec
    path: list[int]


@dataclass
class ComposedInstance:
    graph: Graph
    z: int
    phi: Phi
    pairs: list[ComposedPair]
    origin: VertexOrigin
    inner: BaseGraph
    outer: BaseGraph
    stats: dict = field(default_factory=dict)

    def fingerprint(self) -> str:
        return fingerprint_payload({
            "n": self.graph.n, "edges": list(self.graph.edges), "z": self.z,
            "pairs": [[p.s, p.t, list(p.vector)] for p in self.pairs]})


def compose(outer: BaseGraph, inner: BaseGraph, phi: Phi) -> ComposedInstance:
    """Inner-graph replacement, port wiring, subdivision, and pruning."""
    n_inner = inner.graph.n
    n_outer = outer.graph.n
    p_count = len(phi)
    if p_count == 0:
        raise CardinalityMismatchError("phi carries no vector at all")
    z, rem = divmod(n_inner, p_count)
    if rem != 0:
        lower = (n_inner // p_count) * p_count
        raise NonIntegralZError(
            f"|V_I| = {n_inner} not divisible by |P_I| = {p_count}; "
            f"nearest admissible |V_I| are {lower} and {lower + p_count}")
    if z < 2:
        raise NonIntegralZError(f"subdivision length z = {z} is degenerate")

    usable = set(phi.vectors)
    for p in outer.pairs:
        if p.vector not in usable:
            raise SpecViolationError(
                f"outer graph uses vector {p.vector} outside phi's domain")

    # directed outer edges, each on exactly one canonical path
    edge_table: list[tuple[int, Vec, int]] = []
    seen_out: set[tuple[int, Vec]] = set()
    seen_in: set[tuple[int, Vec]] = set()
    for p in outer.pairs:
        for a, b in zip(p.path, p.path[1:]):
            if (a, p.vector) in seen_out or (b, p.vector) in seen_in:
                raise PortCollisionError(
                    f"port slot reused at outer edge ({a}, {b}) vector {p.vector}")
            seen_out.add((a, p.vector))
            seen_in.add((b, p.vector))
            edge_table.append((a, p.vector, b))
    edge_table.sort()
    edge_index = {(a, vec): i for i, (a, vec, _) in enumerate(edge_table)}

    origin = VertexOrigin(n_outer=n_outer, n_inner=n_inner, z=z,
                          edge_table=edge_table)
    inner_paths = {(p.s, p.t): p.path for p in inner.pairs}

    edges: set[tuple[int, int]] = set()
    pairs: list[ComposedPair] = []
    for po in outer.pairs:
        vec = po.vector
        s_i, t_i = phi.pair_of[vec]
        ipath = inner_paths[(s_i, t_i)]
        comp: list[int] = []
        for hop in range(len(po.path) - 1):
            copy = po.path[hop]
            seg = [origin.inner_vertex(copy, iv) for iv in ipath]
            comp.extend(seg if not comp else seg[1:])
            eidx = edge_index[(copy, vec)]
            comp.extend(origin.subdivision_vertex(eidx, j) for j in range(1, z))
            comp.append(origin.inner_vertex(po.path[hop + 1], s_i))
        for a, b in zip(comp, comp[1:]):
            edges.add((a, b) if a < b else (b, a))
        pairs.append(ComposedPair(s=comp[0], t=comp[-1], vector=vec, path=comp))

    n_total = origin.sub_base + len(edge_table) * (z - 1)
    graph = Graph(n_total, edges)
    inst = ComposedInstance(graph=graph, z=z, phi=phi, pairs=pairs,
                            origin=origin, inner=inner, outer=outer)
    inst.stats = {
        "n": graph.n, "m": graph.m, "z": z,
        "inner_copies": n_outer, "subdivided_paths": len(edge_table),
        "pairs": len(pairs),
        "pruned_inner_edges": n_outer * inner.graph.m - sum(
            1 for u, v in graph.edges
            if u < origin.sub_base and v < origin.sub_base
            and u // n_inner == v // n_inner),
    }
    return inst


# -- desk-scale presets ------------------------------------------------------

INNER_PRESETS = {
    "c1": dict(c=1, r_i=2, x_i=9, y_i=10),
    "c2": dict(c=2, r_i=4, x_i=26, y_i=52),
    "c2-wide": dict(c=2, r_i=8, x_i=60, y_i=52),
    "c3": dict(c=3, r_i=8, x_i=172, y_i=344),
}

# Outer vector sets chosen so first coordinates sit in [r/2, r], norms in
# the exact annulus, stripes angle-separated, and the composed web stays
# connected enough for finite deletion stretch (tiny preset).
_OUTER_PRESETS = {
    "tiny": dict(x_o=8, y_o=16, r=2, vectors=[(2, 0), (1, 1)],
                 stripes=[[0], [1]], psi2=0.4),
    "small": dict(x_o=12, y_o=24, r=3, vectors=[(3, 0), (2, 2)],
                  stripes=[[0], [1]], psi2=0.4),
}

COMPOSED_PRESETS = {"tiny": "c2", "small": "c2"}


def inner_preset(name: str) -> BaseGraph:
    if name not in INNER_PRESETS:
        raise SpecViolationError(
            f"unknown inner preset {name!r}; choose from {sorted(INNER_PRESETS)}")
    return build_inner_graph(**INNER_PRESETS[name])


def outer_preset_vectors(name: str) -> ConvexVectorSet:
    cfg = _OUTER_PRESETS[name]
    striped = ConvexVectorSet(r=cfg["r"], vectors=list(cfg["vectors"]),
                              stripes=[list(s) for s in cfg["stripes"]],
                              psi2=cfg["psi2"], beta=1)
    ok, witness = check_strong_convexity(striped)
    if not ok:
        raise AssertionError(f"preset vector set not strongly convex: {witness}")
    ver = verify_stripes(striped, len(cfg["stripes"]), cfg["psi2"])
    if not ver.passed:
        raise AssertionError(f"preset stripes invalid:\n{ver}")
    return striped


def composed_preset(name: str) -> ComposedInstance:
    """Fully consistent tiny instance family solving all side constraints."""
    if name not in COMPOSED_PRESETS:
        raise SpecViolationError(
            f"unknown composed preset {name!r}; choose from {sorted(COMPOSED_PRESETS)}")
    inner = inner_preset(COMPOSED_PRESETS[name])
    striped = outer_preset_vectors(name)
    phi, trimmed = default_phi(striped, inner)
    cfg = _OUTER_PRESETS[name]
    outer = build_outer_graph(cfg["x_o"], cfg["y_o"], trimmed)
    return compose(outer, inner, phi)


def composed_to_dot(inst: ComposedInstance, name: str = "G") -> str:
    """DOT rendering with one subgraph cluster per inner copy (small instances)."""
    n_inner = inst.origin.n_inner
    sub_base = inst.origin.sub_base
    by_copy: dict[int, list[tuple[int, int]]] = {}
    rest: list[tuple[int, int]] = []
    for u, v in inst.graph.edges:
        if u < sub_base and v < sub_base and u // n_inner == v // n_inner:
            by_copy.setdefault(u // n_inner, []).append((u, v))
        else:
            rest.append((u, v))
    out = [f"graph {name} {{"]
    for copy in sorted(by_copy):
        out.append(f"  subgraph cluster_{copy} {{")
        out.append(f'    label="inner copy {copy}";')
        for u, v in by_copy[copy]:
            out.append(f"    {u} -- {v};")
        out.append("  }")
    for u, v in rest:
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"


# -- bundle serialization ----------------------------------------------------

def base_graph_to_json(bg: BaseGraph) -> dict:
    return {"kind": "base_graph", "x": bg.x, "y": bg.y, "r": bg.r,
            "vectors": [list(v) for v in bg.vectors],
            "sources": bg.sources, "sinks": bg.sinks,
            "pairs": [{"s": p.s, "t": p.t, "vector": list(p.vector),
                       "path": p.path} for p in bg.pairs],
            "meta": dict(bg.meta)}


def base_graph_from_json(doc: dict, graph: Graph) -> BaseGraph:
    pairs = [CriticalPair(s=p["s"], t=p["t"], vector=tuple(p["vector"]),
                          path=list(p["path"])) for p in doc["pairs"]]
    return BaseGraph(graph=graph, x=doc["x"], y=doc["y"], r=doc["r"],
                     vectors=[tuple(v) for v in doc["vectors"]],
                     sources=list(doc["sources"]), sinks=list(doc["sinks"]),
                     pairs=pairs, meta=dict(doc.get("meta", {})))


def composed_to_json(inst: ComposedInstance) -> dict:
    """Sidecar document; the composed edge list travels separately."""
    return {
        "kind": "composed_instance",
        "z": inst.z,
        "phi": inst.phi.to_json(),
        "pairs": [{"s": p.s, "t": p.t, "vector": list(p.vector),
                   "path": p.path} for p in inst.pairs],
        "origin": {"n_outer": inst.origin.n_outer,
                   "n_inner": inst.origin.n_inner,
                   "z": inst.origin.z,
                   "edge_table": [[a, list(vec), b]
                                  for a, vec, b in inst.origin.edge_table]},
        "inner": base_graph_to_json(inst.inner),
        "inner_edges": [list(e) for e in inst.inner.graph.edges],
        "outer": base_graph_to_json(inst.outer),
        "outer_edges": [list(e) for e in inst.outer.graph.edges],
        "stats": dict(inst.stats),
        "fingerprint": inst.fingerprint(),
    }


def composed_from_json(doc: dict, graph: Graph) -> ComposedInstance:
    inner_graph = Graph(doc["inner"]["x"] * doc["inner"]["y"],
                        [tuple(e) for e in doc["inner_edges"]])
    outer_graph = Graph(doc["outer"]["x"] * doc["outer"]["y"],
                        [tuple(e) for e in doc["outer_edges"]])
    inner = base_graph_from_json(doc["inner"], inner_graph)
    outer = base_graph_from_json(doc["outer"], outer_graph)
    phi_doc = doc["phi"]
    vectors = [tuple(v) for v in phi_doc["vectors"]]
    pair_of = {tuple(int(x) for x in key.split(",")): tuple(val)
               for key, val in phi_doc["pairs"].items()}
    pair_index = {(p.s, p.t): i for i, p in enumerate(inner.pairs)}
    phi = Phi(vectors=vectors,
              stripes=[list(s) for s in phi_doc["stripes"]],
              inner_vectors=[tuple(v) for v in phi_doc["inner_vectors"]],
              pair_of=pair_of,
              inner_pair_index={v: pair_index[pair_of[v]] for v in vectors})
    origin = VertexOrigin(
        n_outer=doc["origin"]["n_outer"], n_inner=doc["origin"]["n_inner"],
        z=doc["origin"]["z"],
        edge_table=[(a, tuple(vec), b) for a, vec, b in doc["origin"]["edge_table"]])
    pairs = [ComposedPair(s=p["s"], t=p["t"], vector=tuple(p["vector"]),
                          path=list(p["path"])) for p in doc["pairs"]]
    inst = ComposedInstance(graph=graph, z=doc["z"], phi=phi, pairs=pairs,
                            origin=origin, inner=inner, outer=outer,
                            stats=dict(doc.get("stats", {})))
    expected = doc.get("fingerprint")
    if expected is not None and inst.fingerprint() != expected:
        raise SpecViolationError("bundle fingerprint mismatch: sidecar and "
                                 "edge list disagree")
    return inst
