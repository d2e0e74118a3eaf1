"""Strongly convex integer vector sets from a thin circular annulus.

Construction: enumerate first-quadrant lattice points whose norm lies in
[r - r^(-1/3), r], keep the convex-hull vertices in angular order, drop
vectors whose gap to the angular successor is short (so no sector is
overcrowded), then prune until every vector strictly dominates all scalar
projections onto its own direction. All pass/fail geometry is integer or
rational exact; floating point appears only in reported measurements.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key

from .errors import InfeasibleStripesError, InvalidParamsError, TooSparseError
from .ratmath import as_fraction
from .report import AuditReport

Vec = tuple[int, int]


def _norm_sq(v: Vec) -> int:
    return v[0] * v[0] + v[1] * v[1]


def _cross(u: Vec, v: Vec) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _dot(u: Vec, v: Vec) -> int:
    return u[0] * v[0] + u[1] * v[1]


def _angle_cmp(u: Vec, v: Vec) -> int:
    """Ascending angle in the closed first quadrant; ties by norm."""
    c = _cross(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return -1 if _norm_sq(u) < _norm_sq(v) else (1 if _norm_sq(u) > _norm_sq(v) else 0)


def annulus_min_norm_sq(r: int) -> int:
    """Exact ceil((r - r^(-1/3))^2), via integer comparisons only."""
    if r < 2:
        raise InvalidParamsError("annulus threshold needs r >= 2")

    def f_at_least(m: int) -> bool:
        # is 2 r^(2/3) - r^(-2/3) >= m ?
        if m <= 0:
            return True
        d = m * m + 8
        lhs = 64 * r * r - m ** 3 - 3 * m * d
        if lhs < 0:
            return False
        return lhs * lhs >= (3 * m * m + d) ** 2 * d

    m = int(2 * r ** (2.0 / 3.0))  # float guess, corrected exactly below
    while f_at_least(m + 1):
        m += 1
    while m > 0 and not f_at_least(m):
        m -= 1
    return r * r - m


def annulus_points(r: int, widen: bool = False) -> list[Vec]:
    """First-quadrant lattice vectors with norm in the annulus, angle order."""
    if r < 1:
        raise InvalidParamsError("r must be >= 1")
    lo = (r - 1) ** 2 if widen else annulus_min_norm_sq(r)
    hi = r * r
    pts = [(x, y) for x in range(r + 1) for y in range(r + 1)
           if (x, y) != (0, 0) and lo <= x * x + y * y <= hi]
    return sorted(pts, key=cmp_to_key(_angle_cmp))


def convex_hull_vertices(points: list[Vec]) -> list[Vec]:
    """Strict convex-hull vertices in counterclockwise order."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) > 1 and _cross((out[-1][0] - out[-2][0], out[-1][1] - out[-2][1]),
                                          (p[0] - out[-2][0], p[1] - out[-2][1])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    return list(dict.fromkeys(lower[:-1] + upper[:-1]))


@dataclass
class ConvexVectorSet:
    """A strongly convex set of integer vectors, optionally striped."""

    r: int
    vectors: list[Vec]
    psi_max: float = 0.0
    stripes: list[list[int]] | None = None
    psi2: float | None = None
    beta: int | None = None
    annulus: str = "exact"            # "exact" or "widened"
    tau: Fraction | None = None
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.vectors)) != len(self.vectors):
            raise InvalidParamsError("vectors must be distinct")
        if any(v == (0, 0) for v in self.vectors):
            raise InvalidParamsError("vectors must be nonzero")
        if self.vectors:
            self.psi_max = max(math.atan2(y, x) for x, y in self.vectors)

    def stripe_vectors(self, i: int) -> list[Vec]:
        if self.stripes is None:
            raise InvalidParamsError("vector set is not striped")
        return [self.vectors[j] for j in self.stripes[i]]

    def to_json(self) -> dict:
        return {"r": self.r,
                "vectors": [list(v) for v in self.vectors],
                "stripes": self.stripes,
                "psi2": self.psi2, "beta": self.beta,
                "annulus": self.annulus,
                "stats": dict(self.stats)}


def build_convex_set(r: int, tau=Fraction(1, 4),
                     widen_annulus: bool = False) -> ConvexVectorSet:
    """Construct the annulus-based strongly convex set for radius r >= 8."""
    if r < 8:
        raise InvalidParamsError("construction needs r >= 8")
    tau = as_fraction(tau)
    if tau <= 0:
        raise InvalidParamsError("tau must be positive")
    pool = annulus_points(r, widen=widen_annulus)
    if not pool:
        raise TooSparseError(
            f"integer annulus at r={r} holds no lattice point; "
            "retry with widen_annulus=True")

    hull = convex_hull_vertices(pool)
    hull = sorted(hull, key=cmp_to_key(_angle_cmp))

    # angular-gap thinning: keep v_i when |v_{i+1} - v_i| > tau * r^(1/3),
    # i.e. q^6 |u|^6 > p^6 r^2; the last vector wraps around and stays
    p6 = tau.numerator ** 6
    q6 = tau.denominator ** 6
    kept = []
    for i, v in enumerate(hull):
        if i == len(hull) - 1:
            kept.append(v)
            continue
        u = (hull[i + 1][0] - v[0], hull[i + 1][1] - v[1])
        if q6 * _norm_sq(u) ** 3 > p6 * r * r:
            kept.append(v)

    # projection pruning in increasing-norm order: once v is selected,
    # every remaining u with u.v >= |v|^2 is discarded
    pending = sorted(kept, key=lambda v: (_norm_sq(v), v))
    selected: list[Vec] = []
    while pending:
        v = pending.pop(0)
        selected.append(v)
        pending = [u for u in pending if _dot(u, v) < _norm_sq(v)]

    vectors = sorted(selected, key=cmp_to_key(_angle_cmp))
    out = ConvexVectorSet(r=r, vectors=vectors,
                          annulus="widened" if widen_annulus else "exact",
                          tau=tau,
                          stats={"pool": len(pool), "hull": len(hull),
                                 "after_gap_thinning": len(kept),
                                 "size": len(vectors)})
    props = check_cis_properties(out, r)
    exact = [c for c in props.checks if c.name in ("norm_annulus", "projection_dominance")]
    if not all(c.passed for c in exact):
        raise AssertionError(f"construction violated its own contract:\n{props}")
    return out


def check_strong_convexity(W) -> tuple[bool, Vec | None]:
    """Exact test: every v0 lies strictly outside conv({+-u, u != v0} | {0}).

    Equivalent to the no-short-combination definition: v0 = sum(lambda_i v_i)
    with sum|lambda_i| <= 1 has a nontrivial solution exactly when v0 lies
    in the absolutely convex hull of the other vectors.
    """
    vectors = W.vectors if isinstance(W, ConvexVectorSet) else list(W)
    if len(set(vectors)) != len(vectors):
        return False, next(v for v in vectors if vectors.count(v) > 1)
    for v0 in vectors:
        pts: list[Vec] = [(0, 0)]
        for u in vectors:
            if u != v0:
                pts.append(u)
                pts.append((-u[0], -u[1]))
        if _point_in_hull(v0, pts):
            return False, v0
    return True, None


def _point_in_hull(p: Vec, pts: list[Vec]) -> bool:
    """Exact: p inside or on the boundary of conv(pts)."""
    hull = convex_hull_vertices(pts)   # already counterclockwise
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        a, b = hull
        if _cross((b[0] - a[0], b[1] - a[1]), (p[0] - a[0], p[1] - a[1])) != 0:
            return False
        return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))
    for a, b in zip(hull, hull[1:] + hull[:1]):
        if _cross((b[0] - a[0], b[1] - a[1]), (p[0] - a[0], p[1] - a[1])) < 0:
            return False
    return True


def check_cis_properties(W: ConvexVectorSet, r: int,
                         sector_widths=(math.pi / 4, math.pi / 8,
                                        math.pi / 16, math.pi / 32)) -> AuditReport:
    """Exact norm and projection checks; measured sector-density ratios."""
    report = AuditReport()
    lo = (r - 1) ** 2 if W.annulus == "widened" else annulus_min_norm_sq(r)
    hi = r * r
    bad_norm = [v for v in W.vectors if not lo <= _norm_sq(v) <= hi]
    report.add("norm_annulus", not bad_norm,
               witness=bad_norm[:5] if bad_norm else None,
               measured={"lo_norm_sq": lo, "hi_norm_sq": hi})

    bad_proj = []
    for v in W.vectors:
        nv = _norm_sq(v)
        for u in W.vectors:
            if u != v and _dot(u, v) >= nv:
                bad_proj.append((u, v))
    report.add("projection_dominance", not bad_proj,
               witness=bad_proj[:5] if bad_proj else None)

    sc, witness = check_strong_convexity(W)
    report.add("strong_convexity", sc, witness=witness)

    # measured only: worst sector count over the density budget psi * r^(2/3)
    angles = sorted(math.atan2(y, x) for x, y in W.vectors)
    ratios = {}
    for psi in sector_widths:
        worst = 0
        j = 0
        for i in range(len(angles)):
            while j < len(angles) and angles[j] <= angles[i] + psi:
                j += 1
            worst = max(worst, j - i)
        ratios[round(psi, 6)] = worst / (psi * r ** (2.0 / 3.0)) if angles else 0.0
    report.add("sector_density_measured", True, measured=ratios)
    return report


def build_striped_set(r: int, c: int, psi1: float | None = None,
                      psi2: float | None = None, tau=Fraction(1, 4),
                      widen_annulus: bool = False) -> ConvexVectorSet:
    """Carve c equal-size stripes out of a dense angular window.

    The default angles psi1 = c^-5 and psi2 = c^-10 are meant for
    asymptotic radii; desk runs pass explicit window and gap angles. The carved set
    is a subset of the annulus construction, so it inherits its exactness
    guarantees, which verify_stripes re-checks.
    """
    if c < 1:
        raise InvalidParamsError("c must be >= 1")
    asymptotic_defaults = psi1 is None and psi2 is None
    if psi1 is None:
        psi1 = c ** -5.0
    if psi2 is None:
        psi2 = c ** -10.0
    if psi1 <= 0 or psi2 < 0:
        raise InvalidParamsError("psi1 must be > 0 and psi2 >= 0")

    base = build_convex_set(r, tau=tau, widen_annulus=widen_annulus)
    below = [v for v in base.vectors if v[1] <= v[0]]
    above = [(y, x) for x, y in base.vectors if y > x]
    folded = below if len(below) >= len(above) else sorted(
        above, key=cmp_to_key(_angle_cmp))

    angles = [math.atan2(y, x) for x, y in folded]
    if not folded:
        raise InfeasibleStripesError("no vectors at angle <= pi/4")

    # densest window of width psi1 (window anchored at each vector)
    best_start, best_count = angles[0], 0
    j = 0
    for i in range(len(angles)):
        while j < len(angles) and angles[j] <= angles[i] + psi1:
            j += 1
        if j - i > best_count:
            best_count = j - i
            best_start = angles[i]

    stripe_width = (psi1 - (c - 1) * psi2) / c
    if stripe_width <= 0:
        raise InfeasibleStripesError(
            f"window psi1={psi1} cannot host {c} stripes with gap psi2={psi2}")

    groups: list[list[int]] = []
    for i in range(c):
        a0 = best_start + i * (stripe_width + psi2)
        a1 = a0 + stripe_width
        groups.append([k for k, a in enumerate(angles) if a0 <= a <= a1])
    beta = min(len(gr) for gr in groups)
    if beta == 0:
        hint = " (the asymptotic defaults c^-5 / c^-10 need far larger r)" \
            if asymptotic_defaults else ""
        raise InfeasibleStripesError(
            f"empty stripe when carving {c} stripes at r={r}{hint}")
    groups = [gr[:beta] for gr in groups]   # drop highest angles per stripe

    chosen = [folded[k] for gr in groups for k in gr]
    stripes = []
    pos = 0
    for gr in groups:
        stripes.append(list(range(pos, pos + len(gr))))
        pos += len(gr)
    out = ConvexVectorSet(r=r, vectors=chosen, stripes=stripes,
                          psi2=psi2, beta=beta,
                          annulus="widened" if widen_annulus else "exact",
                          tau=as_fraction(tau),
                          stats={"window_start": best_start,
                                 "window_count": best_count,
                                 "source_size": len(base.vectors),
                                 "folded_size": len(folded)})
    verification = verify_stripes(out, c, psi2)
    if not verification.passed:
        raise AssertionError(f"striped set failed self-verification:\n{verification}")
    return out


def verify_stripes(W: ConvexVectorSet, c: int, psi2: float) -> AuditReport:
    """Equal stripe sizes, cross-stripe angular gaps, and per-vector bounds."""
    report = AuditReport()
    if W.stripes is None:
        report.add("striped", False, witness="no stripe annotation")
        return report
    report.add("stripe_count", len(W.stripes) == c,
               measured={"stripes": len(W.stripes), "expected": c})
    sizes = [len(s) for s in W.stripes]
    report.add("equal_sizes", len(set(sizes)) <= 1, measured={"sizes": sizes})

    tan_gap = math.tan(psi2)
    bad_gap = []
    for i in range(len(W.stripes)):
        for j in range(i + 1, len(W.stripes)):
            for u in W.stripe_vectors(i):
                for v in W.stripe_vectors(j):
                    dot = _dot(u, v)
                    cross = abs(_cross(u, v))
                    # angle >= psi2 <=> (obtuse) or tan(angle) >= tan(psi2)
                    if dot > 0 and cross < dot * tan_gap:
                        bad_gap.append((u, v))
    report.add("cross_stripe_gap", not bad_gap,
               witness=bad_gap[:5] if bad_gap else None,
               measured={"psi2": psi2})

    r = W.r
    lo = (r - 1) ** 2 if W.annulus == "widened" else annulus_min_norm_sq(r)
    bad_vec = [v for v in W.vectors
               if v[1] > v[0] or not lo <= _norm_sq(v) <= r * r
               or not (2 * v[0] >= r and v[0] <= r)]
    report.add("vector_bounds", not bad_vec,
               witness=bad_vec[:5] if bad_vec else None)
    return report
