"""Exponent recurrences, radius selection, and the recursion driver."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import InvalidAlphaError, InvalidParamsError
from .graph import Graph
from .ratmath import as_fraction, ceil_pow

KINDS = ("emulator", "spanner")

_START = {"emulator": Fraction(1, 4), "spanner": Fraction(3, 7)}


def _step(kind: str, a: Fraction) -> Fraction:
    if kind == "emulator":
        return 1 / (6 - 4 * a)
    return 1 / (3 - Fraction(4, 3) * a)


def _fixed_point(kind: str) -> float:
    if kind == "emulator":
        return (3 - math.sqrt(5)) / 4
    return (9 - math.sqrt(33)) / 8


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise InvalidParamsError(f"kind must be one of {KINDS}, got {kind!r}")


@dataclass(frozen=True)
class ExponentSchedule:
    """Distortion exponents a_0..a_k from iterating the improvement map."""

    kind: str
    values: tuple[Fraction, ...]
    fixed_point: float


def exponent_schedule(kind: str, iterations: int) -> ExponentSchedule:
    """Exact rational iteration of the exponent recurrence."""
    _check_kind(kind)
    if iterations < 0:
        raise InvalidParamsError("iterations must be >= 0")
    values = [_START[kind]]
    for _ in range(iterations):
        values.append(_step(kind, values[-1]))
    return ExponentSchedule(kind=kind, values=tuple(values),
                            fixed_point=_fixed_point(kind))


def radius_exponent(kind: str, alpha: Fraction) -> Fraction:
    _check_kind(kind)
    alpha = as_fraction(alpha)
    if not 0 < alpha < 1:
        raise InvalidAlphaError(f"alpha must be in (0, 1), got {alpha}")
    if kind == "emulator":
        return 1 / (6 - 4 * alpha)
    return 1 / (3 - Fraction(4, 3) * alpha)


def radius_for(kind: str, n: int, alpha) -> int:
    """Exact ceil(n ** exponent) with the kind-specific radius exponent."""
    if n < 2:
        raise InvalidParamsError("radius selection needs n >= 2")
    return ceil_pow(n, radius_exponent(kind, as_fraction(alpha)))


def run_recursive(g: Graph, kind: str, depth: int, cfg=None,
                  audit_levels: bool = False):
    """Drive the recursive construction to the requested depth.

    Depth 0 is the exact base case (the graph itself, zero distortion).
    At depth d > 0 the procedure runs with alpha = a_{d-1} from the
    schedule and recursion handle run_recursive at depth d - 1.
    """
    _check_kind(kind)
    if depth < 0:
        raise InvalidParamsError("depth must be >= 0")
    from . import emulator as _em
    from . import spanner as _sp

    if kind == "emulator":
        base_cfg = cfg or _em.EmulatorConfig()
    else:
        base_cfg = cfg or _sp.SpannerConfig()

    schedule = exponent_schedule(kind, max(depth - 1, 0))

    def at_depth(sub: Graph, d: int):
        if d == 0:
            if kind == "emulator":
                base = _em.Emulator(host_n=sub.n,
                                    edges={e: 1 for e in sub.edges},
                                    stats={"base": "exact", "n": sub.n, "depth": 0})
                return base
            from .preserver import PathSystem
            return _sp.SpannerResult(subgraph=sub, path_system=PathSystem(),
                                     stats={"base": "exact", "n": sub.n, "depth": 0})
        level_cfg = replace(base_cfg,
                            alpha=schedule.values[d - 1],
                            r_override=base_cfg.r_override if d == depth else None,
                            recursion_base=lambda s: at_depth(s, d - 1))
        if kind == "emulator":
            result = _em.build_emulator(sub, level_cfg)
        else:
            result = _sp.build_spanner(sub, level_cfg)
        result.stats["depth"] = d
        if audit_levels:
            from .distortion import additive_distortion
            h = result.to_graph() if kind == "emulator" else result.subgraph
            rep = additive_distortion(sub, h, require_subgraph=(kind == "spanner"))
            result.stats["measured_distortion"] = rep.max_additive
            result.stats["level_threshold"] = (level_cfg.greedy_stop_multiplier *
                                               result.stats["r_hat"])
        return result

    return at_depth(g, depth)
