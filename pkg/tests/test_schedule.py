"""Exponent recurrences, fixed points, radius selection, recursion driver."""
import math
from fractions import Fraction

import pytest

import spanlab as sl
from spanlab.errors import InvalidAlphaError, InvalidParamsError


def test_emulator_recurrence_exact():
    sch = sl.exponent_schedule("emulator", 3)
    assert sch.values == (Fraction(1, 4), Fraction(1, 5),
                          Fraction(5, 26), Fraction(13, 68))


def test_spanner_recurrence_exact():
    sch = sl.exponent_schedule("spanner", 2)
    assert sch.values[:2] == (Fraction(3, 7), Fraction(7, 17))


def test_fixed_points_closed_form():
    em = sl.exponent_schedule("emulator", 0)
    sp = sl.exponent_schedule("spanner", 0)
    assert abs(em.fixed_point - (3 - math.sqrt(5)) / 4) < 1e-15
    assert abs(em.fixed_point - 1 / (3 + math.sqrt(5))) < 1e-15
    assert abs(sp.fixed_point - (9 - math.sqrt(33)) / 8) < 1e-15
    # defining equations 4a^2 - 6a + 1 = 0 and 4a^2 - 9a + 3 = 0
    a, b = em.fixed_point, sp.fixed_point
    assert abs(4 * a * a - 6 * a + 1) < 1e-12
    assert abs(4 * b * b - 9 * b + 3) < 1e-12


def test_convergence():
    # exact rational gaps against a 1e-60 approximation of the fixed point,
    # since the iterates converge far below double precision by i = 20
    sqrt_approx = {5: Fraction(math.isqrt(5 * 10 ** 120), 10 ** 60),
                   33: Fraction(math.isqrt(33 * 10 ** 120), 10 ** 60)}
    fixed = {"emulator": (3 - sqrt_approx[5]) / 4,
             "spanner": (9 - sqrt_approx[33]) / 8}
    for kind in ("emulator", "spanner"):
        sch = sl.exponent_schedule(kind, 20)
        fp = fixed[kind]
        gaps = [abs(v - fp) for v in sch.values]
        assert all(gaps[i + 1] < gaps[i] for i in range(len(gaps) - 1))
        assert gaps[-1] < Fraction(1, 10 ** 9)
        assert abs(float(sch.values[20]) - sch.fixed_point) < 1e-9
        assert all(sch.values[i + 1] < sch.values[i]
                   for i in range(len(sch.values) - 1))


def test_radius_examples():
    assert sl.radius_for("emulator", 2 ** 20, Fraction(1, 4)) == 16
    assert sl.radius_for("spanner", 2 ** 17, Fraction(3, 7)) == 128


def test_radius_validation():
    with pytest.raises(InvalidParamsError):
        sl.radius_for("emulator", 1, Fraction(1, 4))
    with pytest.raises(InvalidAlphaError):
        sl.radius_for("emulator", 16, Fraction(3, 2))
    with pytest.raises(InvalidParamsError):
        sl.exponent_schedule("neither", 1)


def test_run_recursive_depth_zero_exact():
    g = sl.gen_graph("gnm", n=20, m=40, seed=0)
    em = sl.run_recursive(g, "emulator", 0)
    assert dict(em.edges) == {e: 1 for e in g.edges}
    sp = sl.run_recursive(g, "spanner", 0)
    assert sp.subgraph == g
    assert sl.additive_distortion(g, sp.subgraph).max_additive == 0


def test_run_recursive_depth_one_matches_direct_build():
    g = sl.gen_graph("gnm", n=60, m=180, seed=2)
    via_driver = sl.run_recursive(g, "emulator", 1)
    direct = sl.build_emulator(g, sl.EmulatorConfig())
    assert dict(via_driver.edges) == dict(direct.edges)


def test_run_recursive_depth_two_with_level_audits():
    g = sl.gen_graph("gnm", n=300, m=1200, seed=1)
    for kind in ("emulator", "spanner"):
        result = sl.run_recursive(g, kind, 2, audit_levels=True)
        assert result.stats["depth"] == 2
        assert result.stats["measured_distortion"] <= result.stats["level_threshold"]
        # the schedule's alpha for the top level is a_1
        expected_alpha = sl.exponent_schedule(kind, 1).values[1]
        assert result.stats["alpha"] == str(expected_alpha)


def test_run_recursive_rejects_bad_depth():
    g = sl.gen_graph("path", n=4)
    with pytest.raises(InvalidParamsError):
        sl.run_recursive(g, "emulator", -1)
