import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slidenav.analysis import (
    ComparisonScenario,
    comparison_params,
    comparison_table,
    delta_closed_form_infinite,
    delta_numeric,
    wall_scene,
)

from . import oracles

LN2 = math.log(2.0)


def test_closed_form_examples():
    assert delta_closed_form_infinite(1.0, 1.0) == pytest.approx(LN2, abs=1e-12)
    assert delta_closed_form_infinite(1.0, 0.5) == pytest.approx(0.0693364642, abs=1e-9)
    assert delta_closed_form_infinite(3.0, -3.0) == pytest.approx(3 * LN2, abs=1e-12)
    for bad in (0.0, 1.5):
        with pytest.raises(ValueError):
            delta_closed_form_infinite(1.0, bad)


@pytest.mark.parametrize("r", [0.1, 0.25, 0.5, 0.75, 1.0])
def test_closed_form_matches_hand_antiderivative(r):
    assert delta_closed_form_infinite(2.0, 2.0 * r) == pytest.approx(oracles.closed_form_gap(2.0, 2.0 * r), rel=1e-14)


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0])
def test_numeric_matches_trapezoid_oracle(r):
    L = 1.0
    ref = oracles.gap_integral_trapezoid(L, r, 14.0)
    assert delta_numeric(ComparisonScenario(L, r)) == pytest.approx(ref, rel=1e-6)


def test_numeric_converges_under_halving():
    sc = ComparisonScenario(1.0, 1.0)
    a = delta_numeric(sc, 1e-2)
    b = delta_numeric(sc, 5e-3)
    c = delta_numeric(sc, 2.5e-3)
    assert abs(c - b) < abs(b - a)
    assert c == pytest.approx(LN2, rel=1e-6)


def test_monotone_in_offset():
    vals = [delta_numeric(ComparisonScenario(1.0, r)) for r in (0.1, 0.3, 0.5, 0.7, 0.9, 1.0)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_monotone_in_wall_extent():
    vals = [delta_numeric(ComparisonScenario(1.0, 1.0, w)) for w in (1.5, 2.0, 3.0, 5.0, 30.0)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    assert vals[-1] == pytest.approx(LN2, rel=1e-6)


def _finite_oracle(L, y0, W):
    """Bisection on s + gap(s) = W - sqrt(L^2 - y0^2) with trapezoid gaps."""
    S = W - math.sqrt(L * L - y0 * y0)
    lo, hi = 0.0, S
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        if mid + oracles.gap_integral_trapezoid(L, y0, mid, 20000) < S:
            lo = mid
        else:
            hi = mid
    return oracles.gap_integral_trapezoid(L, y0, 0.5 * (lo + hi), 200000)


@pytest.mark.parametrize("y0,W", [(1.0, 1.5), (0.5, 2.0), (0.8, 3.0)])
def test_finite_wall_matches_oracle(y0, W):
    got = delta_numeric(ComparisonScenario(1.0, y0, W))
    assert got == pytest.approx(_finite_oracle(1.0, y0, W), rel=1e-5)


def test_wall_shorter_than_first_edge_gives_zero():
    assert delta_numeric(ComparisonScenario(1.0, 0.5, 0.5)) == 0.0


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-3, 1.0), st.floats(0.1, 10.0), st.floats(1.0, 40.0))
def test_bound_holds(r, L, w):
    d = delta_numeric(ComparisonScenario(L, r * L, w * L))
    assert 0.0 <= d <= LN2 * L + 1e-9 * L


def test_degenerate_small_offset():
    assert delta_numeric(ComparisonScenario(1.0, 1e-3)) < 0.01


def test_input_errors():
    with pytest.raises(ValueError):
        ComparisonScenario(1.0, 1.2)
    with pytest.raises(ValueError):
        ComparisonScenario(0.0, 0.0)
    with pytest.raises(ValueError):
        ComparisonScenario(1.0, 0.5, 0.0)
    with pytest.raises(ValueError, match="ds"):
        delta_numeric(ComparisonScenario(1.0, 0.5), ds=0.5)
    with pytest.raises(ValueError, match="before the first visible edge"):
        wall_scene(1.0, 0.5, 0.5)


def test_wall_scene_geometry():
    sc, B, head, x_end = wall_scene(2.0, 1.0, 10.0)
    C = (B[0] + 2.0 * head[0], B[1] + 2.0 * head[1])
    assert C == pytest.approx((0.0, 0.0), abs=1e-12)
    assert math.hypot(*head) == pytest.approx(1.0)
    assert x_end == pytest.approx(B[0] + 10.0)
    assert len(sc.obstacles) == 1


def test_comparison_params_scale():
    p = comparison_params(2.0)
    assert p.R == pytest.approx(0.012)
    assert p.d_safe == 0.0
    assert p.d_tar < p.d_trig


def test_comparison_table_rows():
    rows = comparison_table(1.0, [0.5, 1.0])
    assert rows[1][0] == 1.0
    assert rows[1][1] == pytest.approx(LN2, rel=1e-6)
    assert rows[1][3] == pytest.approx(0.0, abs=1e-6)
    assert rows[0][2] == pytest.approx(0.0693364642, abs=1e-9)
