import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slidenav.geo import Disc, Scene
from slidenav.sensing import Pose, SensorConfig
from slidenav.sim import (
    Controller,
    OutcomeKind,
    ScenarioSpec,
    SimConfig,
    default_max_time,
    integrate_arc,
    mode_intervals,
    path_length,
    run,
)
from slidenav.sliding_ctrl import SlidingParams

from . import oracles

FIXTURE = SlidingParams(v=1.0, u_max=1.0, d_safe=0.5, d_tar=1.5, d_trig=3.5, epsilon=0.1, l=0.1, k=1.0)
SIM50 = SimConfig(dt_physics=0.01, ctrl_hz=50.0)


def test_sim_config_invariants():
    with pytest.raises(ValueError):
        SimConfig(dt_physics=0.5, ctrl_hz=5.0)
    with pytest.raises(ValueError):
        SimConfig(max_time=0.0)
    assert SimConfig().ctrl_hz == 5.0 and SimConfig().dt_ctrl == 0.2
    assert SimConfig(controller="pursuit").controller is Controller.PURSUIT


def test_integrate_arc_examples():
    p = integrate_arc(Pose((0, 0), 0.0), 1.0, 0.0, 2.0)
    assert (p.x, p.y, p.theta) == (2.0, 0.0, 0.0)
    q = integrate_arc(Pose((0, 0), 0.0), 1.0, 1.0, math.pi)
    assert q.x == pytest.approx(0.0, abs=1e-15) and q.y == pytest.approx(2.0)
    assert abs(q.theta) == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        integrate_arc(Pose((0, 0), 0.0), 1.0, 1.0, 0.0)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(-10, 10),
    st.floats(-10, 10),
    st.floats(-math.pi, math.pi),
    st.floats(0.1, 3.0),
    st.floats(-3.0, 3.0),
    st.floats(1e-3, 0.5),
)
def test_integrate_arc_matches_rk4(x, y, th, v, u, dt):
    p = integrate_arc(Pose((x, y), th), v, u, dt)
    ref = oracles.rk4_unicycle((x, y, th), v, u, dt, max(1, int(math.ceil(dt / 1e-3))))
    assert p.x == pytest.approx(ref[0], abs=1e-10)
    assert p.y == pytest.approx(ref[1], abs=1e-10)
    assert math.remainder(p.theta - ref[2], 2 * math.pi) == pytest.approx(0.0, abs=1e-10)


@settings(max_examples=200)
@given(st.floats(0.1, 3.0), st.floats(-3.0, 3.0), st.floats(1e-3, 1.0), st.floats(-math.pi, math.pi))
def test_speed_invariant_and_chord(v, u, dt, th):
    p = integrate_arc(Pose((0, 0), th), v, u, dt)
    chord = math.hypot(p.x, p.y)
    assert chord <= v * dt * (1 + 1e-12)
    if u == 0.0:
        assert chord == pytest.approx(v * dt)
    else:
        assert chord == pytest.approx(2 * (v / abs(u)) * math.sin(abs(u) * dt / 2), rel=1e-9, abs=1e-14)


def test_empty_scene_straight_run():
    p = SlidingParams(v=1, u_max=1, d_safe=0.5, d_tar=2.8, d_trig=3.3, epsilon=0.2, l=0.8, k=0.5, capture_radius=0.1)
    spec = ScenarioSpec(Scene((), (10, 0)), Pose((0, 0), 0.0), p, SensorConfig(range_L=8), SimConfig(), True)
    tr = run(spec)
    assert tr.outcome.kind is OutcomeKind.TARGET_REACHED
    assert tr.t_f == pytest.approx(10.0, abs=0.2)
    assert all(s.u == 0.0 for s in tr.samples)
    assert tr.samples[0].t == 0.0
    assert all(b.t > a.t for a, b in zip(tr.samples, tr.samples[1:]))


def test_path_length_identities():
    p = SlidingParams(v=1, u_max=1, d_safe=0.5, d_tar=2.8, d_trig=3.3, epsilon=0.2, l=0.8, k=0.5, capture_radius=0.1)
    tr = run(ScenarioSpec(Scene((), (10, 0)), Pose((0, 0), 0.0), p, SensorConfig(range_L=8), SimConfig(max_time=5.0)))
    assert tr.outcome.kind is OutcomeKind.TIMEOUT
    assert path_length(tr) == 5.0


def _disc_spec(yc=0.0, sim=SIM50):
    return ScenarioSpec(
        Scene((Disc((20.0, yc), 2.0),), (40.0, 0.0)),
        Pose((0.0, 0.0), 0.0),
        FIXTURE,
        SensorConfig(range_L=10.0),
        sim,
        theorem_mode=True,
    )


def test_disc_on_line_single_mode_cycle():
    tr = run(_disc_spec())
    assert tr.outcome.kind is OutcomeKind.TARGET_REACHED
    assert tr.min_distance >= FIXTURE.d_safe
    assert len(mode_intervals(tr, "B")) == 1
    modes = "".join(s.mode for s in tr.samples)
    assert modes.startswith("A") and modes.endswith("A")
    assert tr.validation is not None and tr.validation.all_passed


def test_mirrored_disc_negates_gamma_and_reflects():
    a = run(_disc_spec(0.7))
    spec_b = _disc_spec(-0.7)
    b = run(spec_b)
    ga = {s.gamma for s in a.samples if s.mode == "B"}
    gb = {s.gamma for s in b.samples if s.mode == "B"}
    assert ga == {-g for g in gb} and len(ga) == 1
    assert a.t_f == pytest.approx(b.t_f, abs=SIM50.dt_ctrl)
    for sa, sb in zip(a.samples, b.samples):
        assert sb.pose.x == pytest.approx(sa.pose.x, abs=1e-9)
        assert sb.pose.y == pytest.approx(-sa.pose.y, abs=1e-9)
        assert sb.u == pytest.approx(-sa.u)


def test_safety_violation_ends_run():
    p = SlidingParams(v=1, u_max=1, d_safe=3.0, d_tar=3.2, d_trig=3.5, epsilon=0.1, l=0.8, k=0.5)
    spec = ScenarioSpec(Scene((Disc((15, 0), 2.0),), (30, 0)), Pose((0, 0), 0.0), p, SensorConfig(range_L=10))
    tr = run(spec)
    assert tr.outcome.kind is OutcomeKind.SAFETY_VIOLATED
    assert tr.outcome.d_min < p.d_safe
    assert tr.samples[-1].t == tr.outcome.t
    # the breach is detected at the first physics step below d_safe
    assert tr.outcome.d_min > p.d_safe - p.v * spec.sim.dt_physics


def test_strict_refuses_failing_spec():
    p = SlidingParams(v=1, u_max=1, d_safe=3.0, d_tar=3.2, d_trig=3.5, epsilon=0.1, l=0.8, k=0.5)
    spec = ScenarioSpec(Scene((Disc((15, 0), 2.0),), (30, 0)), Pose((0, 0), 0.0), p, SensorConfig(range_L=10))
    with pytest.raises(ValueError, match="validation"):
        run(spec, strict=True)
    assert not run(spec).validation.all_passed


def test_start_inside_obstacle_is_error():
    spec = ScenarioSpec(Scene((Disc((0, 0), 2.0),), (30, 0)), Pose((0.5, 0), 0.0), FIXTURE, SensorConfig(range_L=10))
    with pytest.raises(ValueError, match="inside"):
        run(spec)


def test_theorem_mode_checks_initial_conditions():
    sc = Scene((Disc((20.0, 0.0), 2.0),), (40.0, 0.0))
    with pytest.raises(ValueError, match="bearing"):
        ScenarioSpec(sc, Pose((0, 0), 0.5), FIXTURE, SensorConfig(range_L=10), theorem_mode=True)
    with pytest.raises(ValueError, match="d_trig"):
        ScenarioSpec(sc, Pose((16.0, 0), 0.0), FIXTURE, SensorConfig(range_L=10), theorem_mode=True)


def test_default_timeout():
    spec = _disc_spec()
    assert default_max_time(spec) == 400.0


def test_five_hz_default_tick_count():
    p = SlidingParams(v=1, u_max=1, d_safe=0.5, d_tar=2.8, d_trig=3.3, epsilon=0.2, l=0.8, k=0.5, capture_radius=0.1)
    tr = run(ScenarioSpec(Scene((), (10, 0)), Pose((0, 0), 0.0), p, SensorConfig(range_L=8)))
    ticks = [s for s in tr.samples if s.t == round(s.t / 0.2) * 0.2]
    assert len(tr.samples) == pytest.approx(tr.t_f * 5, abs=2)
    assert len(ticks) >= len(tr.samples) - 1


def test_turning_radius_bound():
    tr = run(_disc_spec(0.7))
    R = FIXTURE.R
    for s in tr.samples:
        if s.u != 0.0:
            assert FIXTURE.v / abs(s.u) >= R - 1e-12


def test_pursuit_controller_runs_disc_scene():
    # edge pursuit grazes the obstacle, so it carries no safety margin
    sim = SimConfig(dt_physics=0.01, ctrl_hz=50.0, controller=Controller.PURSUIT)
    spec = dataclasses.replace(_disc_spec(0.7, sim), params=dataclasses.replace(FIXTURE, d_safe=0.0))
    tr = run(spec)
    assert tr.outcome.kind is OutcomeKind.TARGET_REACHED
    assert {s.mode for s in tr.samples} <= {"S", "P"}
    assert "P" in {s.mode for s in tr.samples}
    assert np.isfinite([s.pose.theta for s in tr.samples]).all()
