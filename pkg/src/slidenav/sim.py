"""Closed-loop simulation of a constant-speed unicycle.

The plant is integrated exactly (piecewise-constant turn rate gives straight
segments and circular arcs). Controllers run at ``ctrl_hz`` with a
zero-order hold in between; safety is checked at every physics step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional

from .edge_pursuit import PursuitMode, PursuitState, Side, pursuit_step
from .geo import INF, Scene, Vec2, scene_distance
from .sensing import Pose, SensorConfig, scan, target_bearing, wrap_angle
from .sliding_ctrl import (
    ControllerState,
    Mode,
    SlidingParams,
    ValidationReport,
    check_target_reached,
    step,
    validate,
)


class Controller(str, Enum):
    SLIDING = "sliding"
    PURSUIT = "pursuit"


class OutcomeKind(str, Enum):
    TARGET_REACHED = "TargetReached"
    TIMEOUT = "Timeout"
    SAFETY_VIOLATED = "SafetyViolated"
    CONTROLLER_FAULT = "ControllerFault"


@dataclass(frozen=True)
class SimConfig:
    dt_physics: float = 0.01
    ctrl_hz: float = 5.0
    max_time: Optional[float] = None
    controller: Controller = Controller.SLIDING

    def __post_init__(self):
        object.__setattr__(self, "controller", Controller(self.controller))
        if not (self.dt_physics > 0.0 and self.ctrl_hz > 0.0):
            raise ValueError("dt_physics and ctrl_hz must be positive")
        if self.dt_physics > 1.0 / self.ctrl_hz * (1.0 + 1e-12):
            raise ValueError("dt_physics must not exceed the controller period")
        if self.max_time is not None and not self.max_time > 0.0:
            raise ValueError("max_time must be positive")

    @property
    def dt_ctrl(self) -> float:
        return 1.0 / self.ctrl_hz


@dataclass(frozen=True)
class ScenarioSpec:
    scene: Scene
    start: Pose
    params: SlidingParams
    sensor: SensorConfig
    sim: SimConfig = SimConfig()
    theorem_mode: bool = False

    def __post_init__(self):
        if self.theorem_mode:
            problems = theorem_preconditions(self)
            if problems:
                raise ValueError("theorem-mode start violates: " + "; ".join(problems))


def theorem_preconditions(spec: ScenarioSpec) -> List[str]:
    """Initial conditions required by the convergence theorem that fail."""
    out = []
    T = spec.scene.target
    p = spec.start.position
    if (p.x, p.y) == (T.x, T.y):
        out.append("start is at the target")
        return out
    if abs(target_bearing(spec.start, T)) > spec.params.beta_tol:
        out.append("initial bearing to target exceeds beta_tol")
    d0, _ = scene_distance(p, spec.scene)
    if d0 < spec.params.d_trig:
        out.append(f"initial distance {d0:.6g} below d_trig")
    return out


@dataclass(frozen=True)
class Sample:
    t: float
    pose: Pose
    u: float
    d: float
    beta: float
    mode: str
    gamma: int


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    t: float
    d_min: float
    message: str = ""


@dataclass
class Trajectory:
    samples: List[Sample]
    outcome: Outcome
    v: float
    min_distance: float = INF
    validation: Optional[ValidationReport] = None
    flags: List[str] = field(default_factory=list)

    @property
    def t_f(self) -> Optional[float]:
        return self.outcome.t if self.outcome.kind is OutcomeKind.TARGET_REACHED else None

    def times(self):
        return [s.t for s in self.samples]

    def positions(self):
        return [(s.pose.x, s.pose.y) for s in self.samples]


def integrate_arc(pose: Pose, v: float, u: float, dt: float) -> Pose:
    """Exact unicycle step for constant ``v`` and turn rate ``u``."""
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    x, y, th = pose.position.x, pose.position.y, pose.theta
    # chord form stays accurate as u -> 0, where v/u * (sin - sin) cancels
    half = 0.5 * u * dt
    chord = v * dt * (math.sin(half) / half if half != 0.0 else 1.0)
    mid = th + half
    return Pose(Vec2(x + chord * math.cos(mid), y + chord * math.sin(mid)), th + u * dt)


def path_length(traj: Trajectory) -> float:
    """Length travelled between the first and last sample (speed is constant)."""
    if len(traj.samples) < 2:
        raise ValueError("need at least two samples")
    return traj.v * (traj.samples[-1].t - traj.samples[0].t)


def default_max_time(spec: ScenarioSpec) -> float:
    p, T = spec.start.position, spec.scene.target
    return 10.0 * math.hypot(T.x - p.x, T.y - p.y) / spec.params.v


def _sensed_distance(d: float, ldes: float) -> float:
    return d if d <= ldes else INF


def run(spec: ScenarioSpec, strict: bool = False) -> Trajectory:
    """Simulate the closed loop until target, timeout, safety breach or fault.

    One sample is recorded per controller tick plus a terminal sample. With
    ``strict`` a failing validation report aborts the run before it starts.
    """
    scene, params, cfg = spec.scene, spec.params, spec.sim
    d0, _ = scene_distance(spec.start.position, scene)
    if d0 == 0.0:
        raise ValueError("start pose lies inside an obstacle")

    dt_ctrl = cfg.dt_ctrl
    n_sub = max(1, int(round(dt_ctrl / cfg.dt_physics)))
    h = dt_ctrl / n_sub
    sensor = replace(spec.sensor, dt_ctrl=dt_ctrl)
    ldes = sensor.L_des
    max_time = cfg.max_time if cfg.max_time is not None else default_max_time(spec)
    report = validate(scene, params, sensor) if scene.obstacles or strict else None
    if strict and report is not None and not report.all_passed:
        names = ", ".join(e.name for e in report.failures())
        raise ValueError(f"scenario fails validation: {names}")

    v = params.v
    T = scene.target
    pursuit = cfg.controller is Controller.PURSUIT
    pose = spec.start
    samples: List[Sample] = []
    flags: List[str] = []
    d_min = d0
    ctrl = ControllerState.initial(params)
    pstate = PursuitState()
    prev_d: Optional[float] = None
    prev_d_dot: Optional[float] = None

    def terminal(kind, t, pose_, u, msg=""):
        d_true, _ = scene_distance(pose_.position, scene)
        try:
            beta = target_bearing(pose_, T)
        except ValueError:
            beta = 0.0
        mode, gamma = _labels(pursuit, ctrl, pstate)
        if not samples or samples[-1].t < t:
            samples.append(Sample(t, pose_, u, _sensed_distance(d_true, ldes), beta, mode, gamma))
        return Trajectory(samples, Outcome(kind, t, d_min, msg), v, d_min, report, flags)

    tick = 0
    while True:
        t = tick * dt_ctrl
        if check_target_reached(pose, T, params):
            return terminal(OutcomeKind.TARGET_REACHED, t, pose, 0.0)
        if t >= max_time:
            return terminal(OutcomeKind.TIMEOUT, t, pose, 0.0)

        # edge angles only feed gamma selection in mode A
        frame = scan(pose, scene, sensor, prev_d, prev_d_dot, rays=pursuit or ctrl.mode is Mode.A)
        prev_d, prev_d_dot = frame.d, frame.d_dot
        try:
            if pursuit:
                heading, pstate = pursuit_step(frame, pose, T, pstate, ldes, scene)
                u = 0.0
                if not math.isfinite(heading):
                    raise ArithmeticError("non-finite heading command")
                pose = Pose(pose.position, heading)
            else:
                u, ctrl = step(frame, ctrl, params)
                if not math.isfinite(u):
                    raise ArithmeticError("non-finite turn rate")
                if ctrl.obstacle_lost and "obstacle lost" not in flags:
                    flags.append("obstacle lost")
        except (ArithmeticError, ValueError) as exc:
            return terminal(OutcomeKind.CONTROLLER_FAULT, t, pose, 0.0, str(exc))

        mode, gamma = _labels(pursuit, ctrl, pstate)
        samples.append(Sample(t, pose, u, frame.d, frame.beta, mode, gamma))

        for sub in range(1, n_sub + 1):
            pose = integrate_arc(pose, v, u, h)
            t_sub = t + sub * h
            d_true, _ = scene_distance(pose.position, scene)
            if d_true < d_min:
                d_min = d_true
            if d_true < params.d_safe:
                return terminal(
                    OutcomeKind.SAFETY_VIOLATED, t_sub, pose, u, f"d={d_true:.6g} < d_safe={params.d_safe:g}"
                )
            if sub < n_sub and check_target_reached(pose, T, params):
                return terminal(OutcomeKind.TARGET_REACHED, t_sub, pose, u)
        tick += 1


def _labels(pursuit: bool, ctrl: ControllerState, pstate: PursuitState):
    if not pursuit:
        return ctrl.mode.value, ctrl.gamma
    if pstate.mode is PursuitMode.STRAIGHT:
        return "S", 0
    return "P", 1 if pstate.side is Side.LEFT else -1


def mode_intervals(traj: Trajectory, mode: str = "B"):
    """Maximal runs of consecutive samples in ``mode`` as (start, stop) index pairs."""
    out = []
    start = None
    for i, s in enumerate(traj.samples):
        if s.mode == mode and start is None:
            start = i
        elif s.mode != mode and start is not None:
            out.append((start, i))
            start = None
    if start is not None:
        out.append((start, len(traj.samples)))
    return out
