"""Sliding-mode obstacle-avoidance law for a constant-speed unicycle.

Two modes: ``A`` flies straight (zero turn rate) and ``B`` regulates the
distance to the obstacle onto the surface ``d_dot + chi(d - d_tar) = 0`` with
bang-bang turn rate. ``gamma`` picks the bypass side: -1 keeps the obstacle
on the vehicle's right (clockwise bypass), +1 on its left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from .geo import (
    INF,
    Scene,
    distance_to_obstacle,
    min_boundary_curvature_radius,
    neighborhood_boundary_samples,
    pairwise_obstacle_gap,
    segment_distance,
)
from .sensing import Pose, SensorConfig, SensorFrame


class Mode(str, Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class SlidingParams:
    v: float
    u_max: float
    d_safe: float
    d_tar: float
    d_trig: float
    epsilon: float
    l: float
    k: float
    beta_tol: float = 0.01
    capture_radius: float = 0.5
    gamma0: int = 1
    boundary_layer: float = 0.0

    def __post_init__(self):
        for name in ("v", "u_max", "epsilon", "l", "k", "beta_tol", "capture_radius"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0.0):
                raise ValueError(f"{name} must be finite and positive, got {val!r}")
        if not self.d_safe >= 0.0:
            raise ValueError("d_safe must be non-negative")
        if not self.d_safe < self.d_tar < self.d_trig:
            raise ValueError(
                f"need d_safe < d_tar < d_trig, got {self.d_safe}, {self.d_tar}, {self.d_trig}"
            )
        if self.gamma0 not in (-1, 1):
            raise ValueError("gamma0 must be -1 or +1")
        if self.boundary_layer < 0.0:
            raise ValueError("boundary_layer must be >= 0")

    @property
    def R(self) -> float:
        """Minimal turning radius v / u_max."""
        return self.v / self.u_max


@dataclass(frozen=True)
class ControllerState:
    mode: Mode = Mode.A
    gamma: int = 1
    prev_d: Optional[float] = None
    obstacle_lost: bool = False

    @classmethod
    def initial(cls, params: SlidingParams) -> "ControllerState":
        return cls(mode=Mode.A, gamma=params.gamma0)


def sgn(x: float) -> float:
    """Signum with sgn(0) = +1."""
    return 1.0 if x >= 0.0 else -1.0


def chi(r: float, l: float, k: float) -> float:
    """Linear function with saturation: l*r inside |r| < k, l*k*sgn(r) outside."""
    if abs(r) < k:
        return l * r
    return l * k * sgn(r)


def select_gamma(frame: SensorFrame, state: ControllerState, d_trig: float) -> int:
    """Bypass-side rule.

    ``phi_l`` / ``phi_r`` in the frame are the minimum (rightmost) and maximum
    (leftmost) vehicle-frame edge angles. The side whose edge is angularly
    closer to the heading wins: -1 (turn left, obstacle kept on the right)
    when the left edge is at least as close, +1 otherwise. Outside
    ``d_trig <= d < inf`` the previous value is held.
    """
    if not (d_trig <= frame.d < INF) or frame.phi_l is None or frame.phi_r is None:
        return state.gamma
    left_edge, right_edge = frame.phi_r, frame.phi_l
    return -1 if abs(left_edge) <= abs(right_edge) else 1


def step(frame: SensorFrame, state: ControllerState, params: SlidingParams) -> Tuple[float, ControllerState]:
    """Advance the mode machine by one sensor frame and return the turn rate.

    Gamma follows :func:`select_gamma` on every mode-A frame, so on entering
    mode B it carries the value from the last frame at or beyond ``d_trig``
    and is then frozen for the whole bypass. A->B fires on a downward
    crossing of ``d_trig`` (or the first finite reading already below it);
    B->A needs ``|beta| <= beta_tol`` and ``d <= d_tar + epsilon`` together.
    """
    d = frame.d
    mode, gamma = state.mode, state.gamma

    if mode is Mode.A:
        gamma = select_gamma(frame, state, params.d_trig)
        prev = state.prev_d
        if d <= params.d_trig and (prev is None or prev > params.d_trig):
            mode = Mode.B
    elif abs(frame.beta) <= params.beta_tol and d <= params.d_tar + params.epsilon:
        mode = Mode.A

    lost = False
    if mode is Mode.A:
        u = 0.0
    else:
        if math.isfinite(d):
            sigma = frame.d_dot + chi(d - params.d_tar, params.l, params.k)
        else:
            lost = True
            sigma = chi(INF, params.l, params.k)
        if params.boundary_layer > 0.0:
            s = max(-1.0, min(1.0, sigma / params.boundary_layer))
        else:
            s = sgn(sigma)
        u = params.u_max * gamma * s

    return u, ControllerState(mode=mode, gamma=gamma, prev_d=d, obstacle_lost=lost)


def check_target_reached(pose: Pose, target, params: SlidingParams) -> bool:
    return math.hypot(pose.position.x - target[0], pose.position.y - target[1]) <= params.capture_radius


# ---------------------------------------------------------------------------
# assumption / parameter validator


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.6g}"


@dataclass(frozen=True)
class ValidationEntry:
    """One strict inequality ``lhs < rhs``."""

    name: str
    lhs: float
    rhs: float
    note: str = ""

    @property
    def slack(self) -> float:
        if math.isinf(self.rhs) and self.rhs > 0 and not math.isinf(self.lhs):
            return INF
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.slack > 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{self.name}: lhs={_fmt(self.lhs)} rhs={_fmt(self.rhs)} slack={_fmt(self.slack)} {status}"
        return f"{text} ({self.note})" if self.note else text


@dataclass
class ValidationReport:
    entries: List[ValidationEntry] = field(default_factory=list)
    a5_samples: int = 0

    @property
    def all_passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def __getitem__(self, name: str) -> ValidationEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def failures(self) -> List[ValidationEntry]:
        return [e for e in self.entries if not e.passed]

    def to_text(self) -> str:
        return "\n".join(e.line() for e in self.entries) + "\n"


def cond1_lhs(params: SlidingParams, r_minus: float) -> float:
    R = params.R
    denom = min(params.d_tar, params.d_trig - 2.0 * R) + r_minus
    ratio = 1.0 - R / denom if denom > 0.0 else -INF
    if ratio == 0.0 or not math.isfinite(ratio):
        return INF
    return math.sqrt(1.0 + params.l ** 2 / (ratio ** 2 * params.u_max ** 2))


def _a5_entry(scene: Scene, params: SlidingParams, n: int) -> ValidationEntry:
    obs = scene.obstacles
    if len(obs) < 2:
        return ValidationEntry("A5 non-blocking", 0.0, INF, "vacuous: fewer than two obstacles")
    T = scene.target
    c_out = params.d_tar + params.epsilon
    rings = [neighborhood_boundary_samples(o, c_out, n) for o in obs]
    dists = [[math.hypot(z.x - T.x, z.y - T.y) for z in ring] for ring in rings]
    worst_lhs, worst_rhs, worst_slack = 0.0, INF, INF
    blocking = []
    for i in range(len(obs)):
        for j in range(len(obs)):
            if i == j:
                continue
            if not any(segment_distance(z, T, obs[j]) <= params.d_trig for z in rings[i]):
                continue
            blocking.append(f"{i}->{j}")
            lhs, rhs = max(dists[j]), min(dists[i])
            if rhs - lhs < worst_slack:
                worst_lhs, worst_rhs, worst_slack = lhs, rhs, rhs - lhs
    if not blocking:
        return ValidationEntry("A5 non-blocking", 0.0, INF, f"vacuous: no blocking pairs, {n} samples")
    return ValidationEntry(
        "A5 non-blocking", worst_lhs, worst_rhs, f"pairs {','.join(blocking)}, {n} samples"
    )


def validate(scene: Scene, params: SlidingParams, sensor: SensorConfig, a5_samples: int = 256) -> ValidationReport:
    """Evaluate the obstacle assumptions and parameter inequalities.

    Every entry is a strict inequality ``lhs < rhs``; failures are report
    entries, never exceptions. The sensor range used is the effective range
    ``L_des`` since nothing beyond it reaches the controller.
    """
    if a5_samples < 32:
        raise ValueError("a5_samples must be >= 32")
    R = params.R
    L = sensor.L_des
    gap = pairwise_obstacle_gap(scene)
    r_minus = min_boundary_curvature_radius(scene)
    m = max(params.d_safe, R)

    entries = []
    note = "vacuous: fewer than two obstacles" if len(scene.obstacles) < 2 else ""
    entries.append(ValidationEntry("A2 spacing", 2.0 * (3.0 * R + m), gap, note))
    entries.append(ValidationEntry("sensor range", 4.0 * R + m, L))
    if scene.obstacles:
        clearance = min(distance_to_obstacle(scene.target, o) for o in scene.obstacles)
        entries.append(ValidationEntry("A4 target clearance", m, clearance))
    else:
        entries.append(ValidationEntry("A4 target clearance", m, INF, "vacuous: no obstacles"))
    entries.append(ValidationEntry("d_tar lower bound", max(params.d_safe, R - r_minus), params.d_tar))
    entries.append(
        ValidationEntry(
            "d_trig lower bound",
            max(params.d_tar + params.epsilon, params.d_safe + 2.0 * R, 3.0 * R),
            params.d_trig,
        )
    )
    entries.append(ValidationEntry("d_trig upper bound", params.d_trig, min(L - 2.0 * R, 0.5 * gap - R)))
    entries.append(ValidationEntry("main cond1", cond1_lhs(params, r_minus), params.v / (params.l * params.k)))
    entries.append(_a5_entry(scene, params, a5_samples))
    return ValidationReport(entries=entries, a5_samples=a5_samples)
