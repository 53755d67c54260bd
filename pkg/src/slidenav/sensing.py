"""Simulated scanning range sensor.

A scan yields everything the navigation laws observe: the exact distance to
the nearest obstacle (when within the usable range), its rate of change, the
angular extent of the nearest obstacle's visible part, and the bearing to the
target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .geo import INF, Scene, Vec2, as_vec2, nearest_point, ray_cast_fan, scene_distance


def wrap_angle(a: float) -> float:
    """Wrap to the half-open interval (-pi, pi]."""
    w = math.remainder(a, 2.0 * math.pi)
    if w <= -math.pi:
        w += 2.0 * math.pi
    return w


@dataclass(frozen=True)
class Pose:
    position: Vec2
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "position", as_vec2(self.position))
        if not math.isfinite(self.theta):
            raise ValueError("heading must be finite")
        object.__setattr__(self, "theta", wrap_angle(float(self.theta)))

    @property
    def x(self) -> float:
        return self.position.x

    @property
    def y(self) -> float:
        return self.position.y


@dataclass(frozen=True)
class SensorConfig:
    """Range sensor settings.

    ``effective_range_Ldes`` defaults to ``range_L``; observations beyond it
    are discarded. ``ddot_smoothing`` is an exponential smoothing weight on
    the previous rate estimate, 0 disables it.
    """

    range_L: float
    effective_range_Ldes: Optional[float] = None
    ray_count: int = 720
    dt_ctrl: float = 0.2
    ddot_smoothing: float = 0.0

    def __post_init__(self):
        if not self.range_L > 0.0:
            raise ValueError("sensor range must be positive")
        ldes = self.range_L if self.effective_range_Ldes is None else float(self.effective_range_Ldes)
        if not 0.0 < ldes <= self.range_L:
            raise ValueError("effective range must lie in (0, range_L]")
        object.__setattr__(self, "effective_range_Ldes", ldes)
        if int(self.ray_count) != self.ray_count or self.ray_count < 16:
            raise ValueError("ray_count must be an integer >= 16")
        object.__setattr__(self, "ray_count", int(self.ray_count))
        if not self.dt_ctrl > 0.0:
            raise ValueError("dt_ctrl must be positive")
        if not 0.0 <= self.ddot_smoothing < 1.0:
            raise ValueError("ddot_smoothing must lie in [0, 1)")

    @property
    def L_des(self) -> float:
        return self.effective_range_Ldes


@dataclass(frozen=True, eq=False)
class SensorFrame:
    d: float
    d_dot: float
    phi_l: Optional[float]
    phi_r: Optional[float]
    beta: float
    nearest_obstacle: Optional[int]
    angles: np.ndarray = field(repr=False)
    hit_distances: np.ndarray = field(repr=False)
    hit_obstacles: np.ndarray = field(repr=False)

    @property
    def ray_hits(self) -> List[Optional[Tuple[float, int]]]:
        return [
            None if i < 0 else (float(r), int(i))
            for r, i in zip(self.hit_distances, self.hit_obstacles)
        ]

    @property
    def ray_count(self) -> int:
        return len(self.angles)


_ANGLE_CACHE: dict = {}


def ray_angles(n: int) -> np.ndarray:
    """Vehicle-frame ray angles k * 2pi/n for k = -n/2 .. n/2 - 1 (n even).

    Built from signed integer multiples so the fan is exactly symmetric
    about the heading; odd ``n`` simply drops the -pi ray.
    """
    arr = _ANGLE_CACHE.get(n)
    if arr is None:
        step = 2.0 * math.pi / n
        lo = -(n // 2)
        arr = np.arange(lo, lo + n, dtype=float) * step
        arr.setflags(write=False)
        _ANGLE_CACHE[n] = arr
    return arr


def target_bearing(pose: Pose, target) -> float:
    """Signed angle from the heading to the target, positive to the left."""
    tx, ty = float(target[0]), float(target[1])
    dx, dy = tx - pose.position.x, ty - pose.position.y
    if dx == 0.0 and dy == 0.0:
        raise ValueError("at target: bearing undefined")
    return wrap_angle(math.atan2(dy, dx) - pose.theta)


def scan(
    pose: Pose,
    scene: Scene,
    cfg: SensorConfig,
    prev_d: Optional[float] = None,
    prev_d_dot: Optional[float] = None,
    rays: bool = True,
) -> SensorFrame:
    """One sensor sweep.

    ``d`` is the exact distance from the geometry kernel (not quantised by
    the ray fan) and is reported as INF beyond the effective range. The edge
    angles ``phi_l <= phi_r`` span the rays that hit the nearest obstacle,
    together with the exact direction to its closest point.

    With ``rays=False`` the fan is skipped: the ray arrays are empty and the
    edge angles are None. Callers that do not consume them save most of the
    cost of a sweep.
    """
    ldes = cfg.L_des
    if rays:
        angles = ray_angles(cfg.ray_count)
        dist, idx = ray_cast_fan(pose.position, angles + pose.theta, scene, ldes)
    else:
        angles = dist = np.empty(0)
        idx = np.empty(0, dtype=np.int64)

    d, nearest = scene_distance(pose.position, scene)
    if d > ldes:
        d, nearest = INF, None

    phi_l = phi_r = None
    if nearest is not None and rays:
        on_nearest = angles[idx == nearest]
        q = nearest_point(pose.position, scene.obstacles[nearest])
        if d > 0.0:
            a0 = wrap_angle(math.atan2(q.y - pose.position.y, q.x - pose.position.x) - pose.theta)
        else:
            a0 = 0.0
        if on_nearest.size:
            phi_l = min(float(on_nearest[0]), a0)
            phi_r = max(float(on_nearest[-1]), a0)
        else:
            phi_l = phi_r = a0

    if prev_d is not None and math.isfinite(prev_d) and math.isfinite(d):
        raw = (d - prev_d) / cfg.dt_ctrl
        if cfg.ddot_smoothing > 0.0 and prev_d_dot is not None:
            d_dot = cfg.ddot_smoothing * prev_d_dot + (1.0 - cfg.ddot_smoothing) * raw
        else:
            d_dot = raw
    else:
        d_dot = 0.0

    try:
        beta = target_bearing(pose, scene.target)
    except ValueError:
        beta = 0.0

    return SensorFrame(
        d=d,
        d_dot=d_dot,
        phi_l=phi_l,
        phi_r=phi_r,
        beta=beta,
        nearest_obstacle=nearest,
        angles=angles,
        hit_distances=dist,
        hit_obstacles=idx,
    )
