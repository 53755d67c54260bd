"""Idealised edge-pursuit navigation (the receding-horizon principle, no optimiser).

The vehicle is a point with unbounded turn rate: it heads straight for the
target until the visible part of an obstacle blocks the straight segment,
then heads constantly at the edge of that visible part on the chosen side,
and resumes the straight move once the segment is clear again.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .geo import Scene, Vec2, ray_cast
from .sensing import Pose, SensorFrame, wrap_angle

log = logging.getLogger(__name__)

_TIE_TOL = 1e-9
_BISECT_TOL = 1e-12


class PursuitMode(str, Enum):
    STRAIGHT = "straight"
    PURSUIT = "pursuit"


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class PursuitState:
    mode: PursuitMode = PursuitMode.STRAIGHT
    side: Optional[Side] = None
    edge: Optional[Vec2] = None


def _obstruction(frame: SensorFrame, pose: Pose, target, L: float, scene: Optional[Scene]):
    """Obstacle index blocking the straight segment to the target, or None."""
    tx, ty = float(target[0]), float(target[1])
    dist = math.hypot(tx - pose.x, ty - pose.y)
    if dist == 0.0:
        return None
    reach = min(L, dist)
    if scene is not None:
        hit = ray_cast(pose.position, (tx - pose.x, ty - pose.y), scene, reach)
        return None if hit is None else hit[1]
    # ray-only: the two rays bracketing the target direction must hit the same obstacle
    n = frame.ray_count
    step = 2.0 * math.pi / n
    lo = int(math.floor(frame.beta / step)) - int(round(frame.angles[0] / step))
    i0, i1 = lo % n, (lo + 1) % n
    o0, o1 = frame.hit_obstacles[i0], frame.hit_obstacles[i1]
    if o0 < 0 or o0 != o1:
        return None
    a0 = frame.angles[i0]
    w = wrap_angle(frame.beta - a0) / step
    r = (1.0 - w) * frame.hit_distances[i0] + w * frame.hit_distances[i1]
    return int(o0) if r <= reach else None


def _edge_angle(
    frame: SensorFrame, pose: Pose, obstacle: int, side: Side, L: float, scene: Optional[Scene]
) -> Tuple[float, float]:
    """Vehicle-frame angle and range of the visible edge of ``obstacle`` on ``side``.

    Walks the ray fan outward from the target direction while rays keep
    hitting the obstacle within ``L``; with a scene the boundary between the
    last hit and first miss is then located by bisection.
    """
    n = frame.ray_count
    step = 2.0 * math.pi / n
    sign = 1.0 if side is Side.LEFT else -1.0
    base = int(round(frame.angles[0] / step))
    beta = frame.beta
    if side is Side.LEFT:
        j = int(math.floor(beta / step)) + 1
    else:
        j = int(math.ceil(beta / step)) - 1
    inner = beta
    inner_r = None
    outer = None
    for _ in range(n):
        a = j * step
        i = (j - base) % n
        if frame.hit_obstacles[i] == obstacle and frame.hit_distances[i] <= L:
            inner, inner_r = a, float(frame.hit_distances[i])
            j += int(sign)
        else:
            outer = a
            break
    if scene is None or outer is None:
        if inner_r is None:
            inner_r = L
        return wrap_angle(inner), inner_r

    def hits(a: float):
        h = ray_cast(pose.position, (math.cos(pose.theta + a), math.sin(pose.theta + a)), scene, L)
        return h if h is not None and h[1] == obstacle else None

    h_in = hits(inner)
    if h_in is None:
        # the target direction itself should hit; fall back to the fan
        return wrap_angle(inner), inner_r if inner_r is not None else L
    while abs(outer - inner) > _BISECT_TOL:
        mid = 0.5 * (inner + outer)
        h = hits(mid)
        if h is None:
            outer = mid
        else:
            inner, h_in = mid, h
    return wrap_angle(outer), h_in[0]


def pursuit_step(
    frame: SensorFrame,
    pose: Pose,
    target,
    state: PursuitState,
    L: float,
    scene: Optional[Scene] = None,
) -> Tuple[float, PursuitState]:
    """One decision of the edge-pursuit law; returns a world-frame heading.

    Passing ``scene`` refines obstruction and edge positions exactly;
    without it both come from the ray fan alone.
    """
    tx, ty = float(target[0]), float(target[1])
    if tx == pose.x and ty == pose.y:
        return pose.theta, PursuitState()
    to_target = math.atan2(ty - pose.y, tx - pose.x)

    blocker = _obstruction(frame, pose, target, L, scene)
    if blocker is None:
        return wrap_angle(to_target), PursuitState()

    side = state.side if state.mode is PursuitMode.PURSUIT else None
    if side is None:
        # smaller heading change wins; exact ties turn left
        left = _edge_angle(frame, pose, blocker, Side.LEFT, L, scene)
        right = _edge_angle(frame, pose, blocker, Side.RIGHT, L, scene)
        side = Side.LEFT if abs(left[0]) <= abs(right[0]) + _TIE_TOL else Side.RIGHT
        a_edge, r_edge = left if side is Side.LEFT else right
    else:
        a_edge, r_edge = _edge_angle(frame, pose, blocker, side, L, scene)

    heading = wrap_angle(pose.theta + a_edge)
    edge = Vec2(pose.x + r_edge * math.cos(heading), pose.y + r_edge * math.sin(heading))
    if state.edge is not None and state.mode is PursuitMode.PURSUIT:
        jump = math.hypot(edge.x - state.edge.x, edge.y - state.edge.y)
        if jump > 0.25 * L:
            log.info("visible edge jumped by %.3g (occlusion or real corner)", jump)
    return heading, PursuitState(mode=PursuitMode.PURSUIT, side=side, edge=edge)


def visible_points(frame: SensorFrame, pose: Pose) -> np.ndarray:
    """World coordinates of all ray hits (for plotting)."""
    ok = frame.hit_obstacles >= 0
    ang = frame.angles[ok] + pose.theta
    r = frame.hit_distances[ok]
    return np.column_stack([pose.x + r * np.cos(ang), pose.y + r * np.sin(ang)])
