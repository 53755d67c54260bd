"""Planar geometry kernel: convex obstacles, distances, ray casting, neighborhoods.

Obstacles are either discs or strictly convex polygons with counter-clockwise
vertices. Every query here is a pure function of immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

INF = math.inf

_INSIDE_TOL = 1e-12


class Vec2(NamedTuple):
    x: float
    y: float


def as_vec2(p) -> Vec2:
    v = Vec2(float(p[0]), float(p[1]))
    if not (math.isfinite(v.x) and math.isfinite(v.y)):
        raise ValueError(f"non-finite point {p!r}")
    return v


def _cross(ax: float, ay: float, bx: float, by: float) -> float:
    return ax * by - ay * bx


@dataclass(frozen=True)
class Disc:
    center: Vec2
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vec2(self.center))
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0.0):
            raise ValueError(f"disc radius must be finite and positive, got {self.radius!r}")
        object.__setattr__(self, "radius", r)


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: Tuple[Vec2, ...]
    _edges: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(as_vec2(v) for v in self.vertices)
        n = len(verts)
        if n < 3:
            raise ValueError("polygon needs at least 3 vertices")
        if len(set(verts)) != n:
            raise ValueError("polygon has repeated vertices")
        for i in range(n):
            a, b, c = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
            turn = _cross(b.x - a.x, b.y - a.y, c.x - b.x, c.y - b.y)
            if turn <= 0.0:
                raise ValueError(
                    "polygon must be strictly convex with counter-clockwise vertices "
                    f"(turn at vertex {(i + 1) % n} is {turn:g})"
                )
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "_edges", tuple((verts[i], verts[(i + 1) % n]) for i in range(n)))

    @property
    def edges(self):
        return self._edges


Obstacle = Union[Disc, ConvexPolygon]


@dataclass(frozen=True)
class Scene:
    obstacles: Tuple[Obstacle, ...]
    target: Vec2

    def __post_init__(self):
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        object.__setattr__(self, "target", as_vec2(self.target))
        for i, obs in enumerate(self.obstacles):
            if not isinstance(obs, (Disc, ConvexPolygon)):
                raise TypeError(f"obstacle {i} is not a Disc or ConvexPolygon")
            if distance_to_obstacle(self.target, obs) <= 0.0:
                raise ValueError(f"target lies inside obstacle {i}")


def rectangle(x0: float, y0: float, x1: float, y1: float) -> ConvexPolygon:
    """Axis-aligned rectangle [x0, x1] x [y0, y1] as a counter-clockwise polygon."""
    if not (x1 > x0 and y1 > y0):
        raise ValueError("rectangle needs x1 > x0 and y1 > y0")
    return ConvexPolygon(((x0, y0), (x1, y0), (x1, y1), (x0, y1)))


# ---------------------------------------------------------------------------
# distances


def point_segment_distance(px: float, py: float, ax: float, ay: float, bx: float, by: float) -> float:
    ex, ey = bx - ax, by - ay
    wx, wy = px - ax, py - ay
    ee = ex * ex + ey * ey
    t = 0.0 if ee == 0.0 else max(0.0, min(1.0, (wx * ex + wy * ey) / ee))
    return math.hypot(wx - t * ex, wy - t * ey)


def _polygon_contains(px: float, py: float, poly: ConvexPolygon) -> bool:
    for a, b in poly.edges:
        if _cross(b.x - a.x, b.y - a.y, px - a.x, py - a.y) < 0.0:
            return False
    return True


def contains(p, obs: Obstacle) -> bool:
    """Closed-set membership test."""
    return distance_to_obstacle(p, obs) == 0.0


def distance_to_obstacle(p, obs: Obstacle) -> float:
    """Euclidean distance from ``p`` to the closed obstacle set (0 inside)."""
    px, py = float(p[0]), float(p[1])
    if isinstance(obs, Disc):
        return max(0.0, math.hypot(px - obs.center.x, py - obs.center.y) - obs.radius)
    if _polygon_contains(px, py, obs):
        return 0.0
    return min(point_segment_distance(px, py, a.x, a.y, b.x, b.y) for a, b in obs.edges)


def scene_distance(p, scene: Scene) -> Tuple[float, Optional[int]]:
    """Distance to the nearest obstacle and its index; ``(INF, None)`` for an empty scene.

    Ties go to the lowest index.
    """
    best, best_i = INF, None
    for i, obs in enumerate(scene.obstacles):
        d = distance_to_obstacle(p, obs)
        if d < best:
            best, best_i = d, i
    return best, best_i


def nearest_point(p, obs: Obstacle) -> Vec2:
    """Closest point of the obstacle to ``p`` (``p`` itself if inside)."""
    px, py = float(p[0]), float(p[1])
    if isinstance(obs, Disc):
        dx, dy = px - obs.center.x, py - obs.center.y
        r = math.hypot(dx, dy)
        if r <= obs.radius:
            return Vec2(px, py)
        s = obs.radius / r
        return Vec2(obs.center.x + s * dx, obs.center.y + s * dy)
    if _polygon_contains(px, py, obs):
        return Vec2(px, py)
    best, best_q = INF, None
    for a, b in obs.edges:
        ex, ey = b.x - a.x, b.y - a.y
        t = max(0.0, min(1.0, ((px - a.x) * ex + (py - a.y) * ey) / (ex * ex + ey * ey)))
        qx, qy = a.x + t * ex, a.y + t * ey
        d = math.hypot(px - qx, py - qy)
        if d < best:
            best, best_q = d, Vec2(qx, qy)
    return best_q


def _segments_intersect(a, b, c, d) -> bool:
    d1 = _cross(b[0] - a[0], b[1] - a[1], c[0] - a[0], c[1] - a[1])
    d2 = _cross(b[0] - a[0], b[1] - a[1], d[0] - a[0], d[1] - a[1])
    d3 = _cross(d[0] - c[0], d[1] - c[1], a[0] - c[0], a[1] - c[1])
    d4 = _cross(d[0] - c[0], d[1] - c[1], b[0] - c[0], b[1] - c[1])
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    # collinear / touching cases
    def on_seg(p, q, r):
        return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])

    return (
        (d1 == 0 and on_seg(a, b, c))
        or (d2 == 0 and on_seg(a, b, d))
        or (d3 == 0 and on_seg(c, d, a))
        or (d4 == 0 and on_seg(c, d, b))
    )


def segment_distance(a, b, obs: Obstacle) -> float:
    """Distance between the closed segment [a, b] and the obstacle."""
    ax, ay, bx, by = float(a[0]), float(a[1]), float(b[0]), float(b[1])
    if isinstance(obs, Disc):
        return max(0.0, point_segment_distance(obs.center.x, obs.center.y, ax, ay, bx, by) - obs.radius)
    if _polygon_contains(ax, ay, obs) or _polygon_contains(bx, by, obs):
        return 0.0
    for p, q in obs.edges:
        if _segments_intersect((ax, ay), (bx, by), p, q):
            return 0.0
    best = min(distance_to_obstacle((ax, ay), obs), distance_to_obstacle((bx, by), obs))
    for v in obs.vertices:
        best = min(best, point_segment_distance(v.x, v.y, ax, ay, bx, by))
    return best


def obstacle_gap(a: Obstacle, b: Obstacle) -> float:
    """Set distance inf ||r' - r''|| between two obstacles."""
    if isinstance(a, Disc) and isinstance(b, Disc):
        return max(0.0, math.hypot(a.center.x - b.center.x, a.center.y - b.center.y) - a.radius - b.radius)
    if isinstance(a, Disc):
        return max(0.0, distance_to_obstacle(a.center, b) - a.radius)
    if isinstance(b, Disc):
        return max(0.0, distance_to_obstacle(b.center, a) - b.radius)
    for p, q in a.edges:
        for r, s in b.edges:
            if _segments_intersect(p, q, r, s):
                return 0.0
    best = min(distance_to_obstacle(v, b) for v in a.vertices)
    return min(best, min(distance_to_obstacle(v, a) for v in b.vertices))


def pairwise_obstacle_gap(scene: Scene) -> float:
    """Smallest pairwise set distance; ``INF`` with fewer than two obstacles."""
    obs = scene.obstacles
    best = INF
    for i in range(len(obs)):
        for j in range(i + 1, len(obs)):
            best = min(best, obstacle_gap(obs[i], obs[j]))
    return best


def min_boundary_curvature_radius(scene: Scene) -> float:
    """Smallest boundary curvature radius over the scene.

    Polygon corners count as radius 0, so any polygon forces 0. An empty
    scene gives ``INF``.
    """
    best = INF
    for obs in scene.obstacles:
        if isinstance(obs, ConvexPolygon):
            return 0.0
        best = min(best, obs.radius)
    return best


# ---------------------------------------------------------------------------
# ray casting


def _ray_disc(ox: float, oy: float, dx: float, dy: float, disc: Disc) -> float:
    wx, wy = ox - disc.center.x, oy - disc.center.y
    c = wx * wx + wy * wy - disc.radius * disc.radius
    if c <= 0.0:
        return 0.0
    b = dx * wx + dy * wy
    if b >= 0.0:
        return INF
    disc_ = b * b - c
    if disc_ < 0.0:
        return INF
    # c / q form avoids cancellation for grazing rays
    q = -b + math.sqrt(disc_)
    return c / q


def _ray_polygon(ox: float, oy: float, dx: float, dy: float, poly: ConvexPolygon) -> float:
    if _polygon_contains(ox, oy, poly):
        return 0.0
    best = INF
    for a, b in poly.edges:
        ex, ey = b.x - a.x, b.y - a.y
        denom = _cross(dx, dy, ex, ey)
        if denom == 0.0:
            continue
        wx, wy = a.x - ox, a.y - oy
        t = _cross(wx, wy, ex, ey) / denom
        s = _cross(wx, wy, dx, dy) / denom
        if t >= 0.0 and 0.0 <= s <= 1.0 and t < best:
            best = t
    return best


def ray_distance(origin, direction, obs: Obstacle) -> float:
    """Distance along a unit-direction ray to the obstacle, ``INF`` on a miss."""
    ox, oy = float(origin[0]), float(origin[1])
    dx, dy = float(direction[0]), float(direction[1])
    if isinstance(obs, Disc):
        return _ray_disc(ox, oy, dx, dy, obs)
    return _ray_polygon(ox, oy, dx, dy, obs)


def _unit(direction) -> Tuple[float, float]:
    dx, dy = float(direction[0]), float(direction[1])
    n = math.hypot(dx, dy)
    if n == 0.0 or not math.isfinite(n):
        raise ValueError("ray direction must be a non-zero finite vector")
    return dx / n, dy / n


def ray_cast(origin, direction, scene: Scene, max_range: float) -> Optional[Tuple[float, int]]:
    """Nearest hit ``(distance, obstacle index)`` within ``max_range``, else None.

    ``direction`` is normalised here; a zero vector raises ValueError.
    """
    if not max_range > 0.0:
        raise ValueError("max_range must be positive")
    dx, dy = _unit(direction)
    best, best_i = INF, None
    for i, obs in enumerate(scene.obstacles):
        t = ray_distance(origin, (dx, dy), obs)
        if t < best:
            best, best_i = t, i
    if best_i is None or best > max_range:
        return None
    return best, best_i


def ray_cast_fan(origin, angles: np.ndarray, scene: Scene, max_range: float):
    """Vectorised ray casting over world-frame ``angles``.

    Returns ``(dist, idx)`` arrays; misses carry ``inf`` and ``-1``.
    """
    ox, oy = float(origin[0]), float(origin[1])
    dx, dy = np.cos(angles), np.sin(angles)
    dist = np.full(angles.shape, np.inf)
    idx = np.full(angles.shape, -1, dtype=np.int64)
    for i, obs in enumerate(scene.obstacles):
        t = _fan_disc(ox, oy, dx, dy, obs) if isinstance(obs, Disc) else _fan_polygon(ox, oy, dx, dy, obs)
        closer = t < dist
        dist = np.where(closer, t, dist)
        idx = np.where(closer, i, idx)
    miss = dist > max_range
    dist[miss] = np.inf
    idx[miss] = -1
    return dist, idx


def _fan_disc(ox, oy, dx, dy, disc: Disc) -> np.ndarray:
    wx, wy = ox - disc.center.x, oy - disc.center.y
    c = wx * wx + wy * wy - disc.radius * disc.radius
    if c <= 0.0:
        return np.zeros_like(dx)
    b = dx * wx + dy * wy
    disc_ = b * b - c
    ok = (b < 0.0) & (disc_ >= 0.0)
    q = -b + np.sqrt(np.where(ok, disc_, 0.0))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        t = c / q
    return np.where(ok, t, np.inf)


def _fan_polygon(ox, oy, dx, dy, poly: ConvexPolygon) -> np.ndarray:
    if _polygon_contains(ox, oy, poly):
        return np.zeros_like(dx)
    best = np.full(dx.shape, np.inf)
    for a, b in poly.edges:
        ex, ey = b.x - a.x, b.y - a.y
        wx, wy = a.x - ox, a.y - oy
        denom = dx * ey - dy * ex
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            t = (wx * ey - wy * ex) / denom
            s = (wx * dy - wy * dx) / denom
        ok = (denom != 0.0) & (t >= 0.0) & (s >= 0.0) & (s <= 1.0)
        best = np.where(ok & (t < best), t, best)
    return best


# ---------------------------------------------------------------------------
# neighborhoods


def neighborhood_boundary_samples(obs: Obstacle, c: float, n: int) -> list:
    """``n`` points spaced evenly by arc length on the boundary of N[c, obs].

    For a polygon the offset boundary is made of the edges pushed outward by
    ``c`` joined by radius-``c`` arcs around each vertex.
    """
    if c < 0.0:
        raise ValueError("neighborhood radius must be non-negative")
    if n < 1:
        raise ValueError("need at least one sample")
    if isinstance(obs, Disc):
        rho = obs.radius + c
        ang = 2.0 * np.pi * np.arange(n) / n
        return [Vec2(obs.center.x + rho * math.cos(a), obs.center.y + rho * math.sin(a)) for a in ang]

    verts = obs.vertices
    m = len(verts)
    normals = []
    lengths = []
    for a, b in obs.edges:
        ex, ey = b.x - a.x, b.y - a.y
        le = math.hypot(ex, ey)
        normals.append((ey / le, -ex / le))
        lengths.append(le)
    # piece list: ("edge", i) then ("arc", vertex i+1)
    pieces = []
    for i in range(m):
        pieces.append(("edge", i, lengths[i]))
        n0, n1 = normals[i], normals[(i + 1) % m]
        turn = math.atan2(_cross(n0[0], n0[1], n1[0], n1[1]), n0[0] * n1[0] + n0[1] * n1[1])
        pieces.append(("arc", i, c * turn))
    total = sum(p[2] for p in pieces)
    out = []
    cum = np.cumsum([p[2] for p in pieces])
    for k in range(n):
        s = total * k / n
        j = int(np.searchsorted(cum, s, side="right"))
        j = min(j, len(pieces) - 1)
        kind, i, length = pieces[j]
        local = s - (cum[j] - length)
        if kind == "edge":
            a, b = verts[i], verts[(i + 1) % m]
            f = 0.0 if length == 0.0 else local / length
            nx, ny = normals[i]
            out.append(Vec2(a.x + f * (b.x - a.x) + c * nx, a.y + f * (b.y - a.y) + c * ny))
        else:
            v = verts[(i + 1) % m]
            n0 = normals[i]
            phi = math.atan2(n0[1], n0[0]) + (local / c if c > 0.0 else 0.0)
            out.append(Vec2(v.x + c * math.cos(phi), v.y + c * math.sin(phi)))
    return out


# ---------------------------------------------------------------------------
# rigid transforms (used for equivariance checks and mirrored scenarios)


def _rot(p, angle: float, about=(0.0, 0.0), shift=(0.0, 0.0)) -> Vec2:
    ca, sa = math.cos(angle), math.sin(angle)
    x, y = float(p[0]) - about[0], float(p[1]) - about[1]
    return Vec2(about[0] + ca * x - sa * y + shift[0], about[1] + sa * x + ca * y + shift[1])


def _mirror(p, origin, direction) -> Vec2:
    ux, uy = _unit(direction)
    x, y = float(p[0]) - origin[0], float(p[1]) - origin[1]
    along = x * ux + y * uy
    return Vec2(origin[0] + 2.0 * along * ux - x, origin[1] + 2.0 * along * uy - y)


def rotate_obstacle(obs: Obstacle, angle: float, about=(0.0, 0.0), shift=(0.0, 0.0)) -> Obstacle:
    if isinstance(obs, Disc):
        return Disc(_rot(obs.center, angle, about, shift), obs.radius)
    return ConvexPolygon(tuple(_rot(v, angle, about, shift) for v in obs.vertices))


def mirror_obstacle(obs: Obstacle, origin, direction) -> Obstacle:
    """Reflect across the line through ``origin`` along ``direction``."""
    if isinstance(obs, Disc):
        return Disc(_mirror(obs.center, origin, direction), obs.radius)
    # reflection flips orientation; reverse to stay counter-clockwise
    return ConvexPolygon(tuple(_mirror(v, origin, direction) for v in reversed(obs.vertices)))


def rotate_scene(scene: Scene, angle: float, about=(0.0, 0.0), shift=(0.0, 0.0)) -> Scene:
    return Scene(
        tuple(rotate_obstacle(o, angle, about, shift) for o in scene.obstacles),
        _rot(scene.target, angle, about, shift),
    )


def mirror_scene(scene: Scene, origin, direction) -> Scene:
    return Scene(
        tuple(mirror_obstacle(o, origin, direction) for o in scene.obstacles),
        _mirror(scene.target, origin, direction),
    )


def rotate_point(p, angle: float, about=(0.0, 0.0), shift=(0.0, 0.0)) -> Vec2:
    return _rot(p, angle, about, shift)


def mirror_point(p, origin, direction) -> Vec2:
    return _mirror(p, origin, direction)


def polygon_from_points(points: Sequence) -> ConvexPolygon:
    """Build a polygon, reversing clockwise input to counter-clockwise."""
    pts = [as_vec2(p) for p in points]
    area = sum(_cross(pts[i].x, pts[i].y, pts[(i + 1) % len(pts)].x, pts[(i + 1) % len(pts)].y) for i in range(len(pts)))
    if area < 0.0:
        pts.reverse()
    return ConvexPolygon(tuple(pts))
