"""Trajectory export: CSV log and a static SVG plot."""

from __future__ import annotations

import csv
import io
import math
from typing import Iterable, List, Optional, TextIO, Tuple

from .geo import ConvexPolygon, Disc, Scene, neighborhood_boundary_samples
from .sim import Trajectory
from .sliding_ctrl import SlidingParams

CSV_HEADER = ("t", "x", "y", "theta", "u", "d", "beta", "mode", "gamma")


def _num(x: float) -> str:
    # repr round-trips floats exactly and spells infinity "inf"
    return repr(float(x))


def write_csv(traj: Trajectory, out: TextIO) -> None:
    """One row per controller tick plus the terminal row."""
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for s in traj.samples:
        w.writerow(
            [
                _num(s.t),
                _num(s.pose.x),
                _num(s.pose.y),
                _num(s.pose.theta),
                _num(s.u),
                _num(s.d),
                _num(s.beta),
                s.mode,
                str(int(s.gamma)),
            ]
        )


def csv_text(traj: Trajectory) -> str:
    buf = io.StringIO()
    write_csv(traj, buf)
    return buf.getvalue()


def read_csv(src: TextIO) -> List[dict]:
    """Parse a CSV written by :func:`write_csv` back into typed rows."""
    rows = []
    reader = csv.DictReader(src)
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"unexpected header {reader.fieldnames}")
    for r in reader:
        row = {k: float(r[k]) for k in CSV_HEADER if k not in ("mode", "gamma")}
        row["mode"] = r["mode"]
        row["gamma"] = int(r["gamma"])
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# SVG


def _bounds(points: Iterable[Tuple[float, float]]) -> Tuple[float, float, float, float]:
    xs, ys = [], []
    for x, y in points:
        if math.isfinite(x) and math.isfinite(y):
            xs.append(x)
            ys.append(y)
    if not xs:
        return -1.0, -1.0, 1.0, 1.0
    return min(xs), min(ys), max(xs), max(ys)


def _ring_points(obs, c: float, n: int = 128) -> List[Tuple[float, float]]:
    return [(p.x, p.y) for p in neighborhood_boundary_samples(obs, c, n)]


def _poly_attr(pts) -> str:
    return " ".join(f"{x:.6g},{-y:.6g}" for x, y in pts)


def svg_text(
    scene: Scene,
    traj: Trajectory,
    params: Optional[SlidingParams] = None,
    width: int = 800,
    title: str = "",
) -> str:
    """Obstacles filled, dashed d_tar and d_trig rings, path, start and target.

    World y points up; the drawing flips it through negated coordinates.
    """
    path = [(s.pose.x, s.pose.y) for s in traj.samples]
    rings = []
    if params is not None:
        for obs in scene.obstacles:
            rings.append(("#2a7", _ring_points(obs, params.d_tar)))
            rings.append(("#c70", _ring_points(obs, params.d_trig)))
    pts = list(path) + [tuple(scene.target)]
    for obs in scene.obstacles:
        pts.extend(_ring_points(obs, 0.0, 32))
    for _, r in rings:
        pts.extend(r)
    x0, y0, x1, y1 = _bounds(pts)
    pad = 0.05 * max(x1 - x0, y1 - y0, 1e-9)
    x0, y0, x1, y1 = x0 - pad, y0 - pad, x1 + pad, y1 + pad
    w, h = x1 - x0, y1 - y0
    height = max(1, int(round(width * h / w)))
    stroke = w / width

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{x0:.6g} {-y1:.6g} {w:.6g} {h:.6g}">'
    ]
    if title:
        out.append(f"<title>{title}</title>")
    for obs in scene.obstacles:
        if isinstance(obs, Disc):
            out.append(
                f'<circle cx="{obs.center.x:.6g}" cy="{-obs.center.y:.6g}" r="{obs.radius:.6g}" '
                'fill="#888" stroke="none"/>'
            )
        elif isinstance(obs, ConvexPolygon):
            out.append(f'<polygon points="{_poly_attr(obs.vertices)}" fill="#888" stroke="none"/>')
    dash = f"{6 * stroke:.4g},{4 * stroke:.4g}"
    for color, ring in rings:
        out.append(
            f'<polygon points="{_poly_attr(ring)}" fill="none" stroke="{color}" '
            f'stroke-width="{stroke:.4g}" stroke-dasharray="{dash}"/>'
        )
    if len(path) >= 2:
        out.append(
            f'<polyline points="{_poly_attr(path)}" fill="none" stroke="#15c" stroke-width="{2 * stroke:.4g}"/>'
        )
    if path:
        sx, sy = path[0]
        out.append(f'<circle cx="{sx:.6g}" cy="{-sy:.6g}" r="{5 * stroke:.4g}" fill="#15c"/>')
    tx, ty = scene.target
    m = 6 * stroke
    out.append(
        f'<path d="M{tx - m:.6g},{-ty - m:.6g} L{tx + m:.6g},{-ty + m:.6g} '
        f'M{tx - m:.6g},{-ty + m:.6g} L{tx + m:.6g},{-ty - m:.6g}" '
        f'stroke="#d22" stroke-width="{2 * stroke:.4g}"/>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
