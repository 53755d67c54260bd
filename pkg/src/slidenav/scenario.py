"""JSON scenario files: schema-checked loading and exact round-trip dumping."""

from __future__ import annotations

import json
from dataclasses import asdict, replace
from importlib import resources
from typing import Any, Dict, Optional

import jsonschema

from .geo import ConvexPolygon, Disc, Scene
from .sensing import Pose, SensorConfig
from .sim import ScenarioSpec, SimConfig
from .sliding_ctrl import SlidingParams


class ScenarioError(ValueError):
    """Malformed scenario file; the message carries line or field details."""


_SCHEMA: Optional[dict] = None


def schema() -> dict:
    global _SCHEMA
    if _SCHEMA is None:
        text = resources.files(__package__).joinpath("scenario.schema.json").read_text()
        _SCHEMA = json.loads(text)
    return _SCHEMA


def _field_path(err: jsonschema.ValidationError) -> str:
    return "/".join(str(p) for p in err.absolute_path) or "<root>"


def _obstacle(o: Dict[str, Any]):
    if o["type"] == "disc":
        return Disc(tuple(o["center"]), o["radius"])
    return ConvexPolygon(tuple(tuple(v) for v in o["vertices"]))


def from_dict(doc: Dict[str, Any]) -> ScenarioSpec:
    """Build a spec from an already-parsed document."""
    validator = jsonschema.Draft202012Validator(schema())
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        lines = [f"field {_field_path(e)}: {e.message}" for e in errors]
        raise ScenarioError("\n".join(lines))
    try:
        obstacles = tuple(_obstacle(o) for o in doc["scene"]["obstacles"])
        scene = Scene(obstacles, tuple(doc["scene"]["target"]))
        start = Pose(tuple(doc["start"]["position"]), doc["start"]["theta"])
        params = SlidingParams(**doc["params"])
        sim = SimConfig(**doc.get("sim", {}))
        sensor = SensorConfig(**doc["sensor"], dt_ctrl=sim.dt_ctrl)
        return ScenarioSpec(scene, start, params, sensor, sim, theorem_mode=doc.get("theorem_mode", False))
    except ValueError as exc:
        raise ScenarioError(f"invalid values: {exc}") from exc


def loads(text: str) -> ScenarioSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_dict(doc)


def load(path) -> ScenarioSpec:
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return loads(text)
    except ScenarioError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


def to_dict(spec: ScenarioSpec) -> Dict[str, Any]:
    """Document form of a spec. The sensor period is implied by ``ctrl_hz``."""
    obstacles = []
    for o in spec.scene.obstacles:
        if isinstance(o, Disc):
            obstacles.append({"type": "disc", "center": list(o.center), "radius": o.radius})
        else:
            obstacles.append({"type": "polygon", "vertices": [list(v) for v in o.vertices]})
    sensor = asdict(spec.sensor)
    del sensor["dt_ctrl"]
    sim = asdict(spec.sim)
    sim["controller"] = spec.sim.controller.value
    return {
        "scene": {"obstacles": obstacles, "target": list(spec.scene.target)},
        "start": {"position": list(spec.start.position), "theta": spec.start.theta},
        "params": asdict(spec.params),
        "sensor": sensor,
        "sim": sim,
        "theorem_mode": spec.theorem_mode,
    }


def dumps(spec: ScenarioSpec) -> str:
    return json.dumps(to_dict(spec), indent=2) + "\n"


def dump(spec: ScenarioSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(spec))


def normalized(spec: ScenarioSpec) -> ScenarioSpec:
    """The scenario as it reloads from a file (sensor period tied to the controller)."""
    return replace(spec, sensor=replace(spec.sensor, dt_ctrl=spec.sim.dt_ctrl))
