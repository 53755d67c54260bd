"""Reactive navigation workbench for a constant-speed unicycle.

Geometry kernel, simulated range sensor, a sliding-mode boundary-following
law, an idealised edge-pursuit reference controller, a closed-loop simulator
and the path-length comparison oracle between the two controllers.
"""

from .analysis import (
    ComparisonScenario,
    RouteComparison,
    compare_routes,
    comparison_table,
    delta_closed_form_infinite,
    delta_numeric,
)
from .edge_pursuit import PursuitMode, PursuitState, Side, pursuit_step
from .geo import INF, ConvexPolygon, Disc, Scene, Vec2, rectangle
from .sensing import Pose, SensorConfig, SensorFrame, scan, target_bearing, wrap_angle
from .sim import (
    Controller,
    OutcomeKind,
    ScenarioSpec,
    SimConfig,
    Trajectory,
    integrate_arc,
    path_length,
    run,
)
from .sliding_ctrl import (
    ControllerState,
    Mode,
    SlidingParams,
    ValidationReport,
    chi,
    select_gamma,
    step,
    validate,
)

__all__ = [
    "ComparisonScenario",
    "Controller",
    "ControllerState",
    "ConvexPolygon",
    "Disc",
    "INF",
    "Mode",
    "OutcomeKind",
    "Pose",
    "PursuitMode",
    "PursuitState",
    "RouteComparison",
    "ScenarioSpec",
    "Scene",
    "SensorConfig",
    "SensorFrame",
    "Side",
    "SimConfig",
    "SlidingParams",
    "Trajectory",
    "ValidationReport",
    "Vec2",
    "chi",
    "compare_routes",
    "comparison_table",
    "delta_closed_form_infinite",
    "delta_numeric",
    "integrate_arc",
    "path_length",
    "pursuit_step",
    "rectangle",
    "run",
    "scan",
    "select_gamma",
    "step",
    "target_bearing",
    "validate",
    "wrap_angle",
]
